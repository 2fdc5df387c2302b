#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cmv/petri/net.hpp"

namespace cmv::petri {

// Incidence matrices in |T| x |P| orientation: row i is transition i, and
// entry (i,j) is the token change of place j when transition i fires once.
struct IncidenceMatrices {
  std::vector<std::vector<std::int64_t>> a_plus;
  std::vector<std::vector<std::int64_t>> a_minus;
  std::vector<std::vector<std::int64_t>> a;

  std::string to_csv(const PlaceTransitionNet& net) const;
};

IncidenceMatrices incidence(const PlaceTransitionNet& net);

// M' = M + A^T . X  (marking column indexed by places, X by transitions).
// Entries may come out negative when X is not realizable from m; the
// `negative` flag is the NegativeResultWarning.
struct StateEquationResult {
  std::vector<std::int64_t> counts;
  bool negative = false;
};

StateEquationResult state_equation(const PlaceTransitionNet& net,
                                   const Marking& m,
                                   const std::vector<std::int64_t>& firing_counts);

} // namespace cmv::petri
