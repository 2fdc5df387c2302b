#include "cmv/petri/invariants.hpp"

#include <algorithm>
#include <numeric>

#include <boost/multiprecision/cpp_int.hpp>

#include "cmv/diag.hpp"
#include "cmv/petri/matrix.hpp"

namespace cmv::petri {

namespace {

using Big = boost::multiprecision::cpp_int;
using Row = std::vector<Big>;

Big row_gcd(const Row& row) {
  Big g = 0;
  for (const Big& v : row) g = boost::multiprecision::gcd(g, abs(v));
  return g;
}

void normalize(Row& row) {
  Big g = row_gcd(row);
  if (g > 1)
    for (Big& v : row) v /= g;
}

// Farkas elimination. Input: matrix W with r rows and c columns; output:
// all gcd-normalized non-negative rows y (length r) with y^T.W = 0,
// obtained by augmenting W with the r x r identity and eliminating each
// of the c columns by combining opposite-signed row pairs.
std::vector<std::vector<std::int64_t>> farkas(
    const std::vector<std::vector<std::int64_t>>& w, size_t rows, size_t cols) {
  std::vector<Row> table;
  table.reserve(rows);
  for (size_t i = 0; i < rows; ++i) {
    Row row(cols + rows, 0);
    for (size_t j = 0; j < cols; ++j) row[j] = w[i][j];
    row[cols + i] = 1;
    table.push_back(std::move(row));
  }

  for (size_t col = 0; col < cols; ++col) {
    std::vector<Row> next;
    std::vector<const Row*> pos, neg;
    for (const Row& row : table) {
      if (row[col] > 0)
        pos.push_back(&row);
      else if (row[col] < 0)
        neg.push_back(&row);
      else
        next.push_back(row);
    }
    for (const Row* p : pos) {
      for (const Row* n : neg) {
        Row combined(cols + rows);
        Big pc = (*p)[col], nc = -(*n)[col];
        for (size_t k = 0; k < combined.size(); ++k)
          combined[k] = nc * (*p)[k] + pc * (*n)[k];
        normalize(combined);
        next.push_back(std::move(combined));
      }
    }
    // Deduplicate: column combinations frequently regenerate rows.
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    table = std::move(next);
  }

  std::vector<std::vector<std::int64_t>> result;
  for (const Row& row : table) {
    bool zero = true;
    std::vector<std::int64_t> y(rows);
    for (size_t i = 0; i < rows; ++i) {
      const Big& v = row[cols + i];
      if (v < 0) fail(ErrorKind::Io, "Farkas produced a negative entry");
      y[i] = static_cast<std::int64_t>(v);
      if (y[i] != 0) zero = false;
    }
    if (!zero) result.push_back(std::move(y));
  }
  std::sort(result.begin(), result.end());
  result.erase(std::unique(result.begin(), result.end()), result.end());
  return result;
}

bool dominates(const std::vector<std::int64_t>& a,
               const std::vector<std::int64_t>& b) {
  // true when a <= b componentwise and a != b
  bool strict = false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) strict = true;
  }
  return strict;
}

InvariantSet build_set(std::vector<std::vector<std::int64_t>> vectors,
                       Invariant::Kind kind) {
  InvariantSet set;
  for (auto& v : vectors)
    set.raw.push_back(Invariant{kind, std::move(v), false});
  for (const Invariant& cand : set.raw) {
    bool is_minimal = true;
    for (const Invariant& other : set.raw) {
      if (&other == &cand) continue;
      if (dominates(other.vec, cand.vec)) {
        is_minimal = false;
        break;
      }
    }
    if (is_minimal) set.minimal.push_back(Invariant{kind, cand.vec, true});
  }
  return set;
}

} // namespace

InvariantSet p_invariants(const PlaceTransitionNet& net) {
  // y over places with A.y = 0  <=>  y^T (A^T) = 0: feed A^T (rows=places).
  IncidenceMatrices inc = incidence(net);
  size_t p = net.place_count(), t = net.transition_count();
  std::vector<std::vector<std::int64_t>> at(p, std::vector<std::int64_t>(t, 0));
  for (size_t i = 0; i < t; ++i)
    for (size_t j = 0; j < p; ++j) at[j][i] = inc.a[i][j];
  return build_set(farkas(at, p, t), Invariant::Kind::Place);
}

InvariantSet t_invariants(const PlaceTransitionNet& net) {
  // x over transitions with A^T.x = 0  <=>  x^T A = 0: feed A directly.
  IncidenceMatrices inc = incidence(net);
  return build_set(farkas(inc.a, net.transition_count(), net.place_count()),
                   Invariant::Kind::Transition);
}

std::string FairnessVerdict::render() const {
  if (fair) return "Fair";
  switch (reason) {
    case Reason::MultipleReproductionVectors:
      return "Unfair(MultipleReproductionVectors)";
    case Reason::ZeroEntry:
      return "Unfair(ZeroEntry)";
    case Reason::NotStructurallyBounded:
      return "Unfair(NotStructurallyBounded)";
    case Reason::None:
      break;
  }
  return "Unfair";
}

FairnessVerdict check_b_fairness(const PlaceTransitionNet& net) {
  FairnessVerdict verdict;
  InvariantSet tinv = t_invariants(net);
  if (tinv.minimal.size() != 1) {
    verdict.reason = FairnessVerdict::Reason::MultipleReproductionVectors;
    return verdict;
  }
  const std::vector<std::int64_t>& x = tinv.minimal.front().vec;
  verdict.reproduction_vector = x;

  for (std::int64_t v : x) {
    if (v <= 0) {
      verdict.reason = FairnessVerdict::Reason::ZeroEntry;
      return verdict;
    }
  }
  // A.X >= 0 as stated; for a T-invariant the product is exactly zero, the
  // check guards against a rogue vector anyway.
  IncidenceMatrices inc = incidence(net);
  std::vector<std::int64_t> ax(net.place_count(), 0);
  for (size_t j = 0; j < net.place_count(); ++j)
    for (size_t i = 0; i < net.transition_count(); ++i)
      ax[j] += inc.a[i][j] * x[i];
  for (std::int64_t v : ax) {
    if (v < 0) {
      verdict.reason = FairnessVerdict::Reason::ZeroEntry;
      return verdict;
    }
  }

  InvariantSet pinv = p_invariants(net);
  if (pinv.minimal.empty()) {
    verdict.reason = FairnessVerdict::Reason::NotStructurallyBounded;
    return verdict;
  }
  verdict.fair = true;
  return verdict;
}

} // namespace cmv::petri
