#include "cmv/petri/matrix.hpp"

#include <sstream>

#include "cmv/diag.hpp"

namespace cmv::petri {

IncidenceMatrices incidence(const PlaceTransitionNet& net) {
  size_t t = net.transition_count(), p = net.place_count();
  IncidenceMatrices m;
  m.a_plus.assign(t, std::vector<std::int64_t>(p, 0));
  m.a_minus.assign(t, std::vector<std::int64_t>(p, 0));
  m.a.assign(t, std::vector<std::int64_t>(p, 0));
  for (const auto& arc : net.arcs()) {
    if (arc.place_to_transition)
      m.a_minus[arc.transition][arc.place] += arc.weight;
    else
      m.a_plus[arc.transition][arc.place] += arc.weight;
  }
  for (size_t i = 0; i < t; ++i)
    for (size_t j = 0; j < p; ++j)
      m.a[i][j] = m.a_plus[i][j] - m.a_minus[i][j];
  return m;
}

namespace {
void append_block(std::ostringstream& out, const char* title,
                  const std::vector<std::vector<std::int64_t>>& rows,
                  const PlaceTransitionNet& net) {
  out << title;
  for (const auto& p : net.places()) out << "," << p;
  out << "\n";
  for (size_t i = 0; i < rows.size(); ++i) {
    out << net.transitions()[i];
    for (std::int64_t v : rows[i]) out << "," << v;
    out << "\n";
  }
}
} // namespace

std::string IncidenceMatrices::to_csv(const PlaceTransitionNet& net) const {
  std::ostringstream out;
  append_block(out, "A+", a_plus, net);
  append_block(out, "A-", a_minus, net);
  append_block(out, "A", a, net);
  return out.str();
}

StateEquationResult state_equation(
    const PlaceTransitionNet& net, const Marking& m,
    const std::vector<std::int64_t>& firing_counts) {
  if (firing_counts.size() != net.transition_count())
    fail(ErrorKind::Reference, "firing-count vector length must equal |T|");
  for (std::int64_t x : firing_counts)
    if (x < 0) fail(ErrorKind::Reference, "firing counts must be >= 0");
  if (m.counts.size() != net.place_count())
    fail(ErrorKind::Reference, "marking length must equal |P|");

  IncidenceMatrices inc = incidence(net);
  StateEquationResult result;
  result.counts.resize(net.place_count());
  for (size_t j = 0; j < net.place_count(); ++j) {
    if (m.counts[j].is_omega())
      fail(ErrorKind::Reference, "state equation is undefined on omega markings");
    std::int64_t v = m.counts[j].count();
    for (size_t i = 0; i < net.transition_count(); ++i)
      v += inc.a[i][j] * firing_counts[i];
    result.counts[j] = v;
    if (v < 0) result.negative = true;
  }
  return result;
}

} // namespace cmv::petri
