#include "cmv/petri/net.hpp"

#include "cmv/diag.hpp"

namespace cmv::petri {

bool Marking::covers(const Marking& o) const {
  if (counts.size() != o.counts.size()) return false;
  for (size_t i = 0; i < counts.size(); ++i)
    if (!counts[i].covers(o.counts[i])) return false;
  return true;
}

bool Marking::strictly_covers(const Marking& o) const {
  return covers(o) && !(*this == o);
}

std::string Marking::render() const {
  std::string out = "[";
  for (size_t i = 0; i < counts.size(); ++i) {
    if (i) out += ",";
    out += counts[i].render();
  }
  return out + "]";
}

int PlaceTransitionNet::add_place(const std::string& name,
                                  std::int64_t initial_tokens) {
  if (place_index_.count(name) || transition_index_.count(name))
    fail(ErrorKind::DuplicateId, "node '" + name + "' already exists");
  int id = static_cast<int>(places_.size());
  places_.push_back(name);
  place_index_[name] = id;
  m0_.counts.emplace_back(initial_tokens);
  return id;
}

int PlaceTransitionNet::add_transition(const std::string& name) {
  if (place_index_.count(name) || transition_index_.count(name))
    fail(ErrorKind::DuplicateId, "node '" + name + "' already exists");
  int id = static_cast<int>(transitions_.size());
  transitions_.push_back(name);
  transition_index_[name] = id;
  return id;
}

int PlaceTransitionNet::place_index(const std::string& name) const {
  auto it = place_index_.find(name);
  return it == place_index_.end() ? -1 : it->second;
}

int PlaceTransitionNet::transition_index(const std::string& name) const {
  auto it = transition_index_.find(name);
  return it == transition_index_.end() ? -1 : it->second;
}

void PlaceTransitionNet::add_arc_pt(int place, int transition,
                                    std::int64_t weight) {
  if (weight < 1) fail(ErrorKind::Syntax, "arc weight must be >= 1");
  arcs_.push_back(Arc{place, transition, weight, true});
}

void PlaceTransitionNet::add_arc_tp(int transition, int place,
                                    std::int64_t weight) {
  if (weight < 1) fail(ErrorKind::Syntax, "arc weight must be >= 1");
  arcs_.push_back(Arc{place, transition, weight, false});
}

void PlaceTransitionNet::add_arc_pt(const std::string& place,
                                    const std::string& transition,
                                    std::int64_t weight) {
  int p = place_index(place), t = transition_index(transition);
  if (p < 0) fail(ErrorKind::Reference, "unknown place '" + place + "'");
  if (t < 0)
    fail(ErrorKind::Reference, "unknown transition '" + transition + "'");
  add_arc_pt(p, t, weight);
}

void PlaceTransitionNet::add_arc_tp(const std::string& transition,
                                    const std::string& place,
                                    std::int64_t weight) {
  int p = place_index(place), t = transition_index(transition);
  if (p < 0) fail(ErrorKind::Reference, "unknown place '" + place + "'");
  if (t < 0)
    fail(ErrorKind::Reference, "unknown transition '" + transition + "'");
  add_arc_tp(t, p, weight);
}

void PlaceTransitionNet::set_initial(const std::string& place,
                                     std::int64_t tokens) {
  int p = place_index(place);
  if (p < 0) fail(ErrorKind::Reference, "unknown place '" + place + "'");
  m0_.counts[p] = Tokens(tokens);
}

std::int64_t PlaceTransitionNet::weight_pt(int place, int transition) const {
  std::int64_t w = 0;
  for (const Arc& a : arcs_)
    if (a.place_to_transition && a.place == place && a.transition == transition)
      w += a.weight;
  return w;
}

std::int64_t PlaceTransitionNet::weight_tp(int transition, int place) const {
  std::int64_t w = 0;
  for (const Arc& a : arcs_)
    if (!a.place_to_transition && a.place == place && a.transition == transition)
      w += a.weight;
  return w;
}

} // namespace cmv::petri
