#include "cmv/colored/system.hpp"

#include <algorithm>

#include "cmv/diag.hpp"

namespace cmv::colored {

int ColoredSystem::place_index(const std::string& name) const {
  auto it = place_index_.find(name);
  return it == place_index_.end() ? -1 : it->second;
}

int ColoredSystem::add_place(Place p) {
  if (place_index_.count(p.name))
    fail(ErrorKind::DuplicateId, "place '" + p.name + "' already exists");
  int id = static_cast<int>(places.size());
  place_index_[p.name] = id;
  places.push_back(std::move(p));
  return id;
}

int ColoredSystem::add_transition(Transition t) {
  int id = static_cast<int>(transitions.size());
  transitions.push_back(std::move(t));
  return id;
}

void SystemMarking::add(int place, const Value& v) {
  auto& vec = tokens_[place];
  vec.insert(std::upper_bound(vec.begin(), vec.end(), v), v);
}

bool SystemMarking::remove(int place, const Value& v) {
  auto& vec = tokens_[place];
  auto it = std::lower_bound(vec.begin(), vec.end(), v);
  if (it == vec.end() || !(*it == v)) return false;
  vec.erase(it);
  return true;
}

std::string SystemMarking::key() const {
  std::string out;
  for (size_t p = 0; p < tokens_.size(); ++p) {
    if (tokens_[p].empty()) continue;
    out += std::to_string(p);
    out += ":";
    for (const auto& v : tokens_[p]) {
      out += v.render();
      out += ";";
    }
    out += "|";
  }
  return out;
}

SystemMarking initial_marking(const ColoredSystem& sys) {
  SystemMarking m(sys.places.size());
  for (size_t p = 0; p < sys.places.size(); ++p)
    for (const auto& v : sys.places[p].initial_tokens)
      m.add(static_cast<int>(p), v);
  return m;
}

} // namespace cmv::colored
