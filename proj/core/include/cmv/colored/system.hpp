#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cmv/colored/component.hpp"

namespace cmv::colored {

// One socket of the composition: the sending (component, event id) and the
// receiving (component, event id) pairs bound to it.
struct WireEntry {
  std::string id; // socket place name
  std::pair<std::string, std::string> send;
  std::vector<std::pair<std::string, std::string>> receives;
};

// Flattened executable composition of colored components. Places carry
// global indices; component transitions and relay transitions share one
// table so the engine has a single firing rule.
class ColoredSystem {
public:
  struct Place {
    std::string name;  // "Component.item" or the socket/POI id
    TypeName color = TypeName::integer();
    bool top_level = false;            // socket places of the composition
    bool instance_tagged = false;      // sv places: tokens are (inst, value)
    std::vector<Value> initial_tokens; // already instance-tagged when needed
  };

  struct SvRef {
    int place = -1;
    std::string var;
    ColoredComponent::ArcKind kind = ColoredComponent::ArcKind::In;
  };

  struct Transition {
    std::string name;       // "Component.Event(from->to)" or relay name
    std::string event;      // event name ("" for relays)
    int component = -1;     // index into components(); -1 for relays
    // component transitions
    int state_in = -1, state_out = -1;
    ExprPtr guard;
    std::vector<Stmt> action;
    std::vector<SvRef> svs;
    std::vector<std::string> params;
    model::EventDirection direction = model::EventDirection::Internal;
    int port_in = -1;  // place consumed on receive
    int port_out = -1; // place produced on send
    // relays: consume one token from relay_in, copy to each (place, count)
    bool is_relay = false;
    int relay_in = -1;
    std::vector<std::pair<int, int>> relay_outs;
  };

  std::string name;
  std::vector<ColoredComponent> components;
  std::vector<WireEntry> wiring; // the entries this system was built from
  std::vector<Place> places;
  std::vector<Transition> transitions;

  int place_index(const std::string& name) const;
  const Place& place(int i) const { return places[i]; }

  int add_place(Place p);
  int add_transition(Transition t);

private:
  std::map<std::string, int> place_index_;
};

// Multiset marking over the system's places; tokens kept sorted so the
// serialization is canonical.
class SystemMarking {
public:
  SystemMarking() = default;
  explicit SystemMarking(size_t places) : tokens_(places) {}

  const std::vector<Value>& at(int place) const { return tokens_[place]; }
  void add(int place, const Value& v);
  // false when the token is absent
  bool remove(int place, const Value& v);
  size_t place_count() const { return tokens_.size(); }

  std::string key() const; // canonical serialization
  bool operator==(const SystemMarking& o) const { return tokens_ == o.tokens_; }

private:
  std::vector<std::vector<Value>> tokens_;
};

SystemMarking initial_marking(const ColoredSystem& sys);

} // namespace cmv::colored
