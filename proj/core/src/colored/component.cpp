#include "cmv/colored/component.hpp"

namespace cmv::colored {

const ColoredComponent::Port* ColoredComponent::find_port(
    const std::string& event_id) const {
  for (const auto& p : ports)
    if (p.event_id == event_id) return &p;
  return nullptr;
}

const ColoredComponent::SvPlace* ColoredComponent::find_sv(
    const std::string& n) const {
  for (const auto& sv : sv_places)
    if (sv.name == n) return &sv;
  return nullptr;
}

} // namespace cmv::colored
