#include "cmv/behavior/scxml.hpp"

#include <sstream>

namespace cmv::behavior {

std::string to_scxml(const model::BasicComponent& c) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<scxml xmlns=\"http://www.w3.org/2005/07/scxml\" version=\"1.0\""
      << " initial=\"" << c.initial_state().name << "\">\n";
  for (const auto& st : c.states) {
    out << "  <state id=\"" << st.name << "\"";
    if (st.is_final) out << " final=\"true\"";
    if (st.exits.empty()) {
      out << "/>\n";
      continue;
    }
    out << ">\n";
    for (const auto& exit : st.exits) {
      const model::ActionDef* action = c.find_action(exit.action_id);
      const model::EventDef* event =
          action ? c.find_event(action->event_id) : nullptr;
      out << "    <transition event=\"" << (event ? event->name : exit.action_id)
          << "\" target=\"" << exit.next_state << "\"/>\n";
    }
    out << "  </state>\n";
  }
  out << "</scxml>\n";
  return out.str();
}

} // namespace cmv::behavior
