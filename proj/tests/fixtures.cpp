#include "fixtures.hpp"

namespace fixtures {

using cmv::petri::PlaceTransitionNet;

std::string dir() { return CMV_FIXTURE_DIR; }

std::string path(const std::string& relative) {
  return dir() + "/" + relative;
}

PlaceTransitionNet producer_consumer() {
  PlaceTransitionNet net;
  for (int p = 1; p <= 5; ++p) net.add_place("P" + std::to_string(p));
  for (int t = 1; t <= 4; ++t) net.add_transition("T" + std::to_string(t));
  // producer: T2 consumes P1, emits P2 and a buffer token; T1 resets
  net.add_arc_tp("T1", "P1");
  net.add_arc_pt("P2", "T1");
  net.add_arc_pt("P1", "T2");
  net.add_arc_tp("T2", "P2");
  net.add_arc_tp("T2", "P3");
  // consumer: T3 takes a buffer token with P4, emits P5; T4 resets
  net.add_arc_pt("P3", "T3");
  net.add_arc_pt("P4", "T3");
  net.add_arc_tp("T3", "P5");
  net.add_arc_pt("P5", "T4");
  net.add_arc_tp("T4", "P4");
  net.set_initial("P1", 1);
  net.set_initial("P4", 1);
  return net;
}

PlaceTransitionNet seasons() {
  PlaceTransitionNet net;
  const char* places[] = {"Spring", "Summer", "Fall", "Winter"};
  for (const char* p : places) net.add_place(p);
  for (int t = 1; t <= 4; ++t) net.add_transition("T" + std::to_string(t));
  net.add_arc_pt("Spring", "T1");
  net.add_arc_tp("T1", "Summer");
  net.add_arc_pt("Summer", "T2");
  net.add_arc_tp("T2", "Fall");
  net.add_arc_pt("Fall", "T3");
  net.add_arc_tp("T3", "Winter");
  net.add_arc_pt("Winter", "T4");
  net.add_arc_tp("T4", "Spring");
  net.set_initial("Spring", 1);
  return net;
}

PlaceTransitionNet cycle_choice() {
  PlaceTransitionNet net;
  for (int p = 1; p <= 5; ++p) net.add_place("P" + std::to_string(p));
  for (int t = 1; t <= 4; ++t) net.add_transition("T" + std::to_string(t));
  net.add_arc_pt("P1", "T1");
  net.add_arc_tp("T1", "P2");
  net.add_arc_tp("T1", "P4");
  net.add_arc_pt("P2", "T2");
  net.add_arc_tp("T2", "P3");
  net.add_arc_pt("P4", "T3");
  net.add_arc_tp("T3", "P5");
  net.add_arc_pt("P3", "T4");
  net.add_arc_pt("P5", "T4");
  net.add_arc_tp("T4", "P1");
  net.set_initial("P1", 1);
  return net;
}

cmv::model::ComposedComponent manufacturing_1() {
  return cmv::model::load_composition_file(path("manufacturing-1.cmp"));
}

cmv::model::ComposedComponent manufacturing_2() {
  return cmv::model::load_composition_file(path("manufacturing-2.cmp"));
}

cmv::model::ComposedComponent field_artillery() {
  return cmv::model::load_composition_file(path("field-artillery.cmp"));
}

cmv::model::ComposedComponent field_artillery_faulty() {
  return cmv::model::load_composition_file(
      path("field-artillery-faulty-fdc.cmp"));
}

cmv::model::ComposedComponent pingpong() {
  return cmv::model::load_composition_file(path("pingpong.cmp"));
}

std::string queue_document() {
  return R"(component Queue {
  entity Queue {
    c0 Size INT
  }
  events {
    e0 Put from Client to Queue (obj: TEXT)
    e1 Get from Queue to Client (obj: TEXT)
  }
  actions {
    a0 Put uses e0
    a1 Get uses e1
  }
  states {
    Empty initial goal { on a0 -> NonEmpty }
    NonEmpty goal { on a0 -> NonEmpty on a1 -> NonEmpty on a1 -> Empty }
  }
  extension {
    variables {
      front: INT = 0
      rear: INT = 0
      Max: INT = 3
      data: seq(TEXT) = []
    }
    transitions {
      from Empty on e0 [rear < Max] / { data = append(data, obj); rear = rear + 1; } in(rear, Max, data) out(rear, data) -> NonEmpty
      from NonEmpty on e0 [rear < Max] / { data = append(data, obj); rear = rear + 1; } in(rear, Max, data) out(rear, data) -> NonEmpty
      from NonEmpty on e1 [len(data) > 1] / { obj = nth(data, 0); data = remove(data, nth(data, 0)); front = front + 1; } in(front, data) out(front, data) -> NonEmpty
      from NonEmpty on e1 [len(data) = 1] / { obj = nth(data, 0); data = remove(data, nth(data, 0)); front = front + 1; } in(front, data) out(front, data) -> Empty
    }
  }
}
)";
}

} // namespace fixtures
