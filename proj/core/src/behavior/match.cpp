#include "cmv/behavior/match.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <sstream>

#include "cmv/diag.hpp"

namespace cmv::behavior {

using model::ComposedComponent;
using model::EventDirection;

namespace {

struct Machine {
  const model::MemberRef* member = nullptr;
  const model::BasicComponent* component = nullptr;
  int instance = 1;
  std::vector<std::string> states; // state names by local index
  int initial = 0;
  std::set<int> finals;
  std::set<int> goals;
  // exits[state][k] = (action id, event id, next state index)
  std::vector<std::vector<std::tuple<std::string, std::string, int>>> exits;

  std::string label() const {
    if (member->instances == 1) return component->name;
    return component->name + "#" + std::to_string(instance);
  }
};

// A participant's contribution to a joint move: machine index and its
// (from, to) state pair for the event.
struct Participation {
  int machine = 0;
  int from = 0;
  int to = 0;
};

// One synchronized move: the POI event fires, moving the sender and one
// instance of each wired receiver together.
struct JointMove {
  std::string event;
  int sender_participant = 0; // index into participants
  std::vector<Participation> participants;
};

struct Product {
  std::vector<Machine> machines;
  std::vector<JointMove> moves;
};

int state_index(const Machine& m, const std::string& name) {
  for (size_t i = 0; i < m.states.size(); ++i)
    if (m.states[i] == name) return static_cast<int>(i);
  return -1;
}

Product build_product(const ComposedComponent& c) {
  Product p;
  for (const auto& member : c.members) {
    for (int inst = 1; inst <= member.instances; ++inst) {
      Machine m;
      m.member = &member;
      m.component = &member.component;
      m.instance = inst;
      for (const auto& st : member.component.states) {
        int idx = static_cast<int>(m.states.size());
        m.states.push_back(st.name);
        if (st.is_initial) m.initial = idx;
        if (st.is_final) m.finals.insert(idx);
        if (st.is_goal) m.goals.insert(idx);
      }
      m.exits.resize(m.states.size());
      for (const auto& st : member.component.states) {
        int from = state_index(m, st.name);
        for (const auto& exit : st.exits) {
          const model::ActionDef* action =
              member.component.find_action(exit.action_id);
          int to = state_index(m, exit.next_state);
          m.exits[from].push_back({exit.action_id, action->event_id, to});
        }
      }
      p.machines.push_back(std::move(m));
    }
  }

  auto machines_of = [&](const std::string& component) {
    std::vector<int> out;
    for (size_t i = 0; i < p.machines.size(); ++i)
      if (p.machines[i].component->name == component)
        out.push_back(static_cast<int>(i));
    return out;
  };

  // Exits of one machine using a given action id: (from, to) pairs.
  auto exit_pairs = [&](const Machine& m, const std::string& action_id) {
    std::vector<std::pair<int, int>> out;
    for (size_t s = 0; s < m.exits.size(); ++s)
      for (const auto& [aid, eid, to] : m.exits[s])
        if (aid == action_id) out.push_back({static_cast<int>(s), to});
    return out;
  };

  for (const auto& entry : c.poi) {
    const model::MemberRef* sender = c.find_member(entry.send.component);
    const model::ActionDef* send_action =
        sender->component.find_action(entry.send.action_id);
    const model::EventDef* event =
        sender->component.find_event(send_action->event_id);

    // Receiver components with their action ids, deduplicated by component
    // (a self-directed event lists the sender itself; it is merged into
    // the sender's participation below).
    std::vector<std::pair<std::string, std::string>> recv_specs;
    for (const auto& r : entry.receives)
      recv_specs.push_back({r.component, r.action_id});

    for (int sender_machine : machines_of(entry.send.component)) {
      const Machine& sm = p.machines[sender_machine];
      for (auto [sfrom, sto] : exit_pairs(sm, entry.send.action_id)) {
        // Receiver choices: one instance of each wired component. Build
        // the cartesian product over components (tiny fan-out in
        // practice).
        std::vector<std::vector<Participation>> per_component;
        bool impossible = false;
        for (const auto& [rcomp, raction] : recv_specs) {
          if (rcomp == entry.send.component &&
              raction == entry.send.action_id) {
            continue; // self-directed: same machine, same exit
          }
          std::vector<Participation> options;
          for (int rm : machines_of(rcomp)) {
            for (auto [rfrom, rto] : exit_pairs(p.machines[rm], raction))
              options.push_back({rm, rfrom, rto});
          }
          if (options.empty()) {
            impossible = true;
            break;
          }
          per_component.push_back(std::move(options));
        }
        if (impossible) continue;

        std::vector<size_t> pick(per_component.size(), 0);
        for (;;) {
          JointMove move;
          move.event = event->name;
          move.participants.push_back({sender_machine, sfrom, sto});
          move.sender_participant = 0;
          bool valid = true;
          for (size_t i = 0; i < per_component.size(); ++i) {
            const Participation& part = per_component[i][pick[i]];
            if (part.machine == sender_machine) {
              valid = false; // a machine cannot be two participants
              break;
            }
            move.participants.push_back(part);
          }
          if (valid) p.moves.push_back(std::move(move));

          size_t k = per_component.size();
          for (;;) {
            if (k == 0) goto next_exit;
            --k;
            if (++pick[k] < per_component[k].size()) break;
            pick[k] = 0;
          }
        }
      next_exit:;
      }
    }
  }
  return p;
}

using Config = std::vector<int>;

std::string render_config(const Product& p, const Config& cfg) {
  std::string out = "(";
  for (size_t i = 0; i < cfg.size(); ++i) {
    if (i) out += ",";
    out += p.machines[i].label() + ":" + p.machines[i].states[cfg[i]];
  }
  return out + ")";
}

std::vector<int> enabled_moves(const Product& p, const Config& cfg) {
  std::vector<int> out;
  for (size_t i = 0; i < p.moves.size(); ++i) {
    bool ok = true;
    for (const auto& part : p.moves[i].participants) {
      if (cfg[part.machine] != part.from) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(static_cast<int>(i));
  }
  return out;
}

Config apply_move(const Product& p, const Config& cfg, int move) {
  Config next = cfg;
  for (const auto& part : p.moves[move].participants)
    next[part.machine] = part.to;
  return next;
}

TraceStep make_step(const Product& p, const JointMove& move) {
  TraceStep step;
  step.event = move.event;
  const Participation& sp = move.participants[move.sender_participant];
  step.sender = {p.machines[sp.machine].component->name,
                 p.machines[sp.machine].instance};
  for (const auto& part : move.participants) {
    step.from_states.push_back(p.machines[part.machine].states[part.from]);
    step.to_states.push_back(p.machines[part.machine].states[part.to]);
    if (&part != &move.participants[move.sender_participant])
      step.receivers.push_back({p.machines[part.machine].component->name,
                                p.machines[part.machine].instance});
  }
  return step;
}

// Whether machine m is satisfied given the set of states it has occupied.
bool machine_satisfied(const Machine& m, const std::set<int>& occupied) {
  for (int f : m.finals)
    if (occupied.count(f)) return true;
  if (!m.goals.empty()) {
    return std::all_of(m.goals.begin(), m.goals.end(),
                       [&](int g) { return occupied.count(g) > 0; });
  }
  return m.finals.empty(); // neither finals nor goals: vacuously satisfied
}

// Tarjan SCC over the explored product graph.
struct SccResult {
  std::vector<int> comp; // node -> scc id
  int count = 0;
};

SccResult tarjan(size_t n, const std::vector<std::vector<int>>& succ) {
  SccResult r;
  r.comp.assign(n, -1);
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  int next_index = 0;

  // Iterative DFS to survive deep graphs.
  struct Frame {
    int node;
    size_t child = 0;
  };
  for (size_t start = 0; start < n; ++start) {
    if (index[start] != -1) continue;
    std::vector<Frame> frames{{static_cast<int>(start)}};
    index[start] = low[start] = next_index++;
    stack.push_back(static_cast<int>(start));
    on_stack[start] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.child < succ[f.node].size()) {
        int child = succ[f.node][f.child++];
        if (index[child] == -1) {
          index[child] = low[child] = next_index++;
          stack.push_back(child);
          on_stack[child] = true;
          frames.push_back({child});
        } else if (on_stack[child]) {
          low[f.node] = std::min(low[f.node], index[child]);
        }
      } else {
        if (low[f.node] == index[f.node]) {
          for (;;) {
            int v = stack.back();
            stack.pop_back();
            on_stack[v] = false;
            r.comp[v] = r.count;
            if (v == f.node) break;
          }
          ++r.count;
        }
        int node = f.node;
        frames.pop_back();
        if (!frames.empty())
          low[frames.back().node] =
              std::min(low[frames.back().node], low[node]);
      }
    }
  }
  return r;
}

MatchTrace run_exhaustive(const ComposedComponent& c, const Product& p) {
  MatchTrace trace;

  Config initial;
  for (const auto& m : p.machines) initial.push_back(m.initial);

  std::map<Config, int> ids;
  std::vector<Config> configs;
  std::vector<std::vector<int>> succ;
  std::vector<std::vector<std::pair<int, int>>> arcs_by_node; // (move, target)

  std::deque<int> worklist;
  ids[initial] = 0;
  configs.push_back(initial);
  succ.emplace_back();
  arcs_by_node.emplace_back();
  worklist.push_back(0);

  while (!worklist.empty()) {
    int id = worklist.front();
    worklist.pop_front();
    Config cfg = configs[id];
    for (int move : enabled_moves(p, cfg)) {
      Config next = apply_move(p, cfg, move);
      auto [it, fresh] = ids.try_emplace(next, static_cast<int>(configs.size()));
      if (fresh) {
        configs.push_back(next);
        succ.emplace_back();
        arcs_by_node.emplace_back();
        worklist.push_back(it->second);
      }
      succ[id].push_back(it->second);
      arcs_by_node[id].push_back({move, it->second});
    }
  }

  for (const auto& cfg : configs)
    trace.config_nodes.push_back(render_config(p, cfg));
  for (size_t id = 0; id < configs.size(); ++id)
    for (auto [move, target] : arcs_by_node[id])
      trace.config_arcs.push_back({static_cast<int>(id), target,
                                   p.moves[move].event});

  // Terminal configurations: acceptable only when every machine rests in
  // a final state.
  for (size_t id = 0; id < configs.size(); ++id) {
    if (!succ[id].empty()) continue;
    const Config& cfg = configs[id];
    bool all_final = true;
    for (size_t m = 0; m < p.machines.size(); ++m) {
      if (!p.machines[m].finals.count(cfg[m])) {
        all_final = false;
        break;
      }
    }
    if (!all_final) {
      trace.outcome.kind = MatchOutcome::Kind::Stuck;
      trace.outcome.configuration = render_config(p, cfg);
      return trace;
    }
  }

  // Bottom SCC analysis: under fair scheduling an infinite run trapped in
  // a bottom SCC visits all of its states, so goal coverage is evaluated
  // against the SCC's state sets.
  SccResult scc = tarjan(configs.size(), succ);
  std::vector<bool> bottom(scc.count, true);
  std::vector<bool> has_edge(scc.count, false);
  for (size_t id = 0; id < configs.size(); ++id) {
    for (int t : succ[id]) {
      if (scc.comp[id] != scc.comp[t])
        bottom[scc.comp[id]] = false;
      else
        has_edge[scc.comp[id]] = true;
    }
  }
  std::vector<std::vector<int>> scc_members(scc.count);
  for (size_t id = 0; id < configs.size(); ++id)
    scc_members[scc.comp[id]].push_back(static_cast<int>(id));

  for (int s = 0; s < scc.count; ++s) {
    if (!bottom[s] || !has_edge[s]) continue;
    // states each machine occupies within this SCC
    bool covered = true;
    for (size_t m = 0; m < p.machines.size() && covered; ++m) {
      std::set<int> occupied;
      for (int id : scc_members[s]) occupied.insert(configs[id][m]);
      if (!machine_satisfied(p.machines[m], occupied)) covered = false;
    }
    if (!covered) {
      trace.outcome.kind = MatchOutcome::Kind::CycleWithoutGoal;
      for (int id : scc_members[s])
        trace.outcome.cycle.push_back(render_config(p, configs[id]));
      return trace;
    }
  }

  trace.outcome.kind = MatchOutcome::Kind::AllReached;

  // Witness schedule: greedy BFS that keeps firing until every machine is
  // satisfied (each goal/final visit can only help, and bottom-SCC
  // coverage guarantees termination).
  std::vector<std::set<int>> occupied(p.machines.size());
  Config cfg = initial;
  for (size_t m = 0; m < p.machines.size(); ++m) occupied[m].insert(cfg[m]);
  auto all_satisfied = [&]() {
    for (size_t m = 0; m < p.machines.size(); ++m)
      if (!machine_satisfied(p.machines[m], occupied[m])) return false;
    return true;
  };
  size_t guard = configs.size() * p.moves.size() * 4 + 64;
  while (!all_satisfied() && guard-- > 0) {
    // BFS for the nearest move sequence that grows some machine's
    // unsatisfied goal set.
    std::map<Config, std::pair<Config, int>> back; // next -> (prev, move)
    std::deque<Config> queue{cfg};
    back[cfg] = {cfg, -1};
    std::optional<Config> found;
    while (!queue.empty() && !found) {
      Config cur = queue.front();
      queue.pop_front();
      for (int move : enabled_moves(p, cur)) {
        Config next = apply_move(p, cur, move);
        if (back.count(next)) continue;
        back[next] = {cur, move};
        bool progress = false;
        for (const auto& part : p.moves[move].participants) {
          const Machine& m = p.machines[part.machine];
          if (!machine_satisfied(m, occupied[part.machine]) &&
              (m.goals.count(part.to) || m.finals.count(part.to)) &&
              !occupied[part.machine].count(part.to))
            progress = true;
        }
        if (progress) {
          found = next;
          break;
        }
        queue.push_back(next);
      }
    }
    if (!found) break; // satisfied machines only; nothing more to show
    // replay the path
    std::vector<std::pair<Config, int>> path;
    Config cur = *found;
    while (!(back[cur].second == -1)) {
      path.push_back({back[cur].first, back[cur].second});
      cur = back[cur].first;
    }
    std::reverse(path.begin(), path.end());
    for (auto& [from, move] : path) {
      trace.steps.push_back(make_step(p, p.moves[move]));
      cfg = apply_move(p, from, move);
      for (size_t m = 0; m < p.machines.size(); ++m) occupied[m].insert(cfg[m]);
    }
  }
  return trace;
}

MatchTrace run_seeded(const ComposedComponent& c, const Product& p,
                      std::uint64_t seed, size_t max_steps) {
  MatchTrace trace;
  std::mt19937_64 rng(seed);

  Config cfg;
  for (const auto& m : p.machines) cfg.push_back(m.initial);
  std::vector<std::set<int>> occupied(p.machines.size());
  for (size_t m = 0; m < p.machines.size(); ++m) occupied[m].insert(cfg[m]);

  auto all_satisfied = [&]() {
    for (size_t m = 0; m < p.machines.size(); ++m)
      if (!machine_satisfied(p.machines[m], occupied[m])) return false;
    return true;
  };

  std::vector<std::string> window;
  for (size_t step = 0; step < max_steps; ++step) {
    if (all_satisfied()) {
      trace.outcome.kind = MatchOutcome::Kind::AllReached;
      return trace;
    }
    std::vector<int> moves = enabled_moves(p, cfg);
    if (moves.empty()) {
      trace.outcome.kind = MatchOutcome::Kind::Stuck;
      trace.outcome.configuration = render_config(p, cfg);
      return trace;
    }
    int move = moves[static_cast<size_t>(rng() % moves.size())];
    trace.steps.push_back(make_step(p, p.moves[move]));
    cfg = apply_move(p, cfg, move);
    for (size_t m = 0; m < p.machines.size(); ++m) occupied[m].insert(cfg[m]);
    window.push_back(render_config(p, cfg));
    if (window.size() > 16) window.erase(window.begin());
  }
  if (all_satisfied()) {
    trace.outcome.kind = MatchOutcome::Kind::AllReached;
  } else {
    trace.outcome.kind = MatchOutcome::Kind::CycleWithoutGoal;
    trace.outcome.cycle = window;
  }
  return trace;
}

} // namespace

std::string MachineInstance::label() const {
  return component + "#" + std::to_string(instance_id);
}

std::string MatchOutcome::render() const {
  switch (kind) {
    case Kind::AllReached: return "AllReached";
    case Kind::Stuck: return "Stuck" + configuration;
    case Kind::CycleWithoutGoal:
      return "CycleWithoutGoal(" + std::to_string(cycle.size()) + " nodes)";
  }
  return "?";
}

std::string MatchTrace::render() const {
  std::ostringstream out;
  for (const auto& s : steps) {
    out << s.event << " !" << s.sender.first << "#" << s.sender.second;
    for (const auto& r : s.receivers) out << " ?" << r.first << "#" << r.second;
    out << " [";
    for (size_t i = 0; i < s.from_states.size(); ++i) {
      if (i) out << " ";
      out << s.from_states[i] << ">" << s.to_states[i];
    }
    out << "]\n";
  }
  out << "outcome: " << outcome.render() << "\n";
  return out.str();
}

std::string MatchTrace::to_dot() const {
  std::ostringstream out;
  out << "digraph configurations {\n";
  for (size_t i = 0; i < config_nodes.size(); ++i)
    out << "  n" << i << " [label=\"" << i << "\" tooltip=\"" << config_nodes[i]
        << "\"];\n";
  for (const auto& [from, to, label] : config_arcs)
    out << "  n" << from << " -> n" << to << " [label=\"" << label << "\"];\n";
  out << "}\n";
  return out.str();
}

MatchTrace run_matching(const model::ComposedComponent& c,
                        const MatchOptions& options) {
  Product p = build_product(c);
  if (options.mode == MatchOptions::Mode::Exhaustive)
    return run_exhaustive(c, p);
  return run_seeded(c, p, options.seed, options.max_steps);
}

std::map<std::string, bool> goal_coverage(const MatchTrace& trace,
                                          const model::ComposedComponent& c) {
  // Rebuild per-instance visited sets from the trace.
  std::map<std::string, std::set<std::string>> visited;
  std::map<std::string, std::string> current;
  for (const auto& member : c.members) {
    for (int i = 1; i <= member.instances; ++i) {
      std::string key = member.name + "#" + std::to_string(i);
      current[key] = member.component.initial_state().name;
      visited[key] = {current[key]};
    }
  }
  for (const auto& step : trace.steps) {
    std::vector<std::pair<std::string, int>> participants;
    participants.push_back(step.sender);
    for (const auto& r : step.receivers) participants.push_back(r);
    for (size_t i = 0; i < participants.size(); ++i) {
      std::string key = participants[i].first + "#" +
                        std::to_string(participants[i].second);
      current[key] = step.to_states[i];
      visited[key].insert(step.to_states[i]);
    }
  }

  std::map<std::string, bool> result;
  for (const auto& member : c.members) {
    for (int i = 1; i <= member.instances; ++i) {
      std::string key = member.name + "#" + std::to_string(i);
      bool ok = false;
      bool any_final = false;
      for (const auto& st : member.component.states) {
        if (st.is_final && visited[key].count(st.name)) ok = true;
        if (st.is_final) any_final = true;
      }
      if (!ok) {
        auto goals = member.component.goal_states();
        if (!goals.empty()) {
          ok = std::all_of(goals.begin(), goals.end(),
                           [&](const model::StateDef* g) {
                             return visited[key].count(g->name) > 0;
                           });
        } else if (!any_final) {
          ok = true; // neither finals nor goals
        }
      }
      result[key] = ok;
    }
  }
  return result;
}

} // namespace cmv::behavior
