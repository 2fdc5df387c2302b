#include "cmv/match/rules.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace cmv::match {

using model::ActionRef;
using model::BasicComponent;
using model::ComposedComponent;
using model::EventDef;
using model::EventDirection;

namespace {

struct ResolvedRef {
  const model::MemberRef* member = nullptr;
  const model::ActionDef* action = nullptr;
  const EventDef* event = nullptr;
};

ResolvedRef resolve(const ComposedComponent& c, const ActionRef& ref) {
  ResolvedRef out;
  out.member = c.find_member(ref.component);
  if (!out.member) return out;
  out.action = out.member->component.find_action(ref.action_id);
  if (!out.action) return out;
  out.event = out.member->component.find_event(out.action->event_id);
  return out;
}

std::string subject(const model::PoiEntry& entry, const ActionRef& recv) {
  return entry.id + ": !" + entry.send.render() + " / ?" + recv.render();
}

} // namespace

std::string MatchReport::render() const {
  std::ostringstream out;
  out << (level == Level::Syntactic ? "syntactic" : "static-semantic")
      << " matching: " << (pass() ? "pass" : "fail") << "\n";
  for (const auto& v : violations)
    out << "  [" << v.rule << "] " << v.subject << ": " << v.detail << "\n";
  return out.str();
}

std::string MatchReport::to_json() const {
  nlohmann::json j;
  j["level"] = level == Level::Syntactic ? "syntactic" : "static_semantic";
  j["verdict"] = pass() ? "pass" : "fail";
  j["violations"] = nlohmann::json::array();
  for (const auto& v : violations)
    j["violations"].push_back(
        {{"rule", v.rule}, {"subject", v.subject}, {"detail", v.detail}});
  return j.dump(2);
}

MatchReport check_syntactic(const ComposedComponent& c) {
  MatchReport report;
  report.level = MatchReport::Level::Syntactic;

  // SM-Rule 1 and SM-Rule 3 per POI pairing.
  for (const auto& entry : c.poi) {
    ResolvedRef send = resolve(c, entry.send);
    if (!send.event) continue; // unresolvable refs are parse-level errors
    for (const auto& recv_ref : entry.receives) {
      ResolvedRef recv = resolve(c, recv_ref);
      if (!recv.event) continue;
      if (send.event->name != recv.event->name)
        report.violations.push_back(
            {"SM-Rule1", subject(entry, recv_ref),
             "send-event '" + send.event->name + "' vs receive-event '" +
                 recv.event->name + "'"});
      if (send.event->parameters.size() != recv.event->parameters.size())
        report.violations.push_back(
            {"SM-Rule3", subject(entry, recv_ref),
             std::to_string(send.event->parameters.size()) +
                 " send parameter(s) vs " +
                 std::to_string(recv.event->parameters.size()) +
                 " receive parameter(s)"});
    }
  }

  // SM-Rule 2: every send-event has a corresponding receive wiring and
  // vice versa (external actions of open compositions are exempt).
  auto wired_as_send = [&](const std::string& comp, const std::string& action) {
    for (const auto& entry : c.poi)
      if (entry.send.component == comp && entry.send.action_id == action)
        return true;
    return false;
  };
  auto wired_as_receive = [&](const std::string& comp,
                              const std::string& action) {
    for (const auto& entry : c.poi)
      for (const auto& r : entry.receives)
        if (r.component == comp && r.action_id == action) return true;
    return false;
  };
  auto external = [&](const std::vector<ActionRef>& list,
                      const std::string& comp, const std::string& action) {
    return std::any_of(list.begin(), list.end(), [&](const ActionRef& a) {
      return a.component == comp && a.action_id == action;
    });
  };

  for (const auto& member : c.members) {
    for (const auto& action : member.component.actions) {
      const EventDef* ev = member.component.find_event(action.event_id);
      if (!ev) continue;
      EventDirection dir = member.component.direction(*ev);
      bool sends = dir == EventDirection::Send || dir == EventDirection::Internal;
      bool receives =
          dir == EventDirection::Receive || dir == EventDirection::Internal;
      if (sends && !wired_as_send(member.name, action.id) &&
          !external(c.act_out, member.name, action.id))
        report.violations.push_back(
            {"SM-Rule2", member.name + ".!" + ev->name,
             "send-event has no corresponding receive-event"});
      if (receives && !wired_as_receive(member.name, action.id) &&
          !external(c.act_in, member.name, action.id))
        report.violations.push_back(
            {"SM-Rule2", member.name + ".?" + ev->name,
             "receive-event has no corresponding send-event"});
    }
  }

  return report;
}

namespace {

bool relation_in(SemanticRelation r,
                 std::initializer_list<SemanticRelation> allowed) {
  return std::find(allowed.begin(), allowed.end(), r) != allowed.end();
}

std::string unknown_suffix(const Taxonomy& t, const std::string& term) {
  return t.known(term) ? "" : " (unknown term)";
}

// Every element of the intersection must relate Exact/Equivalent to some
// POI-level tag.
void check_tag_rule(const std::set<std::string>& intersection,
                    const std::set<std::string>& poi_tags,
                    const Taxonomy& taxonomy, const char* rule,
                    const char* what, MatchReport& report) {
  if (intersection.empty()) {
    report.violations.push_back(
        {rule, "POI", std::string("empty intersection of action ") + what +
                          " attributes (EmptyIntersectionError)"});
    return;
  }
  for (const auto& term : intersection) {
    bool matched = false;
    for (const auto& tag : poi_tags) {
      SemanticRelation r = semantic_relation(term, tag, taxonomy);
      if (relation_in(r,
                      {SemanticRelation::Exact, SemanticRelation::Equivalent})) {
        matched = true;
        break;
      }
    }
    if (!matched)
      report.violations.push_back(
          {rule, "POI",
           std::string(what) + " '" + term + "' does not match the POI " +
               what + " attributes" + unknown_suffix(taxonomy, term)});
  }
}

} // namespace

MatchReport check_static_semantic(const ComposedComponent& c,
                                  const Taxonomy& taxonomy) {
  MatchReport report;
  report.level = MatchReport::Level::StaticSemantic;

  // Collect the semantic tags of every action involved in the interplay.
  std::vector<const model::SemanticTags*> involved;
  for (const auto& entry : c.poi) {
    auto collect = [&](const ActionRef& ref) {
      const model::MemberRef* m = c.find_member(ref.component);
      if (!m) return;
      auto it = m->component.action_tags.find(ref.action_id);
      if (it != m->component.action_tags.end()) involved.push_back(&it->second);
    };
    collect(entry.send);
    for (const auto& r : entry.receives) collect(r);
  }

  auto intersect = [&](auto pick) {
    std::set<std::string> common;
    bool first = true;
    for (const auto* tags : involved) {
      const std::set<std::string>& s = pick(*tags);
      if (first) {
        common = s;
        first = false;
        continue;
      }
      std::set<std::string> next;
      std::set_intersection(common.begin(), common.end(), s.begin(), s.end(),
                            std::inserter(next, next.begin()));
      common = std::move(next);
    }
    return common;
  };

  // SSM-Rule 1: area of interest; SSM-Rule 2: purpose.
  check_tag_rule(intersect([](const model::SemanticTags& t) -> const auto& {
                   return t.area_of_interest;
                 }),
                 c.poi_tags.area_of_interest, taxonomy, "SSM-Rule1",
                 "area-of-interest", report);
  check_tag_rule(intersect([](const model::SemanticTags& t) -> const auto& {
                   return t.purpose;
                 }),
                 c.poi_tags.purpose, taxonomy, "SSM-Rule2", "purpose", report);

  // SSM-Rule 3 and 4: parameter types and units per pairing. Parameter
  // counts already agree per SM-Rule 3.
  for (const auto& entry : c.poi) {
    ResolvedRef send = resolve(c, entry.send);
    if (!send.event) continue;
    for (const auto& recv_ref : entry.receives) {
      ResolvedRef recv = resolve(c, recv_ref);
      if (!recv.event) continue;
      size_t n = std::min(send.event->parameters.size(),
                          recv.event->parameters.size());
      for (size_t i = 0; i < n; ++i) {
        const model::Parameter& sp = send.event->parameters[i];
        const model::Parameter& rp = recv.event->parameters[i];
        std::string st = sp.type.render(), rt = rp.type.render();
        SemanticRelation r3 = semantic_relation(st, rt, taxonomy);
        if (!relation_in(r3, {SemanticRelation::Exact,
                              SemanticRelation::Equivalent,
                              SemanticRelation::DirectChild}))
          report.violations.push_back(
              {"SSM-Rule3", subject(entry, recv_ref),
               "parameter '" + sp.name + "' type " + st + " vs " + rt + ": " +
                   to_string(r3) + unknown_suffix(taxonomy, st) +
                   unknown_suffix(taxonomy, rt)});
        bool has_unit = sp.unit.has_value() || rp.unit.has_value();
        if (has_unit) {
          std::string su = sp.unit.value_or("");
          std::string ru = rp.unit.value_or("");
          SemanticRelation r4 = semantic_relation(su, ru, taxonomy);
          if (!relation_in(r4, {SemanticRelation::Exact,
                                SemanticRelation::Equivalent,
                                SemanticRelation::DirectParent,
                                SemanticRelation::DirectChild}))
            report.violations.push_back(
                {"SSM-Rule4", subject(entry, recv_ref),
                 "parameter '" + sp.name + "' unit '" + su + "' vs '" + ru +
                     "': " + to_string(r4) + unknown_suffix(taxonomy, su) +
                     unknown_suffix(taxonomy, ru)});
        }
      }
    }
  }

  return report;
}

} // namespace cmv::match
