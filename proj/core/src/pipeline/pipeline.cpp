#include "cmv/pipeline/pipeline.hpp"

#include <filesystem>
#include <sstream>

#include "json.hpp"

#include "cmv/behavior/match.hpp"
#include "cmv/colored/document.hpp"
#include "cmv/diag.hpp"
#include "cmv/model/parse.hpp"
#include "cmv/petri/analysis.hpp"
#include "cmv/petri/invariants.hpp"
#include "cmv/petri/pnml.hpp"
#include "cmv/space/generate.hpp"
#include "cmv/space/queries.hpp"
#include "cmv/text.hpp"
#include "cmv/transform/transform.hpp"

namespace cmv::pipeline {

Technique parse_technique(const std::string& name) {
  if (name == "algebraic") return Technique::Algebraic;
  if (name == "statespace") return Technique::StateSpace;
  fail(ErrorKind::UnknownTechnique,
       "'" + name + "' (expected 'algebraic' or 'statespace')");
}

std::string PipelineRun::render() const {
  std::ostringstream out;
  for (const auto& s : stages) {
    out << "  [" << (s.executed ? (s.pass ? "pass" : "FAIL") : "skip") << "] "
        << s.name;
    if (!s.detail.empty()) out << ": " << s.detail;
    out << "\n";
  }
  for (const auto& p : properties) {
    const char* status = p.status == PropertyResult::Status::Satisfied
                             ? "satisfied"
                             : p.status == PropertyResult::Status::Violated
                                   ? "VIOLATED"
                                   : "assumed";
    out << "  [" << status << "] " << p.id << ": " << p.description;
    if (!p.detail.empty()) out << " (" << p.detail << ")";
    out << "\n";
  }
  if (verified)
    out << "verdict: verified\n";
  else
    out << "verdict: failed at " << failed_stage << " (" << failure_detail
        << ")\n";
  return out.str();
}

std::string PipelineRun::to_json() const {
  nlohmann::json j;
  j["stages"] = nlohmann::json::array();
  for (const auto& s : stages)
    j["stages"].push_back({{"name", s.name},
                           {"executed", s.executed},
                           {"pass", s.pass},
                           {"detail", s.detail}});
  j["properties"] = nlohmann::json::array();
  for (const auto& p : properties) {
    const char* status = p.status == PropertyResult::Status::Satisfied
                             ? "satisfied"
                             : p.status == PropertyResult::Status::Violated
                                   ? "violated"
                                   : "assumed";
    j["properties"].push_back({{"id", p.id},
                               {"description", p.description},
                               {"status", status},
                               {"detail", p.detail}});
  }
  j["verified"] = verified;
  if (!verified) {
    j["failed_stage"] = failed_stage;
    j["failure_detail"] = failure_detail;
  }
  j["artifacts"] = artifacts;
  return j.dump(2);
}

namespace {

using model::QueryRef;

// Evaluates the registered checks of objectives and custom constraints.
struct DynamicContext {
  Technique technique;
  const petri::PlaceTransitionNet* net = nullptr;          // algebraic
  const space::StateGraph* graph = nullptr;                // statespace
};

PropertyResult evaluate_property(const std::string& id,
                                 const std::string& description,
                                 const QueryRef& check,
                                 const DynamicContext& ctx) {
  PropertyResult result;
  result.id = id;
  result.description = description;

  if (check.kind == QueryRef::Kind::None) {
    result.status = PropertyResult::Status::Assumed;
    result.detail = "no predicate registered";
    return result;
  }

  if (check.kind == QueryRef::Kind::Builtin) {
    if (check.name == "fairness") {
      if (!ctx.net)
        fail(ErrorKind::UnknownPredicate,
             "fairness needs the algebraic technique");
      petri::FairnessVerdict verdict = petri::check_b_fairness(*ctx.net);
      result.status = verdict.fair ? PropertyResult::Status::Satisfied
                                   : PropertyResult::Status::Violated;
      result.detail = verdict.render();
      return result;
    }
    if (check.name == "boundedness") {
      if (!ctx.net)
        fail(ErrorKind::UnknownPredicate,
             "boundedness needs the algebraic technique");
      petri::BoundednessVerdict verdict = petri::check_boundedness(*ctx.net);
      result.status = verdict.bounded ? PropertyResult::Status::Satisfied
                                      : PropertyResult::Status::Violated;
      result.detail = verdict.render();
      return result;
    }
    if (check.name == "deadlock_free") {
      if (!ctx.graph)
        fail(ErrorKind::UnknownPredicate,
             "deadlock_free needs the statespace technique");
      space::DeadMarkings dead = space::list_dead_markings(*ctx.graph);
      result.status = dead.nodes.empty() ? PropertyResult::Status::Satisfied
                                         : PropertyResult::Status::Violated;
      result.detail = std::to_string(dead.nodes.size()) + " dead marking(s)";
      if (dead.incomplete) result.detail += ", graph truncated";
      return result;
    }
    fail(ErrorKind::UnknownPredicate, "unknown builtin check '" + check.name + "'");
  }

  if (!ctx.graph)
    fail(ErrorKind::UnknownPredicate,
         "predicate checks need the statespace technique");
  space::Predicate p = space::Predicate::parse(check.predicate);
  std::vector<int> hits = space::search_nodes(*ctx.graph, p);
  bool exists = !hits.empty();
  bool ok = check.kind == QueryRef::Kind::Exists ? exists : !exists;
  result.status =
      ok ? PropertyResult::Status::Satisfied : PropertyResult::Status::Violated;
  result.detail = std::to_string(hits.size()) + " node(s) match";
  if (!hits.empty()) result.detail += ", first " + std::to_string(hits[0]);
  return result;
}

} // namespace

PipelineRun run_pipeline(const model::ComposedComponent& composition,
                         const match::Taxonomy& taxonomy,
                         const model::RequirementSpec& requirements,
                         const PipelineOptions& options) {
  PipelineRun run;
  run.stages.push_back({"parse", true, composition.name, true});

  auto halt = [&](const std::string& stage, const std::string& detail) {
    run.verified = false;
    run.failed_stage = stage;
    run.failure_detail = detail;
    return run;
  };
  auto first_rule = [](const match::MatchReport& report) {
    return report.violations.empty() ? std::string()
                                     : report.violations.front().rule + " on " +
                                           report.violations.front().subject;
  };

  // S1: syntactic matching.
  match::MatchReport s1 = match::check_syntactic(composition);
  run.stages.push_back({"S1", s1.pass(), first_rule(s1), true});
  if (!s1.pass()) return halt("S1", first_rule(s1));

  // S2: static-semantic matching.
  match::MatchReport s2 = match::check_static_semantic(composition, taxonomy);
  run.stages.push_back({"S2", s2.pass(), first_rule(s2), true});
  if (!s2.pass()) return halt("S2", first_rule(s2));

  // S3a: state-machine matching (exhaustive, the normative mode).
  behavior::MatchTrace trace = behavior::run_matching(composition);
  bool s3a_pass =
      trace.outcome.kind == behavior::MatchOutcome::Kind::AllReached;
  run.stages.push_back({"S3a", s3a_pass, trace.outcome.render(), true});
  if (!s3a_pass) return halt("S3a", trace.outcome.render());

  // Transform + S3b + dynamic analysis per technique.
  DynamicContext ctx;
  ctx.technique = options.technique;
  petri::PlaceTransitionNet net;
  space::StateGraph graph;

  if (options.technique == Technique::Algebraic) {
    auto [built_net, log] = transform::composition_to_ptnet(composition);
    net = std::move(built_net);
    transform::S3bReport s3b =
        transform::check_s3b_ptnet(composition, net, log, options.node_budget);
    run.stages.push_back({"S3b", s3b.pass,
                          s3b.pass ? "transformation faithful"
                                   : s3b.issues.front(),
                          true});
    if (options.artifact_dir) {
      namespace fs = std::filesystem;
      fs::create_directories(*options.artifact_dir);
      std::string path =
          (fs::path(*options.artifact_dir) / (composition.name + ".pnml"))
              .string();
      petri::save_pnml_file(net, path);
      run.artifacts.push_back(path);
    }
    if (!s3b.pass) return halt("S3b", s3b.issues.front());
    ctx.net = &net;
  } else {
    transform::TransformationLog log;
    colored::ColoredSystem sys =
        transform::composition_to_colored(composition, &log, &taxonomy);
    transform::S3bReport structural{log.omissions.empty(), {}};
    for (const auto& o : log.omissions)
      structural.issues.push_back("omission: " + o);
    transform::S3bReport execution = transform::check_s3b_system(
        composition, sys, options.seed, options.max_steps);
    bool s3b_pass = structural.pass && execution.pass;
    std::string detail = s3b_pass ? "transformation faithful"
                                  : (!structural.pass ? structural.issues.front()
                                                      : execution.issues.front());
    run.stages.push_back({"S3b", s3b_pass, detail, true});
    if (options.artifact_dir) {
      run.artifacts.push_back(
          colored::save_system(sys, *options.artifact_dir));
    }
    if (!s3b_pass) return halt("S3b", detail);

    space::GenerateOptions gen;
    gen.node_budget = options.node_budget;
    graph = space::generate(sys, gen);
    ctx.graph = &graph;
  }

  // Dynamic stage: every objective and custom constraint with a check.
  bool dynamic_pass = true;
  std::string dynamic_detail;
  auto run_check = [&](const std::string& id, const std::string& description,
                       const QueryRef& check) {
    PropertyResult r = evaluate_property(id, description, check, ctx);
    if (r.status == PropertyResult::Status::Violated && dynamic_pass) {
      dynamic_pass = false;
      dynamic_detail = r.id + ": " + r.detail;
    }
    run.properties.push_back(std::move(r));
  };
  for (const auto& o : requirements.objectives)
    run_check(o.id, o.description, o.check);
  for (const auto& c : requirements.constraints) {
    if (c.kind != model::ConstraintKind::Custom) continue; // S1-S3b are staged
    run_check(c.id, c.description, c.check);
  }
  run.stages.push_back({"dynamic", dynamic_pass, dynamic_detail, true});
  if (!dynamic_pass) return halt("dynamic", dynamic_detail);

  run.verified = true;
  return run;
}

PipelineRun run_pipeline_files(const std::string& composition_path,
                               const std::string& taxonomy_path,
                               const std::string& requirements_path,
                               const PipelineOptions& options) {
  model::ComposedComponent composition =
      model::load_composition_file(composition_path);
  match::Taxonomy taxonomy = taxonomy_path.empty()
                                 ? match::Taxonomy()
                                 : match::Taxonomy::load_file(taxonomy_path);
  model::RequirementSpec requirements =
      requirements_path.empty() ? model::parse_requirements("")
                                : model::load_requirements_file(requirements_path);
  return run_pipeline(composition, taxonomy, requirements, options);
}

std::string technique_advice() {
  return "Guidance, not rules:\n"
         "  algebraic  - components with plain labelled state machines (no\n"
         "               extension data); requirements expressible through\n"
         "               invariant-based properties such as fairness or\n"
         "               boundedness; insensitive to model size.\n"
         "  statespace - data-rich components (state variables, guards,\n"
         "               actions, typed events) where extensions exist;\n"
         "               reachability-style requirements; supports\n"
         "               compositional reduction to contain growth.\n"
         "Pick per model; mixed use on one model is normal.\n";
}

} // namespace cmv::pipeline
