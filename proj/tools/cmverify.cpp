// cmverify: composability verification for component models.
//
// Exit codes: 0 = pass, 1 = property failure, 2 = input/usage error.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "cmv/behavior/match.hpp"
#include "cmv/behavior/scxml.hpp"
#include "cmv/colored/document.hpp"
#include "cmv/colored/simulate.hpp"
#include "cmv/diag.hpp"
#include "cmv/match/rules.hpp"
#include "cmv/model/parse.hpp"
#include "cmv/petri/analysis.hpp"
#include "cmv/petri/invariants.hpp"
#include "cmv/petri/matrix.hpp"
#include "cmv/petri/pnml.hpp"
#include "cmv/pipeline/pipeline.hpp"
#include "cmv/space/export.hpp"
#include "cmv/space/generate.hpp"
#include "cmv/space/queries.hpp"
#include "cmv/space/reduce.hpp"
#include "cmv/text.hpp"
#include "cmv/transform/transform.hpp"

namespace {

constexpr int kPass = 0;
constexpr int kPropertyFailure = 1;
constexpr int kInputError = 2;

bool has_extension(const std::string& path, const std::string& ext) {
  return std::filesystem::path(path).extension() == ext;
}

cmv::petri::PlaceTransitionNet load_net(const std::string& input) {
  if (has_extension(input, ".pnml")) return cmv::petri::load_pnml_file(input);
  auto composition = cmv::model::load_composition_file(input);
  return cmv::transform::composition_to_ptnet(composition).first;
}

cmv::colored::ColoredSystem load_colored(const std::string& input) {
  if (has_extension(input, ".csys")) return cmv::colored::load_system(input);
  auto composition = cmv::model::load_composition_file(input);
  return cmv::transform::composition_to_colored(composition);
}

cmv::space::StateGraph load_graph(const std::string& input, size_t budget,
                                  bool on_the_fly) {
  cmv::space::GenerateOptions options;
  options.node_budget = budget;
  options.on_the_fly = on_the_fly;
  if (has_extension(input, ".pnml"))
    return cmv::space::generate(cmv::petri::load_pnml_file(input), options);
  return cmv::space::generate(load_colored(input), options);
}

void write_or_print(const std::optional<std::string>& path,
                    const std::string& content) {
  if (path)
    cmv::text::write_file(*path, content);
  else
    std::cout << content;
}

int run(CLI::App& app, int argc, char** argv) {
  std::string input, taxonomy_path, requirements_path, technique = "algebraic";
  std::optional<std::string> output;
  std::string export_format = "dot";
  std::string predicate_text, mode = "exhaustive";
  std::uint64_t seed = 1;
  size_t budget = 200000, max_steps = 10000;
  bool reduce = false, on_the_fly = false, interactive = false, advise = false;
  bool json = false;
  std::optional<std::string> matrices_csv, scxml_dir, dot_path;

  auto* check_syntactic =
      app.add_subcommand("check-syntactic", "Verify S1 (syntactic matching)");
  check_syntactic->add_option("input", input, "composition file")->required();
  check_syntactic->add_flag("--json", json, "machine-readable report");

  auto* check_semantic = app.add_subcommand(
      "check-semantic", "Verify S2 (static-semantic matching)");
  check_semantic->add_option("input", input, "composition file")->required();
  check_semantic->add_option("--taxonomy", taxonomy_path, "taxonomy file")
      ->required();
  check_semantic->add_flag("--json", json, "machine-readable report");

  auto* match = app.add_subcommand("match-statemachines",
                                   "Verify S3a (state-machine matching)");
  match->add_option("input", input, "composition file")->required();
  match->add_option("--mode", mode, "exhaustive|seeded");
  match->add_option("--seed", seed, "schedule seed (seeded mode)");
  match->add_option("--dot", dot_path, "write the configuration graph as DOT");
  match->add_option("--scxml", scxml_dir, "export member machines as SCXML");

  auto* to_pnml = app.add_subcommand("to-pnml", "Transform to a P/T net");
  to_pnml->add_option("input", input, "composition file")->required();
  to_pnml->add_option("-o,--output", output, "output file (default stdout)");

  auto* invariants =
      app.add_subcommand("invariants", "Place and transition invariants");
  invariants->add_option("input", input, "composition or PNML file")->required();
  invariants->add_option("--matrices-csv", matrices_csv,
                         "also write incidence matrices as CSV");

  auto* fairness = app.add_subcommand("fairness", "Bounded-fairness verdict");
  fairness->add_option("input", input, "composition or PNML file")->required();

  auto* to_colored =
      app.add_subcommand("to-colored", "Transform to a colored system");
  to_colored->add_option("input", input, "composition file")->required();
  to_colored->add_option("-o,--output", output, "output directory")->required();

  auto* simulate = app.add_subcommand("simulate", "Execute the colored system");
  simulate->add_option("input", input, "composition or .csys file")->required();
  simulate->add_flag("--interactive", interactive, "step interactively");
  simulate->add_option("--seed", seed, "random seed (automatic mode)");
  simulate->add_option("--max-steps", max_steps, "step budget");
  simulate->add_option("-o,--output", output, "write the trace to a file");

  auto* statespace = app.add_subcommand("statespace", "Generate the state space");
  statespace->add_option("input", input, "composition, .csys or PNML file")
      ->required();
  statespace->add_option("--budget", budget, "node budget");
  statespace->add_flag("--reduce", reduce, "compositional reduction");
  statespace->add_flag("--on-the-fly", on_the_fly,
                       "collapse non-retained markings during generation");
  statespace->add_option("--export", export_format, "graphml|dot");
  statespace->add_option("-o,--output", output, "output file (default stdout)");

  auto* query = app.add_subcommand("query", "Search the state space");
  query->add_option("input", input, "composition, .csys or PNML file")
      ->required();
  query->add_option("--predicate", predicate_text, "node predicate")->required();
  query->add_option("--budget", budget, "node budget");

  auto* verify = app.add_subcommand("verify", "Run the verification pipeline");
  verify->add_option("input", input, "composition file");
  verify->add_option("--taxonomy", taxonomy_path, "taxonomy file");
  verify->add_option("--requirements", requirements_path, "requirement file");
  verify->add_option("--technique", technique, "algebraic|statespace");
  verify->add_option("--seed", seed, "seed for execution evidence");
  verify->add_option("--budget", budget, "state-space node budget");
  verify->add_option("--artifacts", output, "directory for exported artifacts");
  verify->add_flag("--advise", advise, "print technique-selection guidance");
  verify->add_flag("--json", json, "machine-readable report");

  app.require_subcommand(1);
  app.parse(argc, argv);

  if (check_syntactic->parsed()) {
    auto composition = cmv::model::load_composition_file(input);
    auto report = cmv::match::check_syntactic(composition);
    std::cout << (json ? report.to_json() + "\n" : report.render());
    return report.pass() ? kPass : kPropertyFailure;
  }

  if (check_semantic->parsed()) {
    auto composition = cmv::model::load_composition_file(input);
    auto taxonomy = cmv::match::Taxonomy::load_file(taxonomy_path);
    auto s1 = cmv::match::check_syntactic(composition);
    if (!s1.pass()) {
      std::cout << s1.render();
      return kPropertyFailure;
    }
    auto report = cmv::match::check_static_semantic(composition, taxonomy);
    std::cout << (json ? report.to_json() + "\n" : report.render());
    return report.pass() ? kPass : kPropertyFailure;
  }

  if (match->parsed()) {
    auto composition = cmv::model::load_composition_file(input);
    cmv::behavior::MatchOptions options;
    if (mode == "seeded") {
      options.mode = cmv::behavior::MatchOptions::Mode::SingleSeeded;
      options.seed = seed;
    } else if (mode != "exhaustive") {
      throw CLI::ValidationError("--mode", "expected exhaustive or seeded");
    }
    auto trace = cmv::behavior::run_matching(composition, options);
    std::cout << trace.render();
    if (dot_path) cmv::text::write_file(*dot_path, trace.to_dot());
    if (scxml_dir) {
      std::filesystem::create_directories(*scxml_dir);
      for (const auto& member : composition.members)
        cmv::text::write_file(*scxml_dir + "/" + member.name + ".scxml",
                              cmv::behavior::to_scxml(member.component));
    }
    for (const auto& [machine, ok] :
         cmv::behavior::goal_coverage(trace, composition))
      std::cout << machine << ": " << (ok ? "pass" : "fail") << "\n";
    return trace.outcome.kind == cmv::behavior::MatchOutcome::Kind::AllReached
               ? kPass
               : kPropertyFailure;
  }

  if (to_pnml->parsed()) {
    auto composition = cmv::model::load_composition_file(input);
    auto [net, log] = cmv::transform::composition_to_ptnet(composition);
    write_or_print(output, cmv::petri::to_pnml(net, composition.name));
    std::cerr << log.render();
    return kPass;
  }

  if (invariants->parsed()) {
    auto net = load_net(input);
    if (matrices_csv)
      cmv::text::write_file(*matrices_csv,
                            cmv::petri::incidence(net).to_csv(net));
    auto render = [&](const char* kind, const cmv::petri::InvariantSet& set) {
      std::cout << kind << " invariants (minimal):\n";
      for (const auto& inv : set.minimal) {
        std::cout << " ";
        for (size_t i = 0; i < inv.vec.size(); ++i)
          std::cout << (i ? "," : " [") << inv.vec[i];
        std::cout << "]\n";
      }
    };
    render("place", cmv::petri::p_invariants(net));
    render("transition", cmv::petri::t_invariants(net));
    return kPass;
  }

  if (fairness->parsed()) {
    auto verdict = cmv::petri::check_b_fairness(load_net(input));
    std::cout << verdict.render() << "\n";
    return verdict.fair ? kPass : kPropertyFailure;
  }

  if (to_colored->parsed()) {
    auto composition = cmv::model::load_composition_file(input);
    cmv::transform::TransformationLog log;
    auto sys = cmv::transform::composition_to_colored(composition, &log);
    std::string wiring = cmv::colored::save_system(sys, *output);
    std::cerr << log.render();
    std::cout << wiring << "\n";
    return kPass;
  }

  if (simulate->parsed()) {
    auto sys = load_colored(input);
    cmv::colored::SimTrace trace;
    if (interactive) {
      trace = cmv::colored::simulate_interactive(
          sys,
          [&](const cmv::colored::SystemMarking&,
              const std::vector<cmv::colored::Binding>& bindings)
              -> std::optional<size_t> {
            for (size_t i = 0; i < bindings.size(); ++i)
              std::cout << "  [" << i << "] " << bindings[i].descriptor << "\n";
            std::cout << "binding> " << std::flush;
            std::string line;
            if (!std::getline(std::cin, line) || line.empty())
              return std::nullopt;
            return static_cast<size_t>(std::stoul(line));
          },
          max_steps);
    } else {
      trace = cmv::colored::simulate_auto(sys, seed, max_steps);
    }
    write_or_print(output, trace.render());
    return kPass;
  }

  if (statespace->parsed()) {
    auto graph = load_graph(input, budget, on_the_fly);
    cmv::space::ReduceStats stats;
    if (reduce && !on_the_fly) {
      graph = cmv::space::reduce_compositional(graph, {}, &stats);
      std::cerr << stats.render() << "\n";
    }
    std::cout << "nodes " << graph.alive_node_count() << " arcs "
              << graph.arcs.size()
              << (graph.budget_exceeded ? " (budget exceeded)" : "") << "\n";
    if (export_format == "graphml")
      write_or_print(output, cmv::space::to_graphml(graph));
    else if (export_format == "dot")
      write_or_print(output, cmv::space::to_dot(graph));
    else
      throw CLI::ValidationError("--export", "expected graphml or dot");
    return kPass;
  }

  if (query->parsed()) {
    auto graph = load_graph(input, budget, false);
    auto pred = cmv::space::Predicate::parse(predicate_text);
    auto hits = cmv::space::search_nodes(graph, pred);
    for (int n : hits) std::cout << n << "\n";
    std::cout << hits.size() << " node(s)\n";
    return hits.empty() ? kPropertyFailure : kPass;
  }

  if (verify->parsed()) {
    if (advise) {
      std::cout << cmv::pipeline::technique_advice();
      if (input.empty()) return kPass;
    }
    if (input.empty())
      throw CLI::RequiredError("input");
    cmv::pipeline::PipelineOptions options;
    options.technique = cmv::pipeline::parse_technique(technique);
    options.seed = seed;
    options.node_budget = budget;
    options.artifact_dir = output;
    auto run = cmv::pipeline::run_pipeline_files(input, taxonomy_path,
                                                 requirements_path, options);
    std::cout << (json ? run.to_json() + "\n" : run.render());
    return run.verified ? kPass : kPropertyFailure;
  }

  return kInputError;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"composability verification for component models"};
  try {
    return run(app, argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kPass : kInputError;
  } catch (const cmv::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}
