#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cmv/match/rules.hpp"
#include "cmv/model/component.hpp"

namespace cmv::pipeline {

enum class Technique { Algebraic, StateSpace };

Technique parse_technique(const std::string& name);

struct StageResult {
  std::string name;    // parse, S1, S2, S3a, S3b, dynamic
  bool pass = false;
  std::string detail;  // violated rule ids, verdict text
  bool executed = false;
};

struct PropertyResult {
  std::string id;          // objective/constraint id
  std::string description;
  enum class Status { Satisfied, Violated, Assumed } status = Status::Assumed;
  std::string detail;
};

struct PipelineRun {
  std::vector<StageResult> stages;
  std::vector<PropertyResult> properties;
  bool verified = false;
  std::string failed_stage; // empty when verified
  std::string failure_detail;
  std::vector<std::string> artifacts;

  std::string render() const;
  std::string to_json() const;
};

struct PipelineOptions {
  Technique technique = Technique::Algebraic;
  std::uint64_t seed = 1;
  size_t node_budget = 200000;
  size_t max_steps = 20000;
  // write exports (PNML or colored documents, reports) here when set
  std::optional<std::string> artifact_dir;
};

// Runs the staged verification: parse -> S1 -> S2 -> S3a -> transform+S3b
// -> dynamic analysis (algebraic invariant/fairness checks or state-space
// queries). A failed mandatory stage halts the run.
PipelineRun run_pipeline(const model::ComposedComponent& composition,
                         const match::Taxonomy& taxonomy,
                         const model::RequirementSpec& requirements,
                         const PipelineOptions& options);

PipelineRun run_pipeline_files(const std::string& composition_path,
                               const std::string& taxonomy_path,
                               const std::string& requirements_path,
                               const PipelineOptions& options);

// The technique-selection guidance printed by `verify --advise`.
std::string technique_advice();

} // namespace cmv::pipeline
