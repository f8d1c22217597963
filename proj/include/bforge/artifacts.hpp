#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "bforge/collecting.hpp"
#include "bforge/harness.hpp"
#include "bforge/mcts.hpp"
#include "bforge/types.hpp"

// On-disk artifact formats (plans.json, demos.json, collect_report.json,
// forest.json, best_demo.json, report.json, pareto.csv). All JSON artifacts
// are UTF-8, use ordered objects so plan key order is preserved, and embed
// the config snapshot and seed that produced them.
namespace bforge::artifacts {

using ordered_json = nlohmann::ordered_json;

ordered_json plan_to_json(const KeyStepPlan& plan);
KeyStepPlan plan_from_json(const ordered_json& doc);

ordered_json execution_to_json(const Execution& execution);
Execution execution_from_json(const ordered_json& doc);

ordered_json demo_to_json(const Demonstration& demo);
Demonstration demo_from_json(const ordered_json& doc);

ordered_json config_to_json(const PipelineConfig& config);
PipelineConfig config_from_json(const ordered_json& doc);

ordered_json task_to_json(const TaskSpec& task);
TaskSpec task_from_json(const ordered_json& doc);

ordered_json forest_to_json(const Forest& forest);
Forest forest_from_json(const ordered_json& doc);

ordered_json plan_report_to_json(const PlanReport& report);
ordered_json eval_report_to_json(const EvalReport& report);

std::string pareto_csv(const std::vector<ParetoPoint>& points);

// File helpers. Readers raise Io on a missing path; read_artifact raises
// MissingArtifact instead so pipeline prerequisites report clearly.
void write_text(const std::string& path, const std::string& content);
std::string read_text(const std::string& path);
void write_json(const std::string& path, const ordered_json& doc);
ordered_json read_json(const std::string& path);
ordered_json read_artifact(const std::string& path);

// Assembled artifact payloads.
ordered_json plans_artifact(const PipelineConfig& config, const TaskSpec& task,
                            const std::vector<KeyStepPlan>& plans);
ordered_json demos_artifact(const PipelineConfig& config,
                            const std::vector<Demonstration>& demos);
ordered_json collect_artifact(const PipelineConfig& config, const TaskSpec& task,
                              const std::vector<PlanReport>& reports,
                              const std::vector<double>& probs,
                              const std::vector<Demonstration>& demos);
ordered_json forest_artifact(const PipelineConfig& config, const Forest& forest);
ordered_json best_demo_artifact(const PipelineConfig& config, const Demonstration& best,
                                const std::vector<Demonstration>& ranked);

}  // namespace bforge::artifacts
