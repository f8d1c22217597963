#pragma once

#include <string>
#include <vector>

#include "bforge/chat.hpp"
#include "bforge/harness.hpp"
#include "bforge/types.hpp"

namespace bforge {

struct RunOptions {
    PipelineConfig config;
    TaskSpec task;
    Dataset dataset;
    std::string out_dir = ".";
    std::string model;
};

// Artifact paths inside out_dir.
std::string plans_path(const RunOptions& options);
std::string demos_path(const RunOptions& options);
std::string collect_report_path(const RunOptions& options);
std::string forest_path(const RunOptions& options);
std::string best_demo_path(const RunOptions& options);
std::string report_path(const RunOptions& options, const std::string& mode, bool multi_mode);
std::string pareto_path(const RunOptions& options);

// PLANNING: dev split -> plan_set -> plans.json.
void cmd_plan(Backend& backend, const RunOptions& options);

// COLLECTING + MCTS: reads plans.json (or runs cmd_plan first when
// with_plan), writes collect_report.json, demos.json, forest.json and
// best_demo.json. A non-empty resume_path continues that forest instead of
// re-running COLLECTING.
void cmd_optimize(Backend& backend, const RunOptions& options, bool with_plan = false,
                  const std::string& resume_path = "");

// Evaluation over the test split for each mode in {dp, cot, debop}; writes
// report.json (or report_<mode>.json for several modes) plus pareto.csv
// when more than one mode ran.
std::vector<EvalReport> cmd_eval(Backend& backend, const RunOptions& options,
                                 const std::vector<std::string>& modes);

}  // namespace bforge
