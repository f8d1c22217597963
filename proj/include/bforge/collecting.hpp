#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bforge/chat.hpp"
#include "bforge/extraction.hpp"
#include "bforge/rng.hpp"
#include "bforge/types.hpp"

namespace bforge {

struct ItemResult {
    std::optional<Execution> execution;     // nullopt on call/parse failure
    std::optional<Prediction> prediction;   // nullopt when extraction failed
    bool correct = false;
    double latency_ms = 0.0;
    std::string error;  // failure detail, empty on success
};

struct PlanReport {
    KeyStepPlan plan;
    std::vector<ItemResult> per_item;  // one per dev item, index-aligned
    double quant = 0.0;
    double mean_latency_ms = 0.0;
};

// One model call that fills the plan's values for one question.
Execution execute_plan(Backend& backend, const KeyStepPlan& plan, const std::string& question,
                       const TaskSpec& task, double temperature, const std::string& model = "");

// Executes every plan over the dev set; failures are recorded per item and
// retried once, never fatal.
std::vector<PlanReport> collect_reports(Backend& backend, const std::vector<KeyStepPlan>& plans,
                                        const std::vector<DevExample>& dev_set,
                                        const TaskSpec& task, const PipelineConfig& config,
                                        const std::string& model = "");

// Prob_i = quant_i^exponent / sum_j quant_j^exponent; uniform when every
// quant is zero.
std::vector<double> selection_probs(const std::vector<double>& quants, double exponent);

// Samples seed demonstrations: plan by probs, then uniformly among that
// plan's correct items. Bounded at 10*count draws.
std::vector<Demonstration> select_demos(const std::vector<PlanReport>& reports,
                                        const std::vector<double>& probs,
                                        const std::vector<DevExample>& dev_set, SplitMix64& rng,
                                        int count);

}  // namespace bforge
