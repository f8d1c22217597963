#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bforge/chat.hpp"
#include "bforge/types.hpp"

namespace bforge {

struct Dataset {
    std::string name;
    std::vector<DevExample> examples;
};

struct EvalItem {
    std::string prediction;  // normalized; empty on failure
    bool correct = false;
    double latency_ms = 0.0;
    std::string error;
};

struct EvalReport {
    std::string mode;  // dp | cot | debop
    double accuracy = 0.0;
    double mean_latency_s = 0.0;
    std::vector<EvalItem> per_item;
    PipelineConfig config;
    std::uint64_t seed = 0;
};

// BBH task layout: {"examples": [{"input","target"}, ...]} or a bare array.
Dataset load_dataset(const std::string& path);

// Deterministic split: SplitMix64(seed)-driven Fisher-Yates, first dev_size
// examples to dev, next test_size to test.
std::pair<std::vector<DevExample>, std::vector<DevExample>> split(const Dataset& dataset,
                                                                  std::uint64_t seed, int dev_size,
                                                                  int test_size);

// Few-shot DP/CoT evaluation; replies are prose, scored with the
// "the answer is" scanner.
EvalReport run_baseline(Backend& backend, const std::string& mode,
                        const std::vector<DevExample>& test_set, const TaskSpec& task,
                        const PipelineConfig& config, const std::string& model = "");

// Taught-mode evaluation with config.shots demonstrations.
EvalReport run_debop_eval(Backend& backend, const std::vector<Demonstration>& best_demos,
                          const std::vector<DevExample>& test_set, const TaskSpec& task,
                          const PipelineConfig& config, const std::string& model = "");

struct ParetoPoint {
    double accuracy = 0.0;
    double mean_latency_s = 0.0;
    std::string mode;
    bool dominated = false;
};

// A point is dominated when another has >= accuracy and <= latency with at
// least one strict inequality.
std::vector<ParetoPoint> pareto_points(const std::vector<EvalReport>& reports);

}  // namespace bforge
