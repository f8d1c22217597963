#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bforge {

// The terminal key every plan and execution must end with.
inline constexpr const char* kFinalAnswerKey = "The final answer";

struct Step {
    std::string key;
    std::string value;

    bool operator==(const Step&) const = default;
};

// Ordered reasoning skeleton: keys are step names, values are empty until
// execution time. Key order is semantic and survives serialization.
struct KeyStepPlan {
    std::vector<Step> steps;

    bool operator==(const KeyStepPlan&) const = default;
};

// A completed plan: same keys in the same order, all values filled by one
// model call on one question.
struct Execution {
    std::vector<Step> steps;
    double latency_ms = 0.0;

    bool operator==(const Execution&) const = default;
};

struct DevExample {
    std::string input;
    std::string target;
};

// The unit the search optimizes and the teaching phase injects.
struct Demonstration {
    KeyStepPlan plan;
    std::string question;
    Execution execution;

    bool operator==(const Demonstration&) const = default;
};

enum class AnswerKind { OptionLetter, FreeText, Date };

const char* answer_kind_name(AnswerKind kind);
AnswerKind answer_kind_from_name(const std::string& name);

struct BaselineExample {
    std::string question;
    std::string solution;  // present only in CoT form
    std::string answer;
};

struct TaskSpec {
    std::string name;
    std::string definition;  // substituted into the {task definition} slot
    AnswerKind answer_kind = AnswerKind::FreeText;
    std::vector<std::string> option_labels;
    std::vector<BaselineExample> baseline_examples;  // few-shot exemplars for dp/cot

    void validate() const;
};

// The six demonstration evolution methods.
enum class OperatorKind {
    Consolidation,
    Decomposition,
    Elaboration,
    Pruning,
    Resampling,
    Simplification,
};

inline constexpr int kOperatorCount = 6;

const char* operator_name(OperatorKind kind);
OperatorKind operator_from_name(const std::string& name);

// Which node run_mcts returns: mean reward q/n (default), raw accumulated
// reward q, or the node's own simulation reward.
enum class FinalSelection { Mean, Accumulated, OwnSim };

const char* final_selection_name(FinalSelection mode);
FinalSelection final_selection_from_name(const std::string& name);

struct PipelineConfig {
    int k_plans = 5;
    double temp_plan = 0.7;
    double temp_mcts = 0.0;
    int max_iterations = 50;
    double early_term_prob = 0.2;
    double exploration_c = 1.0;
    double selection_exponent = 2.0;  // the COLLECTING exponent
    double reward_acc_weight = 1.0;
    double reward_time_weight = 1.0;
    double reward_lambda = 0.5;
    std::uint64_t seed = 42;
    int dev_size = 50;
    int test_size = 100;
    int max_children = 3;
    int max_depth = 0;  // 0 = unlimited
    int forest_size = 3;
    int shots = 1;
    int jobs = 1;
    FinalSelection final_selection = FinalSelection::Mean;

    void validate() const;
};

}  // namespace bforge
