#include "bforge/types.hpp"

#include "bforge/errors.hpp"

namespace bforge {

const char* answer_kind_name(AnswerKind kind) {
    switch (kind) {
        case AnswerKind::OptionLetter: return "option-letter";
        case AnswerKind::FreeText: return "free-text";
        case AnswerKind::Date: return "date";
    }
    return "free-text";
}

AnswerKind answer_kind_from_name(const std::string& name) {
    if (name == "option-letter") return AnswerKind::OptionLetter;
    if (name == "free-text") return AnswerKind::FreeText;
    if (name == "date") return AnswerKind::Date;
    raise(Errc::Malformed, "unknown answer_kind \"" + name + "\"");
}

const char* operator_name(OperatorKind kind) {
    switch (kind) {
        case OperatorKind::Consolidation: return "consolidation";
        case OperatorKind::Decomposition: return "decomposition";
        case OperatorKind::Elaboration: return "elaboration";
        case OperatorKind::Pruning: return "pruning";
        case OperatorKind::Resampling: return "resampling";
        case OperatorKind::Simplification: return "simplification";
    }
    return "resampling";
}

OperatorKind operator_from_name(const std::string& name) {
    for (int i = 0; i < kOperatorCount; ++i)
        if (name == operator_name(static_cast<OperatorKind>(i)))
            return static_cast<OperatorKind>(i);
    raise(Errc::Malformed, "unknown operator \"" + name + "\"");
}

const char* final_selection_name(FinalSelection mode) {
    switch (mode) {
        case FinalSelection::Mean: return "mean";
        case FinalSelection::Accumulated: return "accumulated";
        case FinalSelection::OwnSim: return "own_sim";
    }
    return "mean";
}

FinalSelection final_selection_from_name(const std::string& name) {
    if (name == "mean") return FinalSelection::Mean;
    if (name == "accumulated") return FinalSelection::Accumulated;
    if (name == "own_sim") return FinalSelection::OwnSim;
    raise(Errc::Malformed, "unknown final_selection \"" + name + "\"");
}

void TaskSpec::validate() const {
    if (name.empty()) raise(Errc::Malformed, "task name is empty");
    if (definition.empty()) raise(Errc::Malformed, "task definition is empty");
    if (answer_kind == AnswerKind::OptionLetter && option_labels.size() < 2)
        raise(Errc::Malformed, "option-letter task \"" + name + "\" needs >= 2 option labels");
}

void PipelineConfig::validate() const {
    auto check = [](bool ok, const char* what) {
        if (!ok) raise(Errc::Malformed, std::string("config: ") + what);
    };
    check(k_plans >= 1, "k_plans must be >= 1");
    check(temp_plan >= 0.0, "temp_plan must be >= 0");
    check(temp_mcts >= 0.0, "temp_mcts must be >= 0");
    check(max_iterations >= 1, "max_iterations must be >= 1");
    check(early_term_prob >= 0.0 && early_term_prob <= 1.0, "early_term_prob must be in [0,1]");
    check(exploration_c >= 0.0, "exploration_c must be >= 0");
    check(selection_exponent > 0.0, "selection_exponent must be > 0");
    check(reward_acc_weight >= 0.0, "reward_acc_weight must be >= 0");
    check(reward_time_weight >= 0.0, "reward_time_weight must be >= 0");
    check(reward_lambda >= 0.0, "reward_lambda must be >= 0");
    check(dev_size >= 1, "dev_size must be >= 1");
    check(test_size >= 1, "test_size must be >= 1");
    check(max_children >= 1, "max_children must be >= 1");
    check(max_depth >= 0, "max_depth must be >= 0");
    check(forest_size >= 1, "forest_size must be >= 1");
    check(shots >= 1, "shots must be >= 1");
    check(jobs >= 1, "jobs must be >= 1");
}

}  // namespace bforge
