#include "bforge/planning.hpp"

#include <iostream>

#include "bforge/errors.hpp"
#include "bforge/plan_json.hpp"
#include "bforge/prompts.hpp"

namespace bforge {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

// A bad plan is retried; a broken backend is not.
bool is_invalid_plan_error(Errc code) {
    switch (code) {
        case Errc::NoJsonBlock:
        case Errc::DuplicateKey:
        case Errc::MissingFinalAnswerKey:
        case Errc::Malformed:
        case Errc::EmptyResponse:
            return true;
        default:
            return false;
    }
}

}  // namespace

std::string generate_guideline(Backend& backend, const TaskSpec& task,
                               const std::vector<std::string>& example_questions,
                               double temperature, const std::string& model) {
    ChatRequest request{prompts::guideline_messages(task, example_questions), temperature, model};
    const ChatResponse response = backend.complete(request);
    if (trim(response.content).empty()) raise(Errc::EmptyResponse, "guideline reply is empty");

    const std::string_view marker_text = prompts::kGuidelineMarker;
    const auto marker = response.content.rfind(marker_text);
    if (marker == std::string::npos) return trim(response.content);
    return trim(response.content.substr(marker + marker_text.size()));
}

KeyStepPlan guideline_to_plan(Backend& backend, const TaskSpec& task, const std::string& guideline,
                              double temperature, const std::string& model) {
    if (trim(guideline).empty()) raise(Errc::EmptyResponse, "guideline is empty");
    ChatRequest request{prompts::plan_messages(task, guideline), temperature, model};
    const ChatResponse response = backend.complete(request);

    KeyStepPlan plan = parse_plan(response.content);
    bool blanked = false;
    for (auto& step : plan.steps) {
        if (!step.value.empty()) {
            step.value.clear();
            blanked = true;
        }
    }
    if (blanked)
        std::cerr << "warning: plan reply carried filled values; keeping structure only\n";
    validate_plan(plan);
    return plan;
}

std::vector<KeyStepPlan> plan_set(Backend& backend, const TaskSpec& task,
                                  const std::vector<DevExample>& dev_examples,
                                  const PipelineConfig& config, SplitMix64& rng,
                                  const std::string& model) {
    if (dev_examples.empty()) raise(Errc::EmptyDevSet, "plan_set needs dev examples");

    // Sample the prompt questions once; diversity across the k attempts
    // comes from temperature sampling.
    std::vector<std::size_t> order(dev_examples.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng.shuffle(order);
    std::vector<std::string> questions;
    for (std::size_t i = 0; i < std::min(kGuidelineExampleCount, order.size()); ++i)
        questions.push_back(dev_examples[order[i]].input);

    std::vector<KeyStepPlan> plans;
    const int k = config.k_plans;
    const int max_attempts = 2 * k;
    for (int attempt = 0; attempt < max_attempts && static_cast<int>(plans.size()) < k;
         ++attempt) {
        try {
            const std::string guideline =
                generate_guideline(backend, task, questions, config.temp_plan, model);
            plans.push_back(guideline_to_plan(backend, task, guideline, config.temp_plan, model));
        } catch (const Error& err) {
            if (!is_invalid_plan_error(err.code())) throw;
            std::cerr << "warning: plan attempt " << (attempt + 1) << " failed: " << err.what()
                      << "\n";
        }
    }
    if (static_cast<int>(plans.size()) < k)
        raise(Errc::InsufficientValidPlans,
              "got " + std::to_string(plans.size()) + " of " + std::to_string(k) +
                  " valid plans after " + std::to_string(max_attempts) + " attempts");
    return plans;
}

}  // namespace bforge
