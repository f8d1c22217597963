#include "bforge/teaching.hpp"

#include "bforge/errors.hpp"
#include "bforge/plan_json.hpp"
#include "bforge/prompts.hpp"

namespace bforge {

ChatRequest build_taught_request(const std::vector<Demonstration>& demos,
                                 const std::string& question, const TaskSpec& task,
                                 double temperature, const std::string& model) {
    (void)task;
    if (demos.empty()) raise(Errc::EmptyDemoList, "teaching needs at least one demonstration");

    ChatRequest request;
    request.temperature = temperature;
    request.model = model;
    request.messages.push_back({Role::System, prompts::execution_system(demos.front().plan)});
    for (const auto& demo : demos) {
        request.messages.push_back({Role::User, demo.question});
        request.messages.push_back(
            {Role::Assistant, "```json\n" + pretty_steps(demo.execution.steps) + "\n```"});
    }
    request.messages.push_back({Role::User, question});
    return request;
}

std::pair<Prediction, double> answer_with_teaching(Backend& backend,
                                                   const std::vector<Demonstration>& demos,
                                                   const std::string& question,
                                                   const TaskSpec& task,
                                                   const PipelineConfig& config,
                                                   const std::string& model) {
    const ChatRequest request =
        build_taught_request(demos, question, task, config.temp_mcts, model);
    const ChatResponse response = backend.complete(request);

    std::vector<Step> steps;
    try {
        steps = parse_steps(response.content);
        validate_step_keys(steps);
    } catch (const Error& err) {
        raise(Errc::ExecutionParseError, err.what());
    }
    return {extract_from_steps(steps, task), response.latency_ms};
}

}  // namespace bforge
