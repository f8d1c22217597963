#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bforge/chat.hpp"
#include "bforge/types.hpp"

// Prompt templates, kept verbatim as raw-string assets (including the source
// material's typos) with {task definition} / {questions} / {guidelines} /
// {plan} / {question} / {demonstration} slots.
namespace bforge::prompts {

std::string replace_all(std::string text, std::string_view slot, std::string_view value);

// Guideline synthesis: model-agnostic system prompt, a worked math exchange,
// then the task-specific user turn.
extern const char kGuidelineSystem[];
extern const char kGuidelineExemplarUser[];
extern const char kGuidelineExemplarAssistant[];
extern const char kGuidelineUser[];
extern const char kGuidelineMarker[];

std::vector<ChatMessage> guideline_messages(const TaskSpec& task,
                                            const std::vector<std::string>& example_questions);

// Guideline -> JSON plan conversion: worked math exchange then the real turn.
extern const char kPlanExemplarUser[];
extern const char kPlanExemplarAssistant[];
extern const char kPlanUser[];

std::vector<ChatMessage> plan_messages(const TaskSpec& task, const std::string& guideline);

// System prompt instructing the model to fill a reasoning structure.
extern const char kExecutionSystem[];

std::string execution_system(const KeyStepPlan& plan);

// Node evolution prompts, one single-turn user message each.
const char* operator_template(OperatorKind kind);
std::vector<ChatMessage> operator_messages(OperatorKind kind, const TaskSpec& task,
                                           const Demonstration& demo);

// Few-shot baseline prompt; solutions included for cot, omitted for dp.
std::string baseline_prompt(const TaskSpec& task, bool include_solutions,
                            const std::string& question);

}  // namespace bforge::prompts

namespace bforge {

// Built-in BBH task specs (pit, du, snk, dqa, ld, hb, mr) with their few-shot
// baseline exemplars.
TaskSpec builtin_task(const std::string& name);
std::vector<std::string> builtin_task_names();
bool is_builtin_task(const std::string& name);

}  // namespace bforge
