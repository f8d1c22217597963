#include "bforge/prompts.hpp"

#include "bforge/errors.hpp"
#include "bforge/plan_json.hpp"

namespace bforge::prompts {

std::string replace_all(std::string text, std::string_view slot, std::string_view value) {
    std::size_t pos = 0;
    while ((pos = text.find(slot, pos)) != std::string::npos) {
        text.replace(pos, slot.size(), value);
        pos += value.size();
    }
    return text;
}

const char kGuidelineMarker[] = "Therefore, we can get the general and instructive solution:";

const char kGuidelineSystem[] =
    R"__(There are a series of tasks of the same type. Please try to understand these tasks and give a general and instructive solution.

Your output should include:
- Include all necessary subtasks.
- All subtasks are easy to solve.
- Subtasks are in an appropriate order.
- Do not include specific information in the examples.
- Make sure the strategy is general and concise.
- Your output should finally start with "Therefore, we can get the general and instructive solution:", followed by your solution.)__";

const char kGuidelineExemplarUser[] =
    R"__(Please try to understand these tasks about mathematical reasoning and give a general and instructive solution. The examples of the problems is as follows:

- The roots of the equation 2x^2-mx+n=0 sum to 6 and multiply to 10. What is the value of m+n?

- Solve for n: 0.03n + 0.08(20 + n) = 12.6.

- Let C be the circle with equation x^2-6y-3=-y^2-4x. If (a,b) is the center of C and r is its radius, what is the value of a+b+r?)__";

const char kGuidelineExemplarAssistant[] =
    R"__(I'm piecing together a plan to tackle three math problems, detailing the sequence of subtasks for each one, while avoiding specifics in the framework.

We have a set of algebraic and geometric problems, such as finding unknown values in equations or determining the center and radius of a circle. These problems can typically be approached by identifying the equation type (linear, quadratic, or geometric), applying known properties or standard forms, and then systematically solving for the unknowns.

Therefore, we can get the general and instructive solution:
- Identify the mathematical form of each problem (e.g., quadratic equation, linear equation, circle equation) and note which unknowns or parameters need to be found.
- Collect all given conditions (such as relationships involving the roots, values that must satisfy an equation, or geometric properties) and translate them into algebraic expressions.
- Combine or rearrange these expressions into a more standard form (for instance, factoring a quadratic, grouping like terms, completing the square) so the unknowns are clearly isolated.
- Solve the resulting equations step by step, ensuring each operation is straightforward (e.g., simple algebraic manipulations or known formulas).
- Use any final instructions (like summing certain values or substituting back into an expression) to obtain the required result.)__";

const char kGuidelineUser[] =
    R"__(Please try to understand these tasks about {task definition},
and give a general and instructive solution. The examples of the problems is as follows:
{questions})__";

const char kPlanExemplarUser[] =
    R"__(To solve this kind of problems about math.
We nedd to create a JSON structure that outlines a step-by-step solution based on the provided information. Each key in the JSON should represent a critical step required to solve the task, and the corresponding values should be empty strings.

# Note
- Implement a reasoning structure for solvers to follow step-by-step and arrive at correct answers.
- Steps should be accurate and concise, and there should be no redundancy.

Please understand the provided guidelines:

## Guidelines
- Identify the mathematical form of each problem (e.g., quadratic equation, linear equation, circle equation) and note which unknowns or parameters need to be found.
- Collect all given conditions (such as relationships involving the roots, values that must satisfy an equation, or geometric properties) and translate them into algebraic expressions.
- Combine or rearrange these expressions into a more standard form (for instance, factoring a quadratic, grouping like terms, completing the square) so the unknowns are clearly isolated.
- Solve the resulting equations step by step, ensuring each operation is straightforward (e.g., simple algebraic manipulations or known formulas).
- Use any final instructions (like summing certain values or substituting back into an expression) to obtain the required result.

Now please learn these guideline information and generate the corresponding JSON structure. The JSON structure should:

# Note
- Include all necessary steps.
- Make all steps easy to solve.
- Have no redundant steps, that is, don't repeat the steps when there is already an answer.
- End with **The final answer** as the end of the json structure.)__";

const char kPlanExemplarAssistant[] =
    R"__(### Quick Summary of Guidelines

- Determine the parameters to be solved.
- Collect all the given conditions.
- Clarify the unknowns.
- Solve the equation step by step, ensuring that each step is clear, simple, and straightforward.
- Calculate the final answer.

Therefore, we can derive the step-by-step solution in the following JSON structure:

```json
{
    "Determine the parameters to be solved": "",
    "Collect all the given conditions": "",
    "Clarify the unknowns": "",
    ...
    "The final answer": ""
}
```)__";

const char kPlanUser[] =
    R"__(To solve this kind of problem about {task_definition}
We need to create a JSON structure that outlines a step-by-step solution based on the provided information. Each key in the JSON should represent a critical step required to solve the task, and the corresponding values should be empty strings.

# Notes
- Implement a reasoning structure for solvers to follow step-by-step and arrive at correct answers.
- Steps should be accurate and concise, and there should be no redundancy.

Please review and understand the provided guidelines:

## Guidelines
{guidelines}

Now please learn these guideline information and generate the corresponding JSON structure. The JSON structure should:

# Notes
- Include all necessary steps.
- Ensure that all steps are easy to follow and solve.
- Have no redundant steps, meaning that steps should not be repeated when an answer already exists.
- End with **The final answer** as the last key in the JSON structure.)__";

const char kExecutionSystem[] =
    R"__(# Given Reasoning Structure

```json
    {plan}
```

## Example Output

```json
{
  ...
}
```

# Detailed Instructions

- You must use the given reasoning structure to solve the given task, both of which are provided above.
- The reasoning structure will guide your response to the given task.
- You must fill in all empty strings in the value fields of the key-value pairs within the JSON structure of the reasoning structure.
- Your output must consist of a single code block containing a fully completed JSON structure.
- The code block should be formatted as a JSON snippet enclosed by triple backticks (```json) with the json language specifier, as demonstrated in the example output.)__";

namespace {

const char kConsolidation[] =
    R"__(For the given task:
{task definition}
{question}

we already have the following JSON structured solution:
{demonstration}

Could you determine whether any steps can be merged to make the reasoning process more logical? If so, please explain why and then present the optimized result in Markdown JSON format.

# Notes
- If no steps can be merged without compromising the reasoning, state this explicitly and provide the original JSON structure.
- In this JSON structure, each key represents a piece of guidance for the solution, and each value details the specific reasoning process according to that guidance.)__";

const char kDecomposition[] =
    R"__(For the given task:
{task definition}
{question}

we already have the following JSON structured solution:
{demonstration}

Could you determine whether any steps can be easily split to improve the clarity and accuracy of the reasoning process? If so, please explain why and then present the optimized result in Markdown JSON format.

# Notes
- If no steps can be split without compromising the reasoning, state this explicitly and provide the original JSON structure.
- In this JSON structure, each key represents a piece of guidance for the solution, and each value details the specific reasoning process according to that guidance.)__";

const char kElaboration[] =
    R"__(For the given task:
{task definition}
{question}

we already have the following JSON structured solution:
{demonstration}

Could you provide a more detailed and expanded version of the reasoning flow (including both keys and values) to ensure that no critical aspects of the problem-solving process are overlooked? If so, please explain why and then present the optimized result in Markdown JSON format.

# Notes
- If no steps can be expanded without compromising the reasoning, state this explicitly and provide the original JSON structure.
- In this JSON structure, each key represents a piece of guidance for the solution, and each value details the specific reasoning process according to that guidance.)__";

const char kPruning[] =
    R"__(For the given task:
{task definition}
{question}

we already have the following JSON structured solution:
{demonstration}

Could you determine whether one step (the least consequential one) can be removed without harming the overall reasoning, thereby making the process more concise and logical? If so, please explain why, and then present the optimized result in Markdown JSON format.

# Notes
- If no step can be removed without compromising the reasoning, state this explicitly and provide the original JSON structure.
- In this JSON structure, each key represents a piece of guidance for the solution, and each value details the specific reasoning process according to that guidance.)__";

const char kResampling[] =
    R"__(For the given task
{task definition}
{question}

we already have the following JSON structured solution:
{demonstration}

Could you determine whether any steps can be freely optimized to enhance the logical consistency and efficiency of the reasoning process? If so, please explain why and then present the optimized result in Markdown JSON format.

# Notes
- If no steps can be freely optimized without compromising the reasoning, state this explicitly and provide the original JSON structure.
- In this JSON structure, each key represents a piece of guidance for the solution, and each value details the specific reasoning process according to that guidance.)__";

const char kSimplification[] =
    R"__(For the given task:
{task definition}
{question}

we already have the following JSON structured solution:
{demonstration}

Could you simplify and refine the reasoning flow (including both keys and values) to improve conciseness, coherence, and logical structure? If so, please explain why and then present the optimized result in Markdown JSON format.

# Notes
- If no steps can be abbreviated without compromising the reasoning, state this explicitly and provide the original JSON structure.
- In this JSON structure, each key represents a piece of guidance for the solution, and each value details the specific reasoning process according to that guidance.)__";

}  // namespace

std::vector<ChatMessage> guideline_messages(const TaskSpec& task,
                                            const std::vector<std::string>& example_questions) {
    if (example_questions.empty())
        raise(Errc::Malformed, "guideline prompt needs at least one example question");
    std::string bullets;
    for (std::size_t i = 0; i < example_questions.size(); ++i) {
        if (i > 0) bullets += "\n\n";
        bullets += "- " + example_questions[i];
    }
    std::string user = replace_all(kGuidelineUser, "{task definition}", task.definition);
    user = replace_all(std::move(user), "{questions}", bullets);
    return {
        {Role::System, kGuidelineSystem},
        {Role::User, kGuidelineExemplarUser},
        {Role::Assistant, kGuidelineExemplarAssistant},
        {Role::User, std::move(user)},
    };
}

std::vector<ChatMessage> plan_messages(const TaskSpec& task, const std::string& guideline) {
    std::string user = replace_all(kPlanUser, "{task_definition}", task.definition);
    user = replace_all(std::move(user), "{guidelines}", guideline);
    return {
        {Role::User, kPlanExemplarUser},
        {Role::Assistant, kPlanExemplarAssistant},
        {Role::User, std::move(user)},
    };
}

std::string execution_system(const KeyStepPlan& plan) {
    return replace_all(kExecutionSystem, "{plan}", serialize_plan(plan));
}

const char* operator_template(OperatorKind kind) {
    switch (kind) {
        case OperatorKind::Consolidation: return kConsolidation;
        case OperatorKind::Decomposition: return kDecomposition;
        case OperatorKind::Elaboration: return kElaboration;
        case OperatorKind::Pruning: return kPruning;
        case OperatorKind::Resampling: return kResampling;
        case OperatorKind::Simplification: return kSimplification;
    }
    return kResampling;
}

std::vector<ChatMessage> operator_messages(OperatorKind kind, const TaskSpec& task,
                                           const Demonstration& demo) {
    std::string text = replace_all(operator_template(kind), "{task definition}", task.definition);
    text = replace_all(std::move(text), "{question}", demo.question);
    text = replace_all(std::move(text), "{demonstration}", pretty_steps(demo.execution.steps));
    return {{Role::User, std::move(text)}};
}

std::string baseline_prompt(const TaskSpec& task, bool include_solutions,
                            const std::string& question) {
    if (task.baseline_examples.empty())
        raise(Errc::Malformed, "task \"" + task.name + "\" has no baseline exemplars");
    std::string out;
    for (const auto& example : task.baseline_examples) {
        out += "Question: " + example.question + "\n";
        if (include_solutions && !example.solution.empty())
            out += "Solution: " + example.solution + "\n";
        out += "Answer: " + example.answer + "\n\n";
    }
    out += "Question: " + question + "\n";
    return out;
}

}  // namespace bforge::prompts
