#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bforge/types.hpp"

namespace bforge {

// Single-line JSON object whose member order equals step order:
//   {"Determine the parameters to be solved": "", "The final answer": ""}
std::string serialize_steps(const std::vector<Step>& steps);
std::string serialize_plan(const KeyStepPlan& plan);

// Multi-line, 4-space-indented rendering used when a plan or execution is
// embedded inside a prompt.
std::string pretty_steps(const std::vector<Step>& steps);

// Locates the JSON payload in a model reply: the contents of the LAST fenced
// ```json (or bare ```) block, or the whole text when no fence is present.
// Returns nullopt when there is no fence and the text is not bare JSON-ish.
std::optional<std::string> extract_json_payload(const std::string& text);

// Parses a flat {"step": "text", ...} object, preserving member order.
// Errors: NoJsonBlock, DuplicateKey, Malformed (non-string value / nesting).
std::vector<Step> parse_steps(const std::string& text);

// parse_steps + plan validation (>=1 step, terminal "The final answer" key).
// Values are returned as parsed; planning blanks non-empty ones.
KeyStepPlan parse_plan(const std::string& text);

// Structural checks shared by plans and executions.
void validate_step_keys(const std::vector<Step>& steps);

// Throws unless the plan also has all-empty values (plan form).
void validate_plan(const KeyStepPlan& plan);

}  // namespace bforge
