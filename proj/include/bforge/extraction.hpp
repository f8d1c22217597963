#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bforge/types.hpp"

namespace bforge {

struct Prediction {
    std::string raw;         // answer text as matched
    std::string normalized;  // canonical form: bare option letter, MM/DD/YYYY date, collapsed text
};

// Heuristic final-prediction extractor. Reads the "The final answer" value;
// option-letter tasks take the first parenthesized or bare label, date tasks
// the first M/D/YYYY match zero-padded, free-text the trimmed value with
// whitespace collapsed. When the value yields nothing, falls back to an
// "the answer is X" scan over the last step value. Throws NoAnswerFound.
Prediction extract(const Execution& execution, const TaskSpec& task);
Prediction extract_from_steps(const std::vector<Step>& steps, const TaskSpec& task);

// Baseline scanner for prose replies (no JSON): last "the answer is" phrase
// first, then the task rules over the whole text.
Prediction scan_answer_text(const std::string& text, const TaskSpec& task);

// Target normalized with the same task rules as predictions; falls back to
// whitespace-collapsed text when no task pattern matches.
std::string normalize_reference(const std::string& target, const TaskSpec& task);

bool is_correct(const Prediction& prediction, const std::string& target, const TaskSpec& task);

// Quant: fraction of items whose execution extracts to the gold answer.
// Failed executions (nullopt) and NoAnswerFound count as incorrect.
double quantify(const std::vector<std::pair<std::optional<Execution>, std::string>>& plan_results,
                const TaskSpec& task);

}  // namespace bforge
