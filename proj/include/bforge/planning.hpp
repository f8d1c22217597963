#pragma once

#include <string>
#include <vector>

#include "bforge/chat.hpp"
#include "bforge/rng.hpp"
#include "bforge/types.hpp"

namespace bforge {

// Synthesizes a task guideline from in-domain example questions. Returns the
// text after the "Therefore, we can get the general and instructive
// solution:" marker, or the whole reply when the marker is absent.
std::string generate_guideline(Backend& backend, const TaskSpec& task,
                               const std::vector<std::string>& example_questions,
                               double temperature, const std::string& model = "");

// Converts a guideline into a validated key-step plan. Replies carrying
// non-empty values are accepted with the values blanked (the structure is
// the plan, not the content).
KeyStepPlan guideline_to_plan(Backend& backend, const TaskSpec& task, const std::string& guideline,
                              double temperature, const std::string& model = "");

// Runs guideline -> plan until k valid plans exist, allowing up to 2k
// attempts. The rng picks which dev questions seed the guideline prompt.
std::vector<KeyStepPlan> plan_set(Backend& backend, const TaskSpec& task,
                                  const std::vector<DevExample>& dev_examples,
                                  const PipelineConfig& config, SplitMix64& rng,
                                  const std::string& model = "");

// How many dev questions the guideline prompt shows.
inline constexpr std::size_t kGuidelineExampleCount = 3;

}  // namespace bforge
