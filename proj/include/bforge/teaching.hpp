#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bforge/chat.hpp"
#include "bforge/extraction.hpp"
#include "bforge/types.hpp"

namespace bforge {

// Embeds the demonstrations as prior conversation turns ahead of the new
// question: [system reasoning structure] then (user question, assistant
// execution JSON) per demo, then the question. The system prompt carries
// the first demo's plan.
ChatRequest build_taught_request(const std::vector<Demonstration>& demos,
                                 const std::string& question, const TaskSpec& task,
                                 double temperature, const std::string& model = "");

// Sends the taught request, parses the JSON execution from the reply, and
// extracts the prediction.
std::pair<Prediction, double> answer_with_teaching(Backend& backend,
                                                   const std::vector<Demonstration>& demos,
                                                   const std::string& question,
                                                   const TaskSpec& task,
                                                   const PipelineConfig& config,
                                                   const std::string& model = "");

}  // namespace bforge
