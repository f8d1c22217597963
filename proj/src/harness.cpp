#include "bforge/harness.hpp"

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <numeric>

#include "bforge/errors.hpp"
#include "bforge/extraction.hpp"
#include "bforge/parallel.hpp"
#include "bforge/prompts.hpp"
#include "bforge/rng.hpp"
#include "bforge/teaching.hpp"

namespace bforge {

using nlohmann::json;

namespace {

DevExample example_from_json(const json& doc, std::size_t index) {
    if (!doc.is_object() || !doc.contains("input") || !doc.contains("target"))
        raise(Errc::Malformed, "example " + std::to_string(index) + " needs input and target");
    DevExample example{doc.at("input").get<std::string>(), doc.at("target").get<std::string>()};
    if (example.input.empty() || example.target.empty())
        raise(Errc::Malformed, "example " + std::to_string(index) + " has an empty field");
    return example;
}

EvalReport finalize_report(std::string mode, std::vector<EvalItem> items,
                           const PipelineConfig& config) {
    EvalReport report;
    report.mode = std::move(mode);
    report.per_item = std::move(items);
    report.config = config;
    report.seed = config.seed;
    double correct = 0.0;
    double latency = 0.0;
    for (const auto& item : report.per_item) {
        correct += item.correct ? 1.0 : 0.0;
        latency += item.latency_ms;
    }
    const auto n = static_cast<double>(report.per_item.size());
    report.accuracy = correct / n;
    report.mean_latency_s = latency / n / 1000.0;
    return report;
}

}  // namespace

Dataset load_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(Errc::Io, "cannot open dataset " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& ex) {
        raise(Errc::Malformed, path + ": " + ex.what());
    }

    Dataset dataset;
    dataset.name = std::filesystem::path(path).stem().string();
    const json* examples = nullptr;
    if (doc.is_array()) {
        examples = &doc;
    } else if (doc.is_object() && doc.contains("examples")) {
        if (doc.contains("name")) dataset.name = doc.at("name").get<std::string>();
        examples = &doc.at("examples");
    } else {
        raise(Errc::Malformed, path + ": expected an examples array");
    }
    if (!examples->is_array() || examples->empty())
        raise(Errc::Malformed, path + ": examples must be a non-empty array");
    for (std::size_t i = 0; i < examples->size(); ++i)
        dataset.examples.push_back(example_from_json((*examples)[i], i));
    return dataset;
}

std::pair<std::vector<DevExample>, std::vector<DevExample>> split(const Dataset& dataset,
                                                                  std::uint64_t seed, int dev_size,
                                                                  int test_size) {
    const std::size_t need = static_cast<std::size_t>(dev_size) + static_cast<std::size_t>(test_size);
    if (dev_size < 1 || test_size < 1) raise(Errc::TooSmall, "split sizes must be >= 1");
    if (need > dataset.examples.size())
        raise(Errc::TooSmall, "dataset has " + std::to_string(dataset.examples.size()) +
                                  " examples, split needs " + std::to_string(need));

    std::vector<std::size_t> order(dataset.examples.size());
    std::iota(order.begin(), order.end(), 0);
    SplitMix64 rng(seed);
    rng.shuffle(order);

    std::pair<std::vector<DevExample>, std::vector<DevExample>> out;
    for (int i = 0; i < dev_size; ++i) out.first.push_back(dataset.examples[order[i]]);
    for (int i = 0; i < test_size; ++i)
        out.second.push_back(dataset.examples[order[dev_size + i]]);
    return out;
}

EvalReport run_baseline(Backend& backend, const std::string& mode,
                        const std::vector<DevExample>& test_set, const TaskSpec& task,
                        const PipelineConfig& config, const std::string& model) {
    if (mode != "dp" && mode != "cot") raise(Errc::Usage, "baseline mode must be dp or cot");
    if (test_set.empty()) raise(Errc::TooSmall, "evaluation set is empty");
    const bool include_solutions = mode == "cot";

    std::vector<EvalItem> items(test_set.size());
    parallel_for(test_set.size(), config.jobs, [&](std::size_t i) {
        EvalItem& item = items[i];
        try {
            ChatRequest request{
                {{Role::User, prompts::baseline_prompt(task, include_solutions, test_set[i].input)}},
                config.temp_mcts,
                model};
            const ChatResponse response = backend.complete(request);
            item.latency_ms = response.latency_ms;
            const Prediction prediction = scan_answer_text(response.content, task);
            item.prediction = prediction.normalized;
            item.correct = is_correct(prediction, test_set[i].target, task);
        } catch (const Error& err) {
            item.correct = false;
            item.error = err.what();
        }
    });
    return finalize_report(mode, std::move(items), config);
}

EvalReport run_debop_eval(Backend& backend, const std::vector<Demonstration>& best_demos,
                          const std::vector<DevExample>& test_set, const TaskSpec& task,
                          const PipelineConfig& config, const std::string& model) {
    if (static_cast<int>(best_demos.size()) != config.shots)
        raise(Errc::Malformed, "need exactly " + std::to_string(config.shots) +
                                   " demonstrations, got " + std::to_string(best_demos.size()));
    if (test_set.empty()) raise(Errc::TooSmall, "evaluation set is empty");

    std::vector<EvalItem> items(test_set.size());
    parallel_for(test_set.size(), config.jobs, [&](std::size_t i) {
        EvalItem& item = items[i];
        try {
            const auto [prediction, latency_ms] =
                answer_with_teaching(backend, best_demos, test_set[i].input, task, config, model);
            item.prediction = prediction.normalized;
            item.correct = is_correct(prediction, test_set[i].target, task);
            item.latency_ms = latency_ms;
        } catch (const Error& err) {
            item.correct = false;
            item.error = err.what();
        }
    });
    return finalize_report("debop", std::move(items), config);
}

std::vector<ParetoPoint> pareto_points(const std::vector<EvalReport>& reports) {
    if (reports.empty()) raise(Errc::TooSmall, "pareto_points needs at least one report");
    std::vector<ParetoPoint> points;
    points.reserve(reports.size());
    for (const auto& report : reports)
        points.push_back({report.accuracy, report.mean_latency_s, report.mode, false});
    for (auto& p : points) {
        for (const auto& other : points) {
            const bool no_worse =
                other.accuracy >= p.accuracy && other.mean_latency_s <= p.mean_latency_s;
            const bool strictly_better =
                other.accuracy > p.accuracy || other.mean_latency_s < p.mean_latency_s;
            if (no_worse && strictly_better) {
                p.dominated = true;
                break;
            }
        }
    }
    return points;
}

}  // namespace bforge
