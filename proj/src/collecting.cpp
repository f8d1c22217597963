#include "bforge/collecting.hpp"

#include <cmath>

#include "bforge/errors.hpp"
#include "bforge/parallel.hpp"
#include "bforge/plan_json.hpp"
#include "bforge/prompts.hpp"

namespace bforge {

Execution execute_plan(Backend& backend, const KeyStepPlan& plan, const std::string& question,
                       const TaskSpec& task, double temperature, const std::string& model) {
    (void)task;
    validate_plan(plan);
    ChatRequest request{{{Role::System, prompts::execution_system(plan)}, {Role::User, question}},
                        temperature,
                        model};
    const ChatResponse response = backend.complete(request);

    std::vector<Step> steps;
    try {
        steps = parse_steps(response.content);
    } catch (const Error& err) {
        raise(Errc::ExecutionParseError, err.what());
    }
    if (steps.size() != plan.steps.size())
        raise(Errc::ExecutionParseError,
              "key mismatch: reply has " + std::to_string(steps.size()) + " steps, plan has " +
                  std::to_string(plan.steps.size()));
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (steps[i].key != plan.steps[i].key)
            raise(Errc::ExecutionParseError, "key mismatch: reply step " + std::to_string(i) +
                                                 " is \"" + steps[i].key + "\", plan has \"" +
                                                 plan.steps[i].key + "\"");
        if (steps[i].value.empty())
            raise(Errc::ExecutionParseError, "empty value for step \"" + steps[i].key + "\"");
    }
    return Execution{std::move(steps), response.latency_ms};
}

std::vector<PlanReport> collect_reports(Backend& backend, const std::vector<KeyStepPlan>& plans,
                                        const std::vector<DevExample>& dev_set,
                                        const TaskSpec& task, const PipelineConfig& config,
                                        const std::string& model) {
    if (plans.empty()) raise(Errc::Malformed, "collect_reports needs plans");
    if (dev_set.empty()) raise(Errc::EmptyDevSet, "collect_reports needs dev examples");

    std::vector<PlanReport> reports(plans.size());
    for (std::size_t p = 0; p < plans.size(); ++p) {
        PlanReport& report = reports[p];
        report.plan = plans[p];
        report.per_item.resize(dev_set.size());

        parallel_for(dev_set.size(), config.jobs, [&](std::size_t i) {
            ItemResult& item = report.per_item[i];
            for (int attempt = 0; attempt < 2; ++attempt) {  // one retry per item
                try {
                    Execution execution = execute_plan(backend, plans[p], dev_set[i].input, task,
                                                       config.temp_plan, model);
                    item.latency_ms = execution.latency_ms;
                    item.error.clear();
                    try {
                        item.prediction = extract(execution, task);
                        item.correct = is_correct(*item.prediction, dev_set[i].target, task);
                    } catch (const Error& err) {
                        item.prediction.reset();
                        item.correct = false;
                        item.error = err.what();
                    }
                    item.execution = std::move(execution);
                    return;
                } catch (const Error& err) {
                    item.execution.reset();
                    item.prediction.reset();
                    item.correct = false;
                    item.error = err.what();
                }
            }
        });

        std::vector<std::pair<std::optional<Execution>, std::string>> results;
        results.reserve(dev_set.size());
        double latency_sum = 0.0;
        for (std::size_t i = 0; i < dev_set.size(); ++i) {
            results.emplace_back(report.per_item[i].execution, dev_set[i].target);
            latency_sum += report.per_item[i].latency_ms;
        }
        report.quant = quantify(results, task);
        report.mean_latency_ms = latency_sum / static_cast<double>(dev_set.size());
    }
    return reports;
}

std::vector<double> selection_probs(const std::vector<double>& quants, double exponent) {
    if (quants.empty()) raise(Errc::EmptyDevSet, "selection_probs needs quants");
    if (exponent <= 0.0) raise(Errc::Malformed, "selection exponent must be > 0");

    std::vector<double> powered(quants.size());
    double total = 0.0;
    for (std::size_t i = 0; i < quants.size(); ++i) {
        powered[i] = std::pow(quants[i], exponent);
        total += powered[i];
    }
    if (total == 0.0)  // no plan solved anything: fall back to uniform
        return std::vector<double>(quants.size(), 1.0 / static_cast<double>(quants.size()));
    for (auto& p : powered) p /= total;
    return powered;
}

std::vector<Demonstration> select_demos(const std::vector<PlanReport>& reports,
                                        const std::vector<double>& probs,
                                        const std::vector<DevExample>& dev_set, SplitMix64& rng,
                                        int count) {
    if (count < 1) raise(Errc::Malformed, "select_demos count must be >= 1");
    if (reports.size() != probs.size())
        raise(Errc::Malformed, "reports and probs sizes differ");

    std::vector<std::vector<std::size_t>> correct_items(reports.size());
    for (std::size_t p = 0; p < reports.size(); ++p)
        for (std::size_t i = 0; i < reports[p].per_item.size(); ++i)
            if (reports[p].per_item[i].correct) correct_items[p].push_back(i);

    std::vector<Demonstration> demos;
    const int max_draws = 10 * count;
    for (int draw = 0; draw < max_draws && static_cast<int>(demos.size()) < count; ++draw) {
        const double u = rng.next_double();
        std::size_t plan_index = probs.size() - 1;
        double cumulative = 0.0;
        for (std::size_t p = 0; p < probs.size(); ++p) {
            cumulative += probs[p];
            if (u < cumulative) {
                plan_index = p;
                break;
            }
        }
        const auto& pool = correct_items[plan_index];
        if (pool.empty()) continue;  // resample the plan
        const std::size_t item = pool[rng.next_below(pool.size())];
        demos.push_back(Demonstration{reports[plan_index].plan, dev_set[item].input,
                                      *reports[plan_index].per_item[item].execution});
    }
    if (static_cast<int>(demos.size()) < count)
        raise(Errc::NoCorrectExecutionAnywhere,
              "no plan produced a correct execution to seed from");
    return demos;
}

}  // namespace bforge
