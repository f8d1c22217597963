#include "bforge/pipeline.hpp"

#include <algorithm>
#include <filesystem>

#include "bforge/artifacts.hpp"
#include "bforge/collecting.hpp"
#include "bforge/errors.hpp"
#include "bforge/mcts.hpp"
#include "bforge/planning.hpp"
#include "bforge/rng.hpp"

namespace bforge {

namespace {

std::string join(const RunOptions& options, const char* name) {
    return (std::filesystem::path(options.out_dir) / name).string();
}

void ensure_out_dir(const RunOptions& options) {
    std::error_code ec;
    std::filesystem::create_directories(options.out_dir, ec);
    if (ec) raise(Errc::Io, "cannot create output directory " + options.out_dir);
}

// Simulated nodes ordered by the final-selection metric, best first.
std::vector<Demonstration> ranked_demos(const Forest& forest, FinalSelection selection) {
    std::vector<const ForestNode*> nodes;
    for (const auto& node : forest.nodes)
        if (node.n > 0) nodes.push_back(&node);
    const auto metric = [&](const ForestNode& node) {
        switch (selection) {
            case FinalSelection::Mean: return node.q / static_cast<double>(node.n);
            case FinalSelection::Accumulated: return node.q;
            case FinalSelection::OwnSim: return node.sim_reward.value_or(0.0);
        }
        return node.q / static_cast<double>(node.n);
    };
    std::stable_sort(nodes.begin(), nodes.end(), [&](const ForestNode* a, const ForestNode* b) {
        if (metric(*a) != metric(*b)) return metric(*a) > metric(*b);
        if (a->sim_quant != b->sim_quant) return a->sim_quant > b->sim_quant;
        return a->id < b->id;
    });
    std::vector<Demonstration> demos;
    demos.reserve(nodes.size());
    for (const auto* node : nodes) demos.push_back(node->demonstration);
    return demos;
}

}  // namespace

std::string plans_path(const RunOptions& options) { return join(options, "plans.json"); }
std::string demos_path(const RunOptions& options) { return join(options, "demos.json"); }
std::string collect_report_path(const RunOptions& options) {
    return join(options, "collect_report.json");
}
std::string forest_path(const RunOptions& options) { return join(options, "forest.json"); }
std::string best_demo_path(const RunOptions& options) { return join(options, "best_demo.json"); }
std::string report_path(const RunOptions& options, const std::string& mode, bool multi_mode) {
    if (!multi_mode) return join(options, "report.json");
    return (std::filesystem::path(options.out_dir) / ("report_" + mode + ".json")).string();
}
std::string pareto_path(const RunOptions& options) { return join(options, "pareto.csv"); }

void cmd_plan(Backend& backend, const RunOptions& options) {
    options.config.validate();
    options.task.validate();
    ensure_out_dir(options);

    const auto [dev, test] =
        split(options.dataset, options.config.seed, options.config.dev_size,
              options.config.test_size);
    (void)test;

    SplitMix64 rng(derive_seed(options.config.seed, "planning"));
    const auto plans = plan_set(backend, options.task, dev, options.config, rng, options.model);
    artifacts::write_json(plans_path(options),
                          artifacts::plans_artifact(options.config, options.task, plans));
}

void cmd_optimize(Backend& backend, const RunOptions& options, bool with_plan,
                  const std::string& resume_path) {
    options.config.validate();
    options.task.validate();
    ensure_out_dir(options);

    const auto [dev, test] =
        split(options.dataset, options.config.seed, options.config.dev_size,
              options.config.test_size);
    (void)test;

    MctsResult result;
    if (!resume_path.empty()) {
        Forest forest = artifacts::forest_from_json(artifacts::read_artifact(resume_path));
        result = resume_mcts(backend, std::move(forest), dev, options.task, options.config,
                             options.model);
    } else {
        if (with_plan) cmd_plan(backend, options);

        const auto plans_doc = artifacts::read_artifact(plans_path(options));
        std::vector<KeyStepPlan> plans;
        for (const auto& entry : plans_doc.at("plans"))
            plans.push_back(artifacts::plan_from_json(entry));

        const auto reports =
            collect_reports(backend, plans, dev, options.task, options.config, options.model);
        std::vector<double> quants;
        quants.reserve(reports.size());
        for (const auto& report : reports) quants.push_back(report.quant);
        const auto probs = selection_probs(quants, options.config.selection_exponent);

        SplitMix64 rng(derive_seed(options.config.seed, "collecting"));
        const auto demos = select_demos(reports, probs, dev, rng, options.config.forest_size);

        artifacts::write_json(
            collect_report_path(options),
            artifacts::collect_artifact(options.config, options.task, reports, probs, demos));
        artifacts::write_json(demos_path(options),
                              artifacts::demos_artifact(options.config, demos));

        result = run_mcts(backend, demos, dev, options.task, options.config, options.model);
    }

    artifacts::write_json(forest_path(options),
                          artifacts::forest_artifact(options.config, result.forest));
    artifacts::write_json(
        best_demo_path(options),
        artifacts::best_demo_artifact(options.config, result.best,
                                      ranked_demos(result.forest,
                                                   options.config.final_selection)));
}

std::vector<EvalReport> cmd_eval(Backend& backend, const RunOptions& options,
                                 const std::vector<std::string>& modes) {
    options.config.validate();
    options.task.validate();
    if (modes.empty()) raise(Errc::Usage, "eval needs at least one mode");
    ensure_out_dir(options);

    const auto [dev, test] =
        split(options.dataset, options.config.seed, options.config.dev_size,
              options.config.test_size);
    (void)dev;

    const bool multi_mode = modes.size() > 1;
    std::vector<EvalReport> reports;
    for (const auto& mode : modes) {
        EvalReport report;
        if (mode == "dp" || mode == "cot") {
            report = run_baseline(backend, mode, test, options.task, options.config,
                                  options.model);
        } else if (mode == "debop") {
            const auto doc = artifacts::read_artifact(best_demo_path(options));
            std::vector<Demonstration> demos;
            if (doc.contains("ranked"))
                for (const auto& entry : doc.at("ranked"))
                    demos.push_back(artifacts::demo_from_json(entry));
            if (demos.empty()) demos.push_back(artifacts::demo_from_json(doc.at("best")));
            if (static_cast<int>(demos.size()) < options.config.shots)
                raise(Errc::MissingArtifact,
                      "best_demo.json ranks " + std::to_string(demos.size()) +
                          " demonstrations, need " + std::to_string(options.config.shots));
            demos.resize(static_cast<std::size_t>(options.config.shots));
            report = run_debop_eval(backend, demos, test, options.task, options.config,
                                    options.model);
        } else {
            raise(Errc::Usage, "unknown eval mode \"" + mode + "\"");
        }
        artifacts::write_json(report_path(options, mode, multi_mode),
                              artifacts::eval_report_to_json(report));
        reports.push_back(std::move(report));
    }

    if (multi_mode)
        artifacts::write_text(pareto_path(options), artifacts::pareto_csv(pareto_points(reports)));
    return reports;
}

}  // namespace bforge
