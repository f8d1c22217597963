#include "bforge/artifacts.hpp"

#include <fstream>

#include "bforge/errors.hpp"
#include "bforge/plan_json.hpp"

namespace bforge::artifacts {

namespace {

std::vector<Step> steps_from_json(const ordered_json& doc) {
    if (!doc.is_object()) raise(Errc::Malformed, "steps must be a JSON object");
    std::vector<Step> steps;
    for (const auto& [key, value] : doc.items()) {
        if (!value.is_string()) raise(Errc::Malformed, "step \"" + key + "\" must be a string");
        steps.push_back({key, value.get<std::string>()});
    }
    return steps;
}

ordered_json steps_to_json(const std::vector<Step>& steps) {
    ordered_json doc = ordered_json::object();
    for (const auto& step : steps) doc[step.key] = step.value;
    return doc;
}

}  // namespace

ordered_json plan_to_json(const KeyStepPlan& plan) { return steps_to_json(plan.steps); }

KeyStepPlan plan_from_json(const ordered_json& doc) {
    KeyStepPlan plan{steps_from_json(doc)};
    validate_step_keys(plan.steps);
    return plan;
}

ordered_json execution_to_json(const Execution& execution) {
    return {{"steps", steps_to_json(execution.steps)}, {"latency_ms", execution.latency_ms}};
}

Execution execution_from_json(const ordered_json& doc) {
    Execution execution;
    execution.steps = steps_from_json(doc.at("steps"));
    execution.latency_ms = doc.at("latency_ms").get<double>();
    return execution;
}

ordered_json demo_to_json(const Demonstration& demo) {
    return {{"plan", plan_to_json(demo.plan)},
            {"question", demo.question},
            {"execution", execution_to_json(demo.execution)}};
}

Demonstration demo_from_json(const ordered_json& doc) {
    Demonstration demo;
    demo.plan = plan_from_json(doc.at("plan"));
    demo.question = doc.at("question").get<std::string>();
    demo.execution = execution_from_json(doc.at("execution"));
    return demo;
}

ordered_json config_to_json(const PipelineConfig& config) {
    return {
        {"k_plans", config.k_plans},
        {"temp_plan", config.temp_plan},
        {"temp_mcts", config.temp_mcts},
        {"max_iterations", config.max_iterations},
        {"early_term_prob", config.early_term_prob},
        {"exploration_c", config.exploration_c},
        {"selection_exponent", config.selection_exponent},
        {"reward_acc_weight", config.reward_acc_weight},
        {"reward_time_weight", config.reward_time_weight},
        {"reward_lambda", config.reward_lambda},
        {"seed", config.seed},
        {"dev_size", config.dev_size},
        {"test_size", config.test_size},
        {"max_children", config.max_children},
        {"max_depth", config.max_depth},
        {"forest_size", config.forest_size},
        {"shots", config.shots},
        {"jobs", config.jobs},
        {"final_selection", final_selection_name(config.final_selection)},
    };
}

PipelineConfig config_from_json(const ordered_json& doc) {
    PipelineConfig config;
    if (!doc.is_object()) raise(Errc::Malformed, "config must be a JSON object");
    config.k_plans = doc.value("k_plans", config.k_plans);
    config.temp_plan = doc.value("temp_plan", config.temp_plan);
    config.temp_mcts = doc.value("temp_mcts", config.temp_mcts);
    config.max_iterations = doc.value("max_iterations", config.max_iterations);
    config.early_term_prob = doc.value("early_term_prob", config.early_term_prob);
    config.exploration_c = doc.value("exploration_c", config.exploration_c);
    config.selection_exponent = doc.value("selection_exponent", config.selection_exponent);
    config.reward_acc_weight = doc.value("reward_acc_weight", config.reward_acc_weight);
    config.reward_time_weight = doc.value("reward_time_weight", config.reward_time_weight);
    config.reward_lambda = doc.value("reward_lambda", config.reward_lambda);
    config.seed = doc.value("seed", config.seed);
    config.dev_size = doc.value("dev_size", config.dev_size);
    config.test_size = doc.value("test_size", config.test_size);
    config.max_children = doc.value("max_children", config.max_children);
    config.max_depth = doc.value("max_depth", config.max_depth);
    config.forest_size = doc.value("forest_size", config.forest_size);
    config.shots = doc.value("shots", config.shots);
    config.jobs = doc.value("jobs", config.jobs);
    if (doc.contains("final_selection"))
        config.final_selection =
            final_selection_from_name(doc.at("final_selection").get<std::string>());
    config.validate();
    return config;
}

ordered_json task_to_json(const TaskSpec& task) {
    ordered_json doc = {
        {"name", task.name},
        {"definition", task.definition},
        {"answer_kind", answer_kind_name(task.answer_kind)},
        {"option_labels", task.option_labels},
    };
    if (!task.baseline_examples.empty()) {
        ordered_json examples = ordered_json::array();
        for (const auto& example : task.baseline_examples)
            examples.push_back({{"question", example.question},
                                {"solution", example.solution},
                                {"answer", example.answer}});
        doc["baseline_examples"] = examples;
    }
    return doc;
}

TaskSpec task_from_json(const ordered_json& doc) {
    TaskSpec task;
    task.name = doc.at("name").get<std::string>();
    task.definition = doc.at("definition").get<std::string>();
    task.answer_kind = answer_kind_from_name(doc.value("answer_kind", "free-text"));
    if (doc.contains("option_labels"))
        task.option_labels = doc.at("option_labels").get<std::vector<std::string>>();
    if (doc.contains("baseline_examples")) {
        for (const auto& entry : doc.at("baseline_examples")) {
            BaselineExample example;
            example.question = entry.at("question").get<std::string>();
            example.solution = entry.value("solution", "");
            example.answer = entry.at("answer").get<std::string>();
            task.baseline_examples.push_back(std::move(example));
        }
    }
    task.validate();
    return task;
}

ordered_json forest_to_json(const Forest& forest) {
    ordered_json nodes = ordered_json::array();
    for (const auto& node : forest.nodes) {
        ordered_json entry = {
            {"id", node.id},
            {"operator", node.op ? operator_name(*node.op) : "root"},
            {"parent", node.parent ? ordered_json(*node.parent) : ordered_json(nullptr)},
            {"children", node.children},
            {"q", node.q},
            {"n", node.n},
            {"sim_reward", node.sim_reward ? ordered_json(*node.sim_reward) : ordered_json(nullptr)},
            {"sim_quant", node.sim_quant},
            {"sim_mean_latency_ms", node.sim_mean_latency_ms},
            {"demonstration", demo_to_json(node.demonstration)},
        };
        nodes.push_back(std::move(entry));
    }
    return {
        {"iterations_done", forest.iterations_done},
        {"rng_state", std::to_string(forest.rng_state)},  // uint64 kept out of JSON numbers
        {"trees", forest.trees},
        {"nodes", nodes},
    };
}

Forest forest_from_json(const ordered_json& doc) {
    Forest forest;
    forest.iterations_done = doc.at("iterations_done").get<int>();
    forest.rng_state = std::stoull(doc.at("rng_state").get<std::string>());
    forest.trees = doc.at("trees").get<std::vector<NodeId>>();
    for (const auto& entry : doc.at("nodes")) {
        ForestNode node;
        node.id = entry.at("id").get<NodeId>();
        const auto op = entry.at("operator").get<std::string>();
        if (op != "root") node.op = operator_from_name(op);
        if (!entry.at("parent").is_null()) node.parent = entry.at("parent").get<NodeId>();
        node.children = entry.at("children").get<std::vector<NodeId>>();
        node.q = entry.at("q").get<double>();
        node.n = entry.at("n").get<int>();
        if (!entry.at("sim_reward").is_null())
            node.sim_reward = entry.at("sim_reward").get<double>();
        node.sim_quant = entry.at("sim_quant").get<double>();
        node.sim_mean_latency_ms = entry.at("sim_mean_latency_ms").get<double>();
        node.demonstration = demo_from_json(entry.at("demonstration"));
        if (node.id != forest.nodes.size())
            raise(Errc::Malformed, "forest nodes must be listed by id");
        forest.nodes.push_back(std::move(node));
    }
    return forest;
}

ordered_json plan_report_to_json(const PlanReport& report) {
    ordered_json items = ordered_json::array();
    for (const auto& item : report.per_item) {
        ordered_json entry = {
            {"correct", item.correct},
            {"latency_ms", item.latency_ms},
            {"prediction", item.prediction ? ordered_json(item.prediction->normalized)
                                           : ordered_json(nullptr)},
            {"execution", item.execution ? execution_to_json(*item.execution)
                                         : ordered_json(nullptr)},
        };
        if (!item.error.empty()) entry["error"] = item.error;
        items.push_back(std::move(entry));
    }
    return {
        {"plan", plan_to_json(report.plan)},
        {"quant", report.quant},
        {"mean_latency_ms", report.mean_latency_ms},
        {"per_item", items},
    };
}

ordered_json eval_report_to_json(const EvalReport& report) {
    ordered_json items = ordered_json::array();
    for (const auto& item : report.per_item) {
        ordered_json entry = {
            {"prediction", item.prediction},
            {"correct", item.correct},
            {"latency_ms", item.latency_ms},
        };
        if (!item.error.empty()) entry["error"] = item.error;
        items.push_back(std::move(entry));
    }
    return {
        {"mode", report.mode},          {"accuracy", report.accuracy},
        {"mean_latency_s", report.mean_latency_s}, {"seed", report.seed},
        {"config", config_to_json(report.config)}, {"per_item", items},
    };
}

std::string pareto_csv(const std::vector<ParetoPoint>& points) {
    std::string out = "accuracy,latency_s,mode,dominated\n";
    for (const auto& point : points) {
        out += nlohmann::json(point.accuracy).dump();
        out += ',';
        out += nlohmann::json(point.mean_latency_s).dump();
        out += ',';
        out += point.mode;
        out += ',';
        out += point.dominated ? "true" : "false";
        out += '\n';
    }
    return out;
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(Errc::Io, "cannot write " + path);
    out << content;
    if (!out) raise(Errc::Io, "failed writing " + path);
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(Errc::Io, "cannot open " + path);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_json(const std::string& path, const ordered_json& doc) {
    write_text(path, doc.dump(2) + "\n");
}

ordered_json read_json(const std::string& path) {
    const std::string text = read_text(path);
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::exception& ex) {
        raise(Errc::Malformed, path + ": " + ex.what());
    }
}

ordered_json read_artifact(const std::string& path) {
    std::ifstream probe(path);
    if (!probe) raise(Errc::MissingArtifact, path + " (run the earlier pipeline stage first)");
    probe.close();
    return read_json(path);
}

ordered_json plans_artifact(const PipelineConfig& config, const TaskSpec& task,
                            const std::vector<KeyStepPlan>& plans) {
    ordered_json list = ordered_json::array();
    for (const auto& plan : plans) list.push_back(plan_to_json(plan));
    return {{"seed", config.seed},
            {"config", config_to_json(config)},
            {"task", task.name},
            {"plans", list}};
}

ordered_json demos_artifact(const PipelineConfig& config,
                            const std::vector<Demonstration>& demos) {
    ordered_json list = ordered_json::array();
    for (const auto& demo : demos) list.push_back(demo_to_json(demo));
    return {{"seed", config.seed}, {"config", config_to_json(config)}, {"demos", list}};
}

ordered_json collect_artifact(const PipelineConfig& config, const TaskSpec& task,
                              const std::vector<PlanReport>& reports,
                              const std::vector<double>& probs,
                              const std::vector<Demonstration>& demos) {
    ordered_json report_list = ordered_json::array();
    for (const auto& report : reports) report_list.push_back(plan_report_to_json(report));
    ordered_json demo_list = ordered_json::array();
    for (const auto& demo : demos) demo_list.push_back(demo_to_json(demo));
    return {{"seed", config.seed},  {"config", config_to_json(config)}, {"task", task.name},
            {"reports", report_list}, {"probs", probs},                 {"demos", demo_list}};
}

ordered_json forest_artifact(const PipelineConfig& config, const Forest& forest) {
    ordered_json doc = forest_to_json(forest);
    ordered_json out = {{"seed", config.seed}, {"config", config_to_json(config)}};
    for (auto& [key, value] : doc.items()) out[key] = value;
    return out;
}

ordered_json best_demo_artifact(const PipelineConfig& config, const Demonstration& best,
                                const std::vector<Demonstration>& ranked) {
    ordered_json ranked_list = ordered_json::array();
    for (const auto& demo : ranked) ranked_list.push_back(demo_to_json(demo));
    return {{"seed", config.seed},
            {"config", config_to_json(config)},
            {"selection", final_selection_name(config.final_selection)},
            {"best", demo_to_json(best)},
            {"ranked", ranked_list}};
}

}  // namespace bforge::artifacts
