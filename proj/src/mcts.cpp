#include "bforge/mcts.hpp"

#include <cmath>
#include <deque>
#include <iostream>
#include <limits>

#include "bforge/errors.hpp"
#include "bforge/parallel.hpp"
#include "bforge/plan_json.hpp"
#include "bforge/prompts.hpp"
#include "bforge/teaching.hpp"

namespace bforge {

namespace {

// Cassette misses and exhausted scripts mean the harness setup is broken;
// everything else is a per-iteration casualty.
bool is_fatal_backend_error(Errc code) {
    return code == Errc::CassetteMiss || code == Errc::ScriptExhausted;
}

}  // namespace

NodeId Forest::add_root(Demonstration demo) {
    ForestNode node;
    node.id = static_cast<NodeId>(nodes.size());
    node.demonstration = std::move(demo);
    nodes.push_back(std::move(node));
    trees.push_back(nodes.back().id);
    return nodes.back().id;
}

NodeId Forest::add_child(NodeId parent, OperatorKind op, Demonstration demo) {
    ForestNode node;
    node.id = static_cast<NodeId>(nodes.size());
    node.demonstration = std::move(demo);
    node.op = op;
    node.parent = parent;
    nodes.push_back(std::move(node));
    nodes[parent].children.push_back(nodes.back().id);
    return nodes.back().id;
}

double ucb_score(const ForestNode& node, int parent_n, double c) {
    if (node.n == 0) return std::numeric_limits<double>::infinity();
    const double exploit = node.q / static_cast<double>(node.n);
    const double explore =
        c * std::sqrt(2.0 * std::log(static_cast<double>(std::max(parent_n, 1))) /
                      static_cast<double>(node.n));
    return exploit + explore;
}

NodeId select_expandable(const Forest& forest, NodeId tree_root, double c, int max_children,
                         int max_depth) {
    bool found = false;
    NodeId best = 0;
    double best_score = -std::numeric_limits<double>::infinity();

    std::deque<std::pair<NodeId, int>> queue{{tree_root, 0}};
    while (!queue.empty()) {
        const auto [id, depth] = queue.front();
        queue.pop_front();
        const ForestNode& node = forest.at(id);
        for (const NodeId child : node.children) queue.emplace_back(child, depth + 1);

        if (static_cast<int>(node.children.size()) >= max_children) continue;
        if (max_depth > 0 && depth >= max_depth) continue;

        const int parent_n = node.parent ? forest.at(*node.parent).n : std::max(node.n, 1);
        const double score = ucb_score(node, parent_n, c);
        if (!found || score > best_score || (score == best_score && id < best)) {
            found = true;
            best = id;
            best_score = score;
        }
    }
    if (!found) raise(Errc::NoExpandableNode, "every node in the tree is saturated");
    return best;
}

NodeId expand(Backend& backend, Forest& forest, NodeId node_id, OperatorKind op,
              const TaskSpec& task, double temperature, const std::string& model) {
    const Demonstration parent_demo = forest.at(node_id).demonstration;
    ChatRequest request{prompts::operator_messages(op, task, parent_demo), temperature, model};
    const ChatResponse response = backend.complete(request);

    std::vector<Step> steps;
    try {
        steps = parse_steps(response.content);
        validate_step_keys(steps);
    } catch (const Error& err) {
        raise(Errc::ExecutionParseError, err.what());
    }
    for (const auto& step : steps)
        if (step.value.empty())
            raise(Errc::ExecutionParseError, "empty value for step \"" + step.key + "\"");

    Demonstration child;
    child.question = parent_demo.question;
    for (const auto& step : steps) child.plan.steps.push_back({step.key, ""});
    child.execution = Execution{std::move(steps), response.latency_ms};
    return forest.add_child(node_id, op, std::move(child));
}

double simulate(Backend& backend, Forest& forest, NodeId node_id,
                const std::vector<DevExample>& dev_set, const TaskSpec& task,
                const PipelineConfig& config, const std::string& model) {
    if (dev_set.empty()) raise(Errc::EmptyDevSet, "simulate needs dev examples");
    const Demonstration demo = forest.at(node_id).demonstration;

    std::vector<char> correct(dev_set.size(), 0);
    std::vector<double> latency_ms(dev_set.size(), 0.0);
    parallel_for(dev_set.size(), config.jobs, [&](std::size_t i) {
        try {
            const auto [prediction, ms] =
                answer_with_teaching(backend, {demo}, dev_set[i].input, task, config, model);
            correct[i] = is_correct(prediction, dev_set[i].target, task) ? 1 : 0;
            latency_ms[i] = ms;
        } catch (const Error& err) {
            if (is_fatal_backend_error(err.code())) throw;
            // failed item scores 0 and contributes no time
        }
    });

    double correct_sum = 0.0;
    double latency_sum = 0.0;
    for (std::size_t i = 0; i < dev_set.size(); ++i) {
        correct_sum += correct[i];
        latency_sum += latency_ms[i];
    }
    const double quant = correct_sum / static_cast<double>(dev_set.size());
    const double mean_latency = latency_sum / static_cast<double>(dev_set.size());
    const double t_seconds = mean_latency / 1000.0;
    const double delta = config.reward_acc_weight * quant +
                         config.reward_time_weight * std::exp(-config.reward_lambda * t_seconds);

    ForestNode& node = forest.at(node_id);
    node.sim_reward = delta;
    node.sim_quant = quant;
    node.sim_mean_latency_ms = mean_latency;
    return delta;
}

void backpropagate(Forest& forest, NodeId node_id, double delta) {
    std::optional<NodeId> cursor = node_id;
    while (cursor) {
        ForestNode& node = forest.at(*cursor);
        node.q += delta;
        node.n += 1;
        cursor = node.parent;
    }
}

NodeId best_node(const Forest& forest, FinalSelection selection) {
    const auto metric = [&](const ForestNode& node) {
        switch (selection) {
            case FinalSelection::Mean: return node.q / static_cast<double>(node.n);
            case FinalSelection::Accumulated: return node.q;
            case FinalSelection::OwnSim:
                return node.sim_reward.value_or(-std::numeric_limits<double>::infinity());
        }
        return node.q / static_cast<double>(node.n);
    };

    bool found = false;
    NodeId best = 0;
    double best_metric = 0.0;
    double best_quant = 0.0;
    for (const ForestNode& node : forest.nodes) {
        if (node.n == 0) continue;
        const double m = metric(node);
        if (!found || m > best_metric || (m == best_metric && node.sim_quant > best_quant)) {
            found = true;
            best = node.id;
            best_metric = m;
            best_quant = node.sim_quant;
        }
    }
    if (!found) raise(Errc::Malformed, "forest has no simulated node");
    return best;
}

namespace {

MctsResult mcts_loop(Backend& backend, Forest forest, SplitMix64 rng,
                     const std::vector<DevExample>& dev_set, const TaskSpec& task,
                     const PipelineConfig& config, const std::string& model) {
    while (forest.iterations_done < config.max_iterations) {
        const NodeId tree_root =
            forest.trees[static_cast<std::size_t>(forest.iterations_done) % forest.trees.size()];
        ++forest.iterations_done;

        try {
            const NodeId target = select_expandable(forest, tree_root, config.exploration_c,
                                                    config.max_children, config.max_depth);
            const auto op = static_cast<OperatorKind>(rng.next_below(kOperatorCount));
            const NodeId child = expand(backend, forest, target, op, task, config.temp_mcts, model);
            const double delta = simulate(backend, forest, child, dev_set, task, config, model);
            backpropagate(forest, child, delta);
        } catch (const Error& err) {
            // a failed expansion consumes the iteration but adds no node
            if (is_fatal_backend_error(err.code())) throw;
            std::cerr << "warning: iteration " << forest.iterations_done
                      << " failed: " << err.what() << "\n";
        }

        const bool stop = rng.next_double() < config.early_term_prob;
        forest.rng_state = rng.state();
        if (stop) break;
    }

    MctsResult result;
    result.best_id = best_node(forest, config.final_selection);
    result.best = forest.at(result.best_id).demonstration;
    result.forest = std::move(forest);
    return result;
}

}  // namespace

MctsResult run_mcts(Backend& backend, const std::vector<Demonstration>& seeds,
                    const std::vector<DevExample>& dev_set, const TaskSpec& task,
                    const PipelineConfig& config, const std::string& model) {
    if (seeds.empty()) raise(Errc::EmptyDemoList, "run_mcts needs seed demonstrations");

    Forest forest;
    for (const auto& seed : seeds) forest.add_root(seed);
    for (const NodeId root : forest.trees) {
        const double delta = simulate(backend, forest, root, dev_set, task, config, model);
        backpropagate(forest, root, delta);
    }

    SplitMix64 rng(derive_seed(config.seed, "mcts"));
    forest.rng_state = rng.state();
    return mcts_loop(backend, std::move(forest), rng, dev_set, task, config, model);
}

MctsResult resume_mcts(Backend& backend, Forest forest, const std::vector<DevExample>& dev_set,
                       const TaskSpec& task, const PipelineConfig& config,
                       const std::string& model) {
    if (forest.trees.empty()) raise(Errc::Malformed, "cannot resume an empty forest");
    SplitMix64 rng(0);
    rng.set_state(forest.rng_state);
    return mcts_loop(backend, std::move(forest), rng, dev_set, task, config, model);
}

}  // namespace bforge
