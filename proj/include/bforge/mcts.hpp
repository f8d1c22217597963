#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bforge/chat.hpp"
#include "bforge/rng.hpp"
#include "bforge/types.hpp"

namespace bforge {

using NodeId = std::uint32_t;

struct ForestNode {
    NodeId id = 0;
    Demonstration demonstration;
    double q = 0.0;  // accumulated reward
    int n = 0;       // visit count
    std::optional<double> sim_reward;  // this node's own simulation delta
    double sim_quant = 0.0;
    double sim_mean_latency_ms = 0.0;
    std::optional<OperatorKind> op;  // nullopt for roots
    std::optional<NodeId> parent;
    std::vector<NodeId> children;
};

struct Forest {
    std::vector<ForestNode> nodes;  // node id == index
    std::vector<NodeId> trees;      // root ids
    std::uint64_t rng_state = 0;
    int iterations_done = 0;

    NodeId add_root(Demonstration demo);
    NodeId add_child(NodeId parent, OperatorKind op, Demonstration demo);
    const ForestNode& at(NodeId id) const { return nodes.at(id); }
    ForestNode& at(NodeId id) { return nodes.at(id); }
};

// Q/N + c*sqrt(2*ln(parent_n)/N); unvisited nodes score +infinity.
double ucb_score(const ForestNode& node, int parent_n, double c);

// Breadth-first over the tree, keeping nodes that still have room for a
// child (children < max_children, and depth below max_depth when one is
// set); returns the UCB argmax, ties to the smallest id. Roots score
// against their own visit count (min 1).
NodeId select_expandable(const Forest& forest, NodeId tree_root, double c, int max_children,
                         int max_depth = 0);

// Applies one evolution operator to the node's demonstration and links the
// resulting child. Throws ExecutionParseError when the reply is not a
// completed demonstration; no node is created then.
NodeId expand(Backend& backend, Forest& forest, NodeId node_id, OperatorKind op,
              const TaskSpec& task, double temperature, const std::string& model = "");

// Teaches the node's demonstration, re-answers every dev item, and returns
// delta = acc_weight*quant + time_weight*exp(-lambda*T_seconds). Stores
// sim_reward / sim_quant / sim_mean_latency_ms on the node.
double simulate(Backend& backend, Forest& forest, NodeId node_id,
                const std::vector<DevExample>& dev_set, const TaskSpec& task,
                const PipelineConfig& config, const std::string& model = "");

// Adds delta and one visit to every node from node_id up to its root.
void backpropagate(Forest& forest, NodeId node_id, double delta);

// Best node under the configured selection rule; ties broken by higher
// sim_quant, then smaller id. Only simulated nodes are considered.
NodeId best_node(const Forest& forest, FinalSelection selection);

struct MctsResult {
    Demonstration best;
    NodeId best_id = 0;
    Forest forest;
};

// Full search: one tree per seed, roots simulated once, then round-robin
// select/expand/simulate/backpropagate with probabilistic early termination
// after each iteration and a hard stop at max_iterations.
MctsResult run_mcts(Backend& backend, const std::vector<Demonstration>& seeds,
                    const std::vector<DevExample>& dev_set, const TaskSpec& task,
                    const PipelineConfig& config, const std::string& model = "");

// Continues a persisted forest from iterations_done with its saved RNG
// state; existing nodes are not re-simulated.
MctsResult resume_mcts(Backend& backend, Forest forest, const std::vector<DevExample>& dev_set,
                       const TaskSpec& task, const PipelineConfig& config,
                       const std::string& model = "");

}  // namespace bforge
