#include "revmax/nonadaptive.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace revmax {

namespace {

struct Candidate {
  NodeSet seeds;
  std::string provenance;
};

// Scores candidates by expected revenue; first strictly-better wins, so ties
// resolve to the earliest candidate (the empty set, listed first, absorbs
// all-zero instances).
SelectionResult pick_best(const Evaluator& eval,
                          const std::vector<Candidate>& candidates) {
  SelectionResult best;
  bool have = false;
  for (const Candidate& cand : candidates) {
    double value = eval.expected_revenue(cand.seeds);
    if (!have || value > best.objective_estimate) {
      have = true;
      best = SelectionResult{cand.seeds, value,
                             eval.instance().total_cost(cand.seeds),
                             cand.provenance};
    }
  }
  return best;
}

}  // namespace

NodeSet greedy(const Evaluator& eval, double x, double y) {
  if (!(x >= 0)) throw std::invalid_argument("spend limit x must be >= 0");
  const Instance& inst = eval.instance();
  const NodeSet ground = users_within_cost(inst, x);

  NodeSet solution;
  double current = eval.expected_truncated(solution, y);
  std::vector<char> taken(inst.num_nodes(), 0);
  while (solution.size() < ground.size()) {
    NodeId best_node = 0;
    double best_ratio = 0, best_value = 0;
    bool have = false;
    for (NodeId v : ground) {
      if (taken[v]) continue;
      double value = eval.expected_truncated(with_node(solution, v), y);
      double gain = value - current;
      if (gain <= 0) continue;  // useless now, and forever by submodularity
      // Zero-cost candidates get ratio +inf and are always worth taking.
      double ratio = gain / inst.cost(v);
      if (!have || ratio > best_ratio) {
        have = true;
        best_node = v;
        best_ratio = ratio;
        best_value = value;
      }
    }
    if (!have) break;  // no candidate improves the objective
    // Stop at the first chosen candidate the spend limit cannot absorb.
    NodeSet extended = with_node(solution, best_node);
    if (inst.total_cost(extended) > x) break;
    solution = std::move(extended);
    taken[best_node] = 1;
    current = best_value;
  }
  return solution;
}

std::optional<NodeId> best_singleton(const Evaluator& eval, double x,
                                     double y) {
  if (!(x >= 0)) throw std::invalid_argument("spend limit x must be >= 0");
  const Instance& inst = eval.instance();
  std::optional<NodeId> best;
  double best_value = 0;
  for (NodeId v : users_within_cost(inst, x)) {
    NodeId single[1] = {v};
    double value = eval.expected_truncated(single, y);
    if (!best || value > best_value) {
      best = v;
      best_value = value;
    }
  }
  return best;
}

SelectionResult select_known_cost(const Evaluator& eval, double c_star) {
  const Instance& inst = eval.instance();
  if (!(c_star >= 0 && c_star <= inst.budget()))
    throw std::invalid_argument("known optimal spend must lie in [0, budget]");

  std::vector<Candidate> candidates;
  candidates.push_back(Candidate{{}, "empty-set"});
  candidates.push_back(Candidate{greedy(eval, c_star, c_star), "known-cost-greedy"});
  if (auto v = best_singleton(eval, c_star, c_star))
    candidates.push_back(Candidate{{*v}, "known-cost-singleton"});
  return pick_best(eval, candidates);
}

SelectionResult select(const Evaluator& eval) {
  const Instance& inst = eval.instance();
  const double budget = inst.budget();
  const double half = budget / 2;

  std::vector<Candidate> candidates;
  candidates.push_back(Candidate{{}, "empty-set"});
  candidates.push_back(Candidate{greedy(eval, half, 0.0), "phase1-greedy"});
  if (auto v = best_singleton(eval, half, 0.0))
    candidates.push_back(Candidate{{*v}, "phase1-singleton"});

  // Phase 2: expensive-but-affordable nodes may beat anything assembled from
  // cheap ones; retry the greedy with the whole spend c(e) reserved. Nodes
  // priced beyond the budget can never be part of a solution and are
  // skipped. Equal costs give identical runs, so each spend runs once.
  std::vector<double> seen;
  for (NodeId e = 0; e < inst.num_nodes(); ++e) {
    double c = inst.cost(e);
    if (!(c > half && c <= budget)) continue;
    if (std::find(seen.begin(), seen.end(), c) != seen.end()) continue;
    seen.push_back(c);
    candidates.push_back(Candidate{greedy(eval, c, c),
                                   "phase2-greedy(" + inst.node_name(e) + ")"});
    if (auto v = best_singleton(eval, c, c))
      candidates.push_back(
          Candidate{{*v}, "phase2-singleton(" + inst.node_name(e) + ")"});
  }
  return pick_best(eval, candidates);
}

std::vector<std::vector<NodeSet>> deterministic_candidate_chains(
    const Instance& inst) {
  if (!inst.deterministic())
    throw std::invalid_argument(
        "deterministic selector requires every probability to be 0 or 1");

  // The one possible propagation: exactly the rho=1 edges fire.
  Realization phi(inst.num_edges());
  for (EdgeId e = 0; e < inst.num_edges(); ++e)
    phi.set_live(e, inst.edge(e).rho == 1.0);

  // Users in non-decreasing cost order, ties by node order.
  std::vector<NodeId> by_cost(inst.num_nodes());
  for (NodeId v = 0; v < inst.num_nodes(); ++v) by_cost[v] = v;
  std::stable_sort(by_cost.begin(), by_cost.end(), [&](NodeId a, NodeId b) {
    return inst.cost(a) < inst.cost(b);
  });

  std::vector<std::vector<NodeSet>> chains;
  for (std::size_t i = 1; i <= inst.num_nodes(); ++i) {
    std::span<const NodeId> prefix(by_cost.data(), i);
    std::vector<NodeSet> chain;
    NodeSet solution;
    double current = 0;  // engagements of the empty set
    // Unbudgeted benefit-cost greedy on the engagement count; every
    // intermediate set is a candidate (overspending ones lose on revenue).
    for (std::size_t step = 0; step < i; ++step) {
      bool have = false;
      NodeId best_node = 0;
      double best_ratio = 0, best_value = 0;
      for (NodeId v : prefix) {
        if (contains(solution, v)) continue;
        double value = double(engagements(inst, with_node(solution, v), phi));
        double gain = value - current;
        if (gain <= 0) continue;
        double ratio = gain / inst.cost(v);
        if (!have || ratio > best_ratio) {
          have = true;
          best_node = v;
          best_ratio = ratio;
          best_value = value;
        }
      }
      if (!have) break;
      solution = with_node(solution, best_node);
      current = best_value;
      chain.push_back(solution);
    }
    chains.push_back(std::move(chain));
  }
  return chains;
}

SelectionResult select_deterministic(const Instance& inst) {
  std::vector<std::vector<NodeSet>> chains = deterministic_candidate_chains(inst);

  Realization phi(inst.num_edges());
  for (EdgeId e = 0; e < inst.num_edges(); ++e)
    phi.set_live(e, inst.edge(e).rho == 1.0);
  auto revenue = [&](std::span<const NodeId> seeds) {
    return std::min(double(engagements(inst, seeds, phi)),
                    inst.budget() - inst.total_cost(seeds));
  };

  SelectionResult best{{}, 0, 0, "empty-set"};
  for (std::size_t i = 0; i < chains.size(); ++i) {
    for (std::size_t k = 0; k < chains[i].size(); ++k) {
      double value = revenue(chains[i][k]);
      if (value > best.objective_estimate)
        best = SelectionResult{chains[i][k], value,
                               inst.total_cost(chains[i][k]),
                               "deterministic-S(" + std::to_string(i + 1) +
                                   "," + std::to_string(k + 1) + ")"};
    }
  }
  // Best single node overall (even over budget; then it loses on revenue).
  for (NodeId v = 0; v < inst.num_nodes(); ++v) {
    NodeId single[1] = {v};
    double value = revenue(single);
    if (value > best.objective_estimate)
      best = SelectionResult{{v}, value, inst.cost(v), "singleton-o"};
  }
  return best;
}

}  // namespace revmax
