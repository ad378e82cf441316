// Non-adaptive seed selection: commit to a set up front, pay its cost, and
// collect the budget-truncated expected engagements. The workhorse is a
// benefit-cost greedy over the truncated objective; the selectors combine
// greedy runs and single-node candidates so the winner carries a constant
// factor of the optimum.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "revmax/estimator.hpp"
#include "revmax/instance.hpp"
#include "revmax/types.hpp"

namespace revmax {

struct SelectionResult {
  NodeSet seeds;
  double objective_estimate = 0;  // expected revenue under the evaluator used
  double total_cost = 0;
  std::string provenance;  // which candidate won
};

// Benefit-cost greedy over the candidates affordable at spend x, maximizing
// the gain in E[min{g(S), B - y}] per unit cost. Candidates with
// non-positive gain are skipped; the loop ends when none has positive gain
// or when the chosen candidate would push the set's cost beyond x.
// Requires x >= 0 and 0 <= y <= budget.
NodeSet greedy(const Evaluator& eval, double x, double y);

// Single node affordable at spend x maximizing E[min{g({v}), B - y}];
// nullopt when no node is affordable. Ties go to the first node in order.
std::optional<NodeId> best_singleton(const Evaluator& eval, double x, double y);

// Selector for a known optimal spend c_star in [0, budget]: the best of
// greedy(c_star, c_star), the best singleton at c_star, and the empty set,
// by expected revenue.
SelectionResult select_known_cost(const Evaluator& eval, double c_star);

// Two-phase selector with no knowledge of the optimum: phase 1 runs the
// greedy at half budget with nothing reserved; phase 2 re-runs it at x =
// y = cost(e) for every node priced in (budget/2, budget]. Best candidate
// (including the empty set) by expected revenue wins.
SelectionResult select(const Evaluator& eval);

// Selector for deterministic instances (every rho 0 or 1, a single possible
// propagation): numbers users by non-decreasing cost and, for each prefix of
// that order, runs an unbudgeted benefit-cost greedy on the engagement count,
// keeping every intermediate set as a candidate alongside the best single
// node and the empty set. Throws std::invalid_argument on stochastic input.
SelectionResult select_deterministic(const Instance& inst);

// The intermediate greedy sets select_deterministic scores, grouped by
// prefix length (chains[i] holds the nested sets for the first i+1 users).
// Exposed so the nesting structure itself can be validated.
std::vector<std::vector<NodeSet>> deterministic_candidate_chains(
    const Instance& inst);

}  // namespace revmax
