// Adaptive seeding: commit one node at a time, watch which of its influence
// edges fire, and let the next pick depend on everything observed so far.
// pi1 is an adaptive benefit-cost greedy capped at a spend C derived from
// the instance; pi2 commits the single best node; pis flips a fair coin
// between them, which is the combination carrying the approximation bound.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "revmax/cascade.hpp"
#include "revmax/estimator.hpp"
#include "revmax/instance.hpp"
#include "revmax/types.hpp"

namespace revmax {

enum class EvalMode { exact, monte_carlo };

struct AdaptiveParams {
  double C = 0;      // greedy spend cap: max(most expensive node, budget/2)
  double alpha = 0;  // mixing-bound coefficient min(1/2, 1 - C/budget), >= 0
  bool bound_vacuous = false;  // true iff C >= budget (alpha clamped to 0)
  std::size_t marginal_samples = 0;  // per-query draws in monte_carlo mode
  EvalMode mode = EvalMode::monte_carlo;
};

// Derives C and alpha from the instance; mode is exact iff full enumeration
// is affordable. The guarantee degrades as C grows and is flagged vacuous
// once C reaches the budget (some node costs >= budget).
AdaptiveParams compute_params(const Instance& inst,
                              std::size_t marginal_samples);

struct PolicyStep {
  NodeId node;
  // Labels revealed by this commitment, in canonical edge order.
  std::vector<std::pair<EdgeId, bool>> revealed;

  bool operator==(const PolicyStep&) const = default;
};

struct PolicyTrace {
  std::string policy;  // "pi1", "pi2", or for the mix the branch taken
  std::vector<PolicyStep> steps;
  NodeSet final_seeds;
  double realized_revenue = 0;
  std::uint64_t episode_seed = 0;

  bool operator==(const PolicyTrace&) const = default;
};

// Adaptive benefit-cost greedy: repeatedly estimates each uncommitted node's
// expected gain given the current observation (exactly in exact mode, else
// with marginal_samples conditional draws seeded from (episode_seed, step,
// node)), picks the best gain-per-cost, and stops at the first pick that
// would push the spend beyond min(C, budget), or when no gain is positive.
PolicyTrace run_pi1(const Instance& inst, const Realization& hidden,
                    const AdaptiveParams& params, std::uint64_t episode_seed);

// Commits the single affordable node with the best expected revenue under
// `eval`; empty trace when nothing is affordable.
PolicyTrace run_pi2(const Instance& inst, const Evaluator& eval,
                    const Realization& hidden);

// Fair coin from the episode seed, then delegates to pi1 or pi2.
PolicyTrace run_pis(const Instance& inst, const Evaluator& eval,
                    const Realization& hidden, const AdaptiveParams& params,
                    std::uint64_t episode_seed);

enum class Policy { pi1, pi2, pis };

// Mean realized revenue over `episodes` independent hidden realizations,
// with per-episode seeds derived from base_seed. pi2's (and pis's) singleton
// is chosen once against a pool also derived from base_seed.
double evaluate_policy(const Instance& inst, Policy policy,
                       std::size_t episodes, std::uint64_t base_seed,
                       const AdaptiveParams& params);

struct PolicyValue {
  double f_avg = 0;   // expected revenue: E[min{g, B - cost(seeds)}]
  double h_avg0 = 0;  // expected truncated engagements: E[min{g, B}]
};

// Exact policy value by enumerating every hidden realization (policies run
// with exact gains). For pis this is the exact average of the two branches.
// Requires enumeration feasibility.
PolicyValue exact_policy_value(const Instance& inst, Policy policy,
                               const AdaptiveParams& params);

}  // namespace revmax
