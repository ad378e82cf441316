#include "revmax/adaptive.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <stdexcept>

#include "revmax/oracle.hpp"
#include "revmax/rng.hpp"

namespace revmax {

namespace {

// Seed-stream salts so the different derived streams cannot collide.
constexpr std::uint64_t kSaltMarginal = 0x6d61726769ull;
constexpr std::uint64_t kSaltHidden = 0x68696464ull;
constexpr std::uint64_t kSaltEpisode = 0x65706973ull;
constexpr std::uint64_t kSaltPool = 0x706f6f6cull;
constexpr std::uint64_t kSaltCoin = 0x636f696eull;

double realized_revenue(const Instance& inst, std::span<const NodeId> seeds,
                        const Realization& hidden) {
  return std::min(double(engagements(inst, seeds, hidden)),
                  inst.budget() - inst.total_cost(seeds));
}

// Labels present in `now` but not in `before`, canonical edge order.
std::vector<std::pair<EdgeId, bool>> newly_revealed(
    const PartialRealization& before, const PartialRealization& now) {
  std::vector<std::pair<EdgeId, bool>> out;
  for (EdgeId e = 0; e < now.num_edges(); ++e)
    if (now.observed(e) && !before.observed(e))
      out.emplace_back(e, now.live(e));
  return out;
}

}  // namespace

AdaptiveParams compute_params(const Instance& inst,
                              std::size_t marginal_samples) {
  AdaptiveParams params;
  params.C = std::max(inst.max_cost(), inst.budget() / 2);
  double alpha = std::min(0.5, 1.0 - params.C / inst.budget());
  params.bound_vacuous = alpha <= 0;
  params.alpha = std::max(0.0, alpha);
  params.marginal_samples = marginal_samples;
  params.mode =
      enumeration_feasible(inst) ? EvalMode::exact : EvalMode::monte_carlo;
  return params;
}

PolicyTrace run_pi1(const Instance& inst, const Realization& hidden,
                    const AdaptiveParams& params, std::uint64_t episode_seed) {
  if (params.mode == EvalMode::monte_carlo && params.marginal_samples == 0)
    throw std::invalid_argument("monte_carlo mode needs marginal_samples > 0");
  // The cap is C by construction; never let it exceed the budget itself
  // (possible only when some single node already costs more than B, where
  // the guarantee is vacuous anyway).
  const double cap = std::min(params.C, inst.budget());

  PolicyTrace trace;
  trace.policy = "pi1";
  trace.episode_seed = episode_seed;
  PartialRealization psi = observe(inst, trace.final_seeds, hidden);

  for (std::size_t step = 0;; ++step) {
    bool have = false;
    NodeId best_node = 0;
    double best_ratio = 0;
    for (NodeId e = 0; e < inst.num_nodes(); ++e) {
      if (contains(trace.final_seeds, e)) continue;
      double gain;
      if (params.mode == EvalMode::exact) {
        gain = exact_conditional_marginal(inst, psi, e, 0.0);
      } else {
        Rng rng(seed_mix(seed_mix(episode_seed, kSaltMarginal), step, e));
        gain = conditional_marginal(inst, psi, e, 0.0,
                                    params.marginal_samples, rng);
      }
      if (gain <= 0) continue;
      double ratio = gain / inst.cost(e);
      if (!have || ratio > best_ratio) {
        have = true;
        best_node = e;
        best_ratio = ratio;
      }
    }
    if (!have) break;  // nothing left with positive expected gain
    NodeSet extended = with_node(trace.final_seeds, best_node);
    if (inst.total_cost(extended) > cap) break;  // first violation ends it
    PartialRealization next = observe(inst, extended, hidden);
    trace.steps.push_back(PolicyStep{best_node, newly_revealed(psi, next)});
    trace.final_seeds = std::move(extended);
    psi = std::move(next);
  }
  trace.realized_revenue = realized_revenue(inst, trace.final_seeds, hidden);
  return trace;
}

PolicyTrace run_pi2(const Instance& inst, const Evaluator& eval,
                    const Realization& hidden) {
  PolicyTrace trace;
  trace.policy = "pi2";
  std::optional<NodeId> best;
  double best_value = 0;
  for (NodeId v = 0; v < inst.num_nodes(); ++v) {
    if (inst.cost(v) > inst.budget()) continue;  // never feasible
    NodeId single[1] = {v};
    double value = eval.expected_revenue(single);
    if (!best || value > best_value) {
      best = v;
      best_value = value;
    }
  }
  if (best) {
    trace.final_seeds = NodeSet{*best};
    PartialRealization empty(inst.num_edges());
    trace.steps.push_back(PolicyStep{
        *best, newly_revealed(empty, observe(inst, trace.final_seeds, hidden))});
  }
  trace.realized_revenue = realized_revenue(inst, trace.final_seeds, hidden);
  return trace;
}

PolicyTrace run_pis(const Instance& inst, const Evaluator& eval,
                    const Realization& hidden, const AdaptiveParams& params,
                    std::uint64_t episode_seed) {
  bool take_pi1 = seed_mix(episode_seed, kSaltCoin) & 1u;
  PolicyTrace trace = take_pi1 ? run_pi1(inst, hidden, params, episode_seed)
                               : run_pi2(inst, eval, hidden);
  trace.episode_seed = episode_seed;
  return trace;
}

double evaluate_policy(const Instance& inst, Policy policy,
                       std::size_t episodes, std::uint64_t base_seed,
                       const AdaptiveParams& params) {
  if (episodes == 0)
    throw std::invalid_argument("need at least one episode");

  // pi2 (and the pi2 branch of pis) scores singletons once, against an
  // evaluator shared by all episodes.
  std::unique_ptr<Evaluator> eval;
  std::optional<SamplePool> pool;
  if (params.mode == EvalMode::exact) {
    eval = std::make_unique<ExactEvaluator>(inst);
  } else {
    pool = build_pool(inst, std::max<std::size_t>(params.marginal_samples, 1),
                      seed_mix(base_seed, kSaltPool));
    eval = std::make_unique<PoolEvaluator>(*pool);
  }

  double acc = 0;
  for (std::size_t i = 0; i < episodes; ++i) {
    Rng hidden_rng(seed_mix(seed_mix(base_seed, kSaltHidden), i));
    Realization hidden = sample_realization(inst, hidden_rng);
    std::uint64_t episode_seed = seed_mix(seed_mix(base_seed, kSaltEpisode), i);
    PolicyTrace trace;
    switch (policy) {
      case Policy::pi1:
        trace = run_pi1(inst, hidden, params, episode_seed);
        break;
      case Policy::pi2:
        trace = run_pi2(inst, *eval, hidden);
        break;
      case Policy::pis:
        trace = run_pis(inst, *eval, hidden, params, episode_seed);
        break;
    }
    acc += trace.realized_revenue;
  }
  return acc / double(episodes);
}

PolicyValue exact_policy_value(const Instance& inst, Policy policy,
                               const AdaptiveParams& params) {
  if (policy == Policy::pis) {
    // The mix plays each branch with probability 1/2, so its value is the
    // exact average of the branch values.
    PolicyValue a = exact_policy_value(inst, Policy::pi1, params);
    PolicyValue b = exact_policy_value(inst, Policy::pi2, params);
    return PolicyValue{(a.f_avg + b.f_avg) / 2, (a.h_avg0 + b.h_avg0) / 2};
  }

  ExactEvaluator eval(inst);
  AdaptiveParams exact_params = params;
  exact_params.mode = EvalMode::exact;

  PolicyValue out;
  for (const auto& [hidden, p] : eval.distribution().entries) {
    PolicyTrace trace = policy == Policy::pi1
                            ? run_pi1(inst, hidden, exact_params, 0)
                            : run_pi2(inst, eval, hidden);
    out.f_avg += p * trace.realized_revenue;
    out.h_avg0 += p * std::min(double(engagements(inst, trace.final_seeds, hidden)),
                               inst.budget());
  }
  return out;
}

}  // namespace revmax
