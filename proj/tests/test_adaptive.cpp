#include <doctest.h>

#include <cmath>
#include <set>

#include "helpers.hpp"
#include "revmax/adaptive.hpp"
#include "revmax/oracle.hpp"

using namespace revmax;

namespace {

Realization chain_phi(bool second_live) {
  Realization phi(2);
  phi.set_live(0, true);
  phi.set_live(1, second_live);
  return phi;
}

}  // namespace

TEST_CASE("parameter derivation") {
  AdaptiveParams p = compute_params(testing::chain3(), 250);
  CHECK(p.C == 2.0);  // all nodes cheap: C = budget / 2
  CHECK(p.alpha == 0.5);
  CHECK_FALSE(p.bound_vacuous);
  CHECK(p.mode == EvalMode::exact);
  CHECK(p.marginal_samples == 250);

  // One node at three quarters of the budget raises C and shrinks alpha.
  AdaptiveParams lux =
      compute_params(parse_instance("ic 1 0 4 1\nnode big 3\n"), 0);
  CHECK(lux.C == 3.0);
  CHECK(lux.alpha == 0.25);
  CHECK_FALSE(lux.bound_vacuous);

  // A node at the full budget voids the guarantee.
  AdaptiveParams broke =
      compute_params(parse_instance("ic 1 0 2 1\nnode a 2\n"), 0);
  CHECK(broke.C == 2.0);
  CHECK(broke.alpha == 0.0);
  CHECK(broke.bound_vacuous);

  // Too many uncertain edges force Monte-Carlo evaluation.
  Instance big = generate_random_instance(16, 20, 0.3, 0.7, 1, 2, 8, 1, 5);
  CHECK(compute_params(big, 100).mode == EvalMode::monte_carlo);
}

TEST_CASE("adaptive greedy reacts to what it observes") {
  Instance chain = testing::chain3();
  NodeId a = testing::id_of(chain, "a");
  NodeId c = testing::id_of(chain, "c");
  AdaptiveParams params = compute_params(chain, 0);

  // Cascade stops at b: the greedy tops up with the unreached c.
  PolicyTrace blocked = run_pi1(chain, chain_phi(false), params, 1);
  CHECK(blocked.final_seeds == NodeSet{a, c});
  CHECK(blocked.realized_revenue == 2.0);  // min{3, 4 - 2}
  REQUIRE(blocked.steps.size() == 2);
  CHECK(blocked.steps[0].node == a);
  CHECK(blocked.steps[0].revealed.size() == 2);  // both edges surfaced
  CHECK(blocked.steps[1].node == c);
  CHECK(blocked.steps[1].revealed.empty());

  // Cascade covers everyone: no second seed is worth paying for.
  PolicyTrace live = run_pi1(chain, chain_phi(true), params, 1);
  CHECK(live.final_seeds == NodeSet{a});
  CHECK(live.realized_revenue == 3.0);  // min{3, 4 - 1}

  // The spend cap binds before the budget does.
  Instance flat = parse_instance("ic 2 0 2 1\nnode a 1\nnode b 1\n");
  AdaptiveParams flat_params = compute_params(flat, 0);
  CHECK(flat_params.C == 1.0);
  Realization nothing(0);
  PolicyTrace capped = run_pi1(flat, nothing, flat_params, 1);
  CHECK(capped.final_seeds.size() == 1);
}

TEST_CASE("single-shot policy commits the best affordable seed") {
  Instance chain = testing::chain3();
  ExactEvaluator eval(chain);
  PolicyTrace t = run_pi2(chain, eval, chain_phi(true));
  CHECK(t.policy == "pi2");
  CHECK(t.final_seeds == NodeSet{testing::id_of(chain, "a")});
  CHECK(t.realized_revenue == 3.0);
  CHECK(run_pi2(chain, eval, chain_phi(false)).realized_revenue == 2.0);

  // Nothing affordable: the policy sits out.
  Instance rich = parse_instance("ic 1 0 2 1\nnode a 5\n");
  ExactEvaluator rich_eval(rich);
  PolicyTrace idle = run_pi2(rich, rich_eval, Realization(0));
  CHECK(idle.final_seeds.empty());
  CHECK(idle.steps.empty());
  CHECK(idle.realized_revenue == 0.0);
}

TEST_CASE("the mixed policy tosses a reproducible fair coin") {
  Instance chain = testing::chain3();
  ExactEvaluator eval(chain);
  AdaptiveParams params = compute_params(chain, 0);

  int heads = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    PolicyTrace t = run_pis(chain, eval, chain_phi(true), params, seed);
    PolicyTrace u = run_pis(chain, eval, chain_phi(true), params, seed);
    CHECK(t == u);  // same episode seed, same branch, same trace
    REQUIRE((t.policy == "pi1" || t.policy == "pi2"));
    heads += t.policy == "pi1";
  }
  CHECK(heads > 20);
  CHECK(heads < 80);
}

TEST_CASE("traces satisfy the accounting invariants") {
  Instance inst = generate_random_instance(12, 25, 0.2, 0.8, 0.5, 2.5, 5, 1, 71);
  AdaptiveParams params = compute_params(inst, 64);
  REQUIRE(params.mode == EvalMode::monte_carlo);

  Rng hidden_rng(9);
  for (std::uint64_t episode = 0; episode < 20; ++episode) {
    Realization hidden = sample_realization(inst, hidden_rng);
    PolicyTrace t = run_pi1(inst, hidden, params, episode);

    double spend = inst.total_cost(t.final_seeds);
    CHECK(spend <= std::min(params.C, inst.budget()) + 1e-12);
    double g = double(engagements(inst, t.final_seeds, hidden));
    CHECK(t.realized_revenue == std::min(g, inst.budget() - spend));

    std::set<NodeId> picked;
    std::set<EdgeId> seen;
    for (const PolicyStep& step : t.steps) {
      CHECK(picked.insert(step.node).second);  // no node committed twice
      CHECK(contains(t.final_seeds, step.node));
      for (auto [e, live] : step.revealed) {
        CHECK(seen.insert(e).second);  // each edge revealed at most once
        CHECK(live == hidden.live(e));
      }
    }
    CHECK(picked.size() == t.final_seeds.size());
  }
}

TEST_CASE("exact policy values on the chain") {
  Instance chain = testing::chain3();
  AdaptiveParams params = compute_params(chain, 0);

  PolicyValue g1 = exact_policy_value(chain, Policy::pi1, params);
  CHECK(g1.f_avg == 2.5);
  CHECK(g1.h_avg0 == 3.0);

  PolicyValue g2 = exact_policy_value(chain, Policy::pi2, params);
  CHECK(g2.f_avg == 2.5);
  CHECK(g2.h_avg0 == 2.5);

  PolicyValue mix = exact_policy_value(chain, Policy::pis, params);
  CHECK(mix.f_avg == 2.5);  // exact average of the two branches
  CHECK(mix.h_avg0 == 2.75);

  // The guarantee holds with room to spare here.
  double constant = params.alpha *
                    (1 - std::exp(-params.C / chain.budget())) / 2;
  CHECK(mix.f_avg >= constant * optimal_adaptive(chain) - 1e-9);
}

TEST_CASE("monte-carlo policy evaluation is deterministic and converges") {
  Instance chain = testing::chain3();
  AdaptiveParams params = compute_params(chain, 0);

  double a = evaluate_policy(chain, Policy::pis, 4000, 11, params);
  double b = evaluate_policy(chain, Policy::pis, 4000, 11, params);
  double c = evaluate_policy(chain, Policy::pis, 4000, 12, params);
  CHECK(a == b);
  CHECK_FALSE(a == c);
  CHECK(a == doctest::Approx(2.5).epsilon(0.05));

  // Same result pathway with sampled marginals instead of exact ones.
  AdaptiveParams mc = params;
  mc.mode = EvalMode::monte_carlo;
  mc.marginal_samples = 200;
  double d = evaluate_policy(chain, Policy::pi1, 2000, 11, mc);
  CHECK(d == doctest::Approx(2.5).epsilon(0.08));
}
