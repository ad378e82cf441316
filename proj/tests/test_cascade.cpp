#include <doctest.h>

#include <bit>

#include "helpers.hpp"
#include "revmax/cascade.hpp"
#include "revmax/oracle.hpp"
#include "revmax/rng.hpp"

using namespace revmax;

namespace {

// The chain3 fixture has edges (a,b) = id 0 and (b,c) = id 1.
Realization chain_phi(bool second_live) {
  Realization phi(2);
  phi.set_live(0, true);
  phi.set_live(1, second_live);
  return phi;
}

}  // namespace

TEST_CASE("engagement spreads along live edges only") {
  Instance inst = testing::chain3();
  NodeId a = testing::id_of(inst, "a");
  NodeId c = testing::id_of(inst, "c");

  CHECK(engagements(inst, NodeSet{a}, chain_phi(true)) == 3);
  CHECK(engagements(inst, NodeSet{a}, chain_phi(false)) == 2);
  CHECK(engagements(inst, NodeSet{c}, chain_phi(true)) == 1);
  CHECK(engagements(inst, NodeSet{}, chain_phi(true)) == 0);
  CHECK(engagements(inst, NodeSet{a, c}, chain_phi(false)) == 3);
  CHECK_THROWS_AS(engagements(inst, NodeSet{NodeId(9)}, chain_phi(true)),
                  std::invalid_argument);

  CHECK(engaged_mask(inst, NodeSet{a}, chain_phi(false)) == 0b011);
}

TEST_CASE("per-node reach masks agree with engagement counts") {
  Instance inst = generate_random_instance(10, 30, 0, 1, 1, 1, 5, 1, 11);
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    Realization phi = sample_realization(inst, rng);
    std::vector<NodeMask> reach = reach_masks(inst, phi);
    NodeMask all = 0;
    for (NodeId v = 0; v < inst.num_nodes(); ++v) {
      CHECK(std::popcount(reach[v]) == engagements(inst, NodeSet{v}, phi));
      CHECK(((reach[v] >> v) & 1) == 1);  // a seed engages itself
      all |= reach[v];
    }
    NodeSet everyone;
    for (NodeId v = 0; v < inst.num_nodes(); ++v) everyone.push_back(v);
    CHECK(all == engaged_mask(inst, everyone, phi));
  }
}

TEST_CASE("sampling respects edge probabilities") {
  Instance inst = testing::chain3();
  Rng rng(17);
  int second_live = 0;
  const int trials = 10000;
  for (int i = 0; i < trials; ++i) {
    Realization phi = sample_realization(inst, rng);
    CHECK(phi.live(0));  // rho = 1 edges always fire
    second_live += phi.live(1);
  }
  CHECK(second_live > trials * 0.45);
  CHECK(second_live < trials * 0.55);
}

TEST_CASE("observation reveals exactly the out-edges of engaged users") {
  Instance inst = testing::chain3();
  NodeId a = testing::id_of(inst, "a");
  NodeId c = testing::id_of(inst, "c");

  PartialRealization psi = observe(inst, NodeSet{a}, chain_phi(false));
  CHECK(psi.dom() == NodeSet{a});
  CHECK(psi.observed(0));
  CHECK(psi.live(0));
  CHECK(psi.observed(1));       // b engaged, so its out-edge is revealed
  CHECK_FALSE(psi.live(1));
  CHECK(psi.observed_count() == 2);

  // c has no out-edges, so seeding it reveals nothing.
  PartialRealization psi_c = observe(inst, NodeSet{c}, chain_phi(true));
  CHECK(psi_c.dom() == NodeSet{c});
  CHECK(psi_c.observed_count() == 0);
}

TEST_CASE("consistency and closure") {
  Instance inst = testing::chain3();
  NodeId a = testing::id_of(inst, "a");
  Realization blocked = chain_phi(false), live = chain_phi(true);
  PartialRealization psi = observe(inst, NodeSet{a}, blocked);

  CHECK(is_consistent(inst, blocked, psi));
  CHECK_FALSE(is_consistent(inst, live, psi));  // label of (b,c) differs
  CHECK(closure_holds(inst, psi));

  // Tampering breaks closure: claim (b,c) is unobserved although b engaged.
  PartialRealization tampered(inst.num_edges());
  tampered.set_dom(NodeSet{a});
  tampered.record(0, true);
  CHECK_FALSE(closure_holds(inst, tampered));

  // ...or mark an edge whose source never engaged.
  PartialRealization stray(inst.num_edges());
  stray.set_dom(NodeSet{testing::id_of(inst, "c")});
  stray.record(1, false);
  CHECK_FALSE(closure_holds(inst, stray));

  // The empty observation is trivially closed.
  PartialRealization empty(inst.num_edges());
  CHECK(closure_holds(inst, empty));
  CHECK(is_consistent(inst, live, empty));
}

TEST_CASE("conditional sampling keeps observed labels and redraws the rest") {
  Instance inst = testing::chain3();
  NodeId c = testing::id_of(inst, "c");
  // Seeding c reveals nothing, so edge (b,c) stays random.
  PartialRealization psi = observe(inst, NodeSet{c}, chain_phi(false));

  Rng rng(23);
  int live1 = 0;
  const int trials = 10000;
  for (int i = 0; i < trials; ++i) {
    Realization phi = conditional_sample(inst, psi, rng);
    CHECK(phi.live(0));
    live1 += phi.live(1);
  }
  CHECK(live1 > trials * 0.45);
  CHECK(live1 < trials * 0.55);

  // Observed labels are pinned.
  NodeId a = testing::id_of(inst, "a");
  PartialRealization pinned = observe(inst, NodeSet{a}, chain_phi(false));
  for (int i = 0; i < 50; ++i) {
    Realization phi = conditional_sample(inst, pinned, rng);
    CHECK(phi == chain_phi(false));  // both edges were revealed
  }

  PartialRealization broken(inst.num_edges());
  broken.set_dom(NodeSet{a});  // a engaged but its out-edge unobserved
  CHECK_THROWS_AS(conditional_sample(inst, broken, rng),
                  std::invalid_argument);
}

TEST_CASE("subrealization orders observations by information") {
  Instance inst = testing::chain3();
  NodeId a = testing::id_of(inst, "a");
  NodeId c = testing::id_of(inst, "c");
  Realization phi = chain_phi(false);

  PartialRealization small = observe(inst, NodeSet{c}, phi);
  PartialRealization big = observe(inst, NodeSet{a, c}, phi);
  CHECK(is_subrealization(small, big));
  CHECK_FALSE(is_subrealization(big, small));
  CHECK(is_subrealization(big, big));

  // Same domain, conflicting label: not comparable.
  PartialRealization other = observe(inst, NodeSet{a, c}, chain_phi(true));
  CHECK_FALSE(is_subrealization(big, other));
}
