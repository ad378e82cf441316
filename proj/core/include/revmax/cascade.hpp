// Propagation model: each edge of an instance is independently Live (the
// influence fires) or Blocked. A Realization fixes every edge; engagement
// then spreads from a seed set along Live edges only. A PartialRealization
// is what an advertiser has actually observed: the seeds committed so far
// plus the labels of every edge leaving an engaged user.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "revmax/instance.hpp"
#include "revmax/rng.hpp"
#include "revmax/types.hpp"

namespace revmax {

// Full Live/Blocked labeling of all edges, stored as a bit per edge in the
// instance's canonical edge order (bit set = Live).
class Realization {
 public:
  Realization() = default;
  explicit Realization(std::size_t num_edges)
      : num_edges_(num_edges), words_((num_edges + 63) / 64, 0) {}

  std::size_t num_edges() const { return num_edges_; }
  bool live(EdgeId e) const {
    return (words_[e >> 6] >> (e & 63)) & 1u;
  }
  void set_live(EdgeId e, bool value) {
    if (value)
      words_[e >> 6] |= std::uint64_t(1) << (e & 63);
    else
      words_[e >> 6] &= ~(std::uint64_t(1) << (e & 63));
  }
  // All labels packed into one word; valid when the instance has <= 64 edges.
  std::uint64_t mask() const { return words_.empty() ? 0 : words_[0]; }

  bool operator==(const Realization&) const = default;

 private:
  std::size_t num_edges_ = 0;
  std::vector<std::uint64_t> words_;
};

// Draws each edge Live independently with its probability rho, consuming one
// uniform draw per edge in canonical edge order.
Realization sample_realization(const Instance& inst, Rng& rng);

// Number of engaged users when `seeds` are seeded under `phi`: the seeds
// plus everyone reachable from them through Live edges. Empty seeds -> 0.
// Throws std::invalid_argument on an out-of-range seed id.
std::size_t engagements(const Instance& inst, std::span<const NodeId> seeds,
                        const Realization& phi);

// Engaged users as a bitmask (instance must have <= 64 nodes).
NodeMask engaged_mask(const Instance& inst, std::span<const NodeId> seeds,
                      const Realization& phi);

// Per-node reachability closure under phi: result[v] = bitmask of users
// engaged by seeding {v} (instance must have <= 64 nodes).
std::vector<NodeMask> reach_masks(const Instance& inst, const Realization& phi);

// Seeds committed so far plus every edge label those seeds have revealed.
// Unmentioned edges are unobserved. Valid observations are "closed": the
// observed edges are exactly the out-edges of engaged users.
class PartialRealization {
 public:
  PartialRealization() = default;
  explicit PartialRealization(std::size_t num_edges)
      : observed_(num_edges), live_(num_edges) {}

  const NodeSet& dom() const { return dom_; }
  std::size_t num_edges() const { return observed_.num_edges(); }
  bool observed(EdgeId e) const { return observed_.live(e); }
  // Label of an observed edge; meaningless unless observed(e).
  bool live(EdgeId e) const { return live_.live(e); }
  std::size_t observed_count() const;

  bool operator==(const PartialRealization&) const = default;

  // Building blocks for observe(); not meant for ad-hoc mutation.
  void set_dom(NodeSet dom) { dom_ = std::move(dom); }
  void record(EdgeId e, bool is_live) {
    observed_.set_live(e, true);
    live_.set_live(e, is_live);
  }

  std::uint64_t observed_mask() const { return observed_.mask(); }
  std::uint64_t live_mask() const { return live_.mask(); }

 private:
  NodeSet dom_;
  Realization observed_;  // bit set = label known
  Realization live_;      // label value where observed
};

// What seeding `seeds` under `phi` reveals: dom = seeds, and the labels of
// every out-edge of every engaged user.
PartialRealization observe(const Instance& inst, std::span<const NodeId> seeds,
                           const Realization& phi);

// True iff phi is consistent with psi: re-observing psi's domain under phi
// reproduces psi exactly (same revealed edges, same labels).
bool is_consistent(const Instance& inst, const Realization& phi,
                   const PartialRealization& psi);

// True iff psi satisfies the closure property of a genuine observation:
// following psi's Live edges from its domain engages a user set whose
// out-edges are exactly the observed edges.
bool closure_holds(const Instance& inst, const PartialRealization& psi);

// Draws a full realization from the conditional distribution given psi:
// observed edges keep their labels, unobserved edges are drawn independently
// with their rho (one uniform draw each, canonical edge order). Throws
// std::invalid_argument if psi is not closed.
Realization conditional_sample(const Instance& inst,
                               const PartialRealization& psi, Rng& rng);

// True iff psi is a subobservation of psi_prime: psi's domain is contained
// in psi_prime's and every edge psi has observed carries the same label in
// psi_prime.
bool is_subrealization(const PartialRealization& psi,
                       const PartialRealization& psi_prime);

}  // namespace revmax
