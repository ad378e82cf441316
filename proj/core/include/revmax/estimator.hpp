// Monte-Carlo estimation of the objective. A SamplePool holds M realizations
// drawn once from a seed; every candidate set is scored against the same
// pool (common random numbers), so comparisons between sets are low-variance
// and re-running with the same seed is bit-identical.
//
// All estimates work on the normalized objective (revenue measured in
// engagements): the expected number of engaged users truncated at the budget
// left after paying the seeds. The cpe factor is applied only at the
// reporting layer.
#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "revmax/cascade.hpp"
#include "revmax/instance.hpp"
#include "revmax/types.hpp"

namespace revmax {

struct SamplePool {
  Instance instance;
  std::uint64_t seed = 0;
  std::vector<Realization> realizations;
};

// Draws M realizations sequentially from Rng(seed). A pure function of
// (instance, M, seed). Throws std::invalid_argument if M == 0.
SamplePool build_pool(const Instance& inst, std::size_t num_samples,
                      std::uint64_t seed);

// Pool average of min{engagements(S), B - z}; the value the greedy
// maximizes when z is the spend reserved for the seeds.
// Requires 0 <= z <= B.
double estimate_l(const SamplePool& pool, std::span<const NodeId> seeds,
                  double z);

// Pool average of min{engagements(S), B - cost(S)}: expected revenue of
// committing to S. Negative iff cost(S) > B (then it equals B - cost(S)).
// Equals estimate_l(pool, S, cost(S)) whenever cost(S) <= B.
double estimate_f_exp(const SamplePool& pool, std::span<const NodeId> seeds);

// Pool average of engagements(S) with no truncation.
double estimate_g_exp(const SamplePool& pool, std::span<const NodeId> seeds);

// Monte-Carlo estimate of the one-step gain of adding `e` given observation
// psi: the mean over `num_samples` conditional draws of
//   min{g(dom+e), B-z} - min{g(dom), B-z}.
// Requires e not already in dom(psi) and 0 <= z <= B.
double conditional_marginal(const Instance& inst, const PartialRealization& psi,
                            NodeId e, double z, std::size_t num_samples,
                            Rng& rng);

// Common scoring interface for the selection algorithms; backed either by a
// sample pool (this header) or by exact enumeration (oracle.hpp). The backing
// object must outlive the evaluator.
class Evaluator {
 public:
  virtual ~Evaluator() = default;
  virtual const Instance& instance() const = 0;
  // E[min{engagements(S), B - z}] under this evaluator's measure.
  virtual double expected_truncated(std::span<const NodeId> seeds,
                                    double z) const = 0;
  // E[engagements(S)], untruncated.
  virtual double expected_engagements(std::span<const NodeId> seeds) const = 0;
  // E[min{engagements(S), B - cost(S)}]; equals B - cost(S) when over budget.
  double expected_revenue(std::span<const NodeId> seeds) const;
};

class PoolEvaluator final : public Evaluator {
 public:
  explicit PoolEvaluator(const SamplePool& pool);
  const Instance& instance() const override { return pool_->instance; }
  double expected_truncated(std::span<const NodeId> seeds,
                            double z) const override;
  double expected_engagements(std::span<const NodeId> seeds) const override;

 private:
  const SamplePool* pool_;
  // Per-realization per-node reachability, usable when the instance has at
  // most 64 nodes; empty otherwise (falls back to BFS per query).
  std::vector<std::vector<NodeMask>> reach_;
};

}  // namespace revmax
