#include "revmax/estimator.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "revmax/rng.hpp"

namespace revmax {

namespace {

void require_z_in_budget(const Instance& inst, double z) {
  if (!(z >= 0.0 && z <= inst.budget()))
    throw std::invalid_argument("reserved spend z must lie in [0, budget]");
}

}  // namespace

SamplePool build_pool(const Instance& inst, std::size_t num_samples,
                      std::uint64_t seed) {
  if (num_samples == 0)
    throw std::invalid_argument("sample pool needs at least one realization");
  SamplePool pool{inst, seed, {}};
  pool.realizations.reserve(num_samples);
  Rng rng(splitmix64(seed));
  for (std::size_t i = 0; i < num_samples; ++i)
    pool.realizations.push_back(sample_realization(inst, rng));
  return pool;
}

double estimate_l(const SamplePool& pool, std::span<const NodeId> seeds,
                  double z) {
  require_z_in_budget(pool.instance, z);
  const double cap = pool.instance.budget() - z;
  double acc = 0;
  for (const Realization& phi : pool.realizations)
    acc += std::min(double(engagements(pool.instance, seeds, phi)), cap);
  return acc / double(pool.realizations.size());
}

double estimate_f_exp(const SamplePool& pool, std::span<const NodeId> seeds) {
  const double cap = pool.instance.budget() - pool.instance.total_cost(seeds);
  double acc = 0;
  for (const Realization& phi : pool.realizations)
    acc += std::min(double(engagements(pool.instance, seeds, phi)), cap);
  return acc / double(pool.realizations.size());
}

double estimate_g_exp(const SamplePool& pool, std::span<const NodeId> seeds) {
  double acc = 0;
  for (const Realization& phi : pool.realizations)
    acc += double(engagements(pool.instance, seeds, phi));
  return acc / double(pool.realizations.size());
}

double conditional_marginal(const Instance& inst, const PartialRealization& psi,
                            NodeId e, double z, std::size_t num_samples,
                            Rng& rng) {
  require_z_in_budget(inst, z);
  if (num_samples == 0)
    throw std::invalid_argument("need at least one conditional sample");
  if (e >= inst.num_nodes())
    throw std::invalid_argument("candidate id out of range");
  if (contains(psi.dom(), e))
    throw std::invalid_argument("candidate already committed in observation");
  const double cap = inst.budget() - z;
  const NodeSet with = with_node(psi.dom(), e);
  double acc = 0;
  for (std::size_t i = 0; i < num_samples; ++i) {
    Realization phi = conditional_sample(inst, psi, rng);
    double before = std::min(double(engagements(inst, psi.dom(), phi)), cap);
    double after = std::min(double(engagements(inst, with, phi)), cap);
    acc += after - before;
  }
  return acc / double(num_samples);
}

double Evaluator::expected_revenue(std::span<const NodeId> seeds) const {
  const Instance& inst = instance();
  double spent = inst.total_cost(seeds);
  if (spent > inst.budget()) return inst.budget() - spent;  // over budget
  return expected_truncated(seeds, spent);
}

PoolEvaluator::PoolEvaluator(const SamplePool& pool) : pool_(&pool) {
  if (pool.instance.num_nodes() <= 64) {
    reach_.reserve(pool.realizations.size());
    for (const Realization& phi : pool.realizations)
      reach_.push_back(reach_masks(pool.instance, phi));
  }
}

double PoolEvaluator::expected_truncated(std::span<const NodeId> seeds,
                                         double z) const {
  require_z_in_budget(pool_->instance, z);
  const double cap = pool_->instance.budget() - z;
  double acc = 0;
  if (!reach_.empty()) {
    for (const std::vector<NodeMask>& reach : reach_) {
      NodeMask engaged = 0;
      for (NodeId v : seeds) engaged |= reach[v];
      acc += std::min(double(std::popcount(engaged)), cap);
    }
  } else {
    for (const Realization& phi : pool_->realizations)
      acc += std::min(double(engagements(pool_->instance, seeds, phi)), cap);
  }
  return acc / double(pool_->realizations.size());
}

double PoolEvaluator::expected_engagements(
    std::span<const NodeId> seeds) const {
  double acc = 0;
  if (!reach_.empty()) {
    for (const std::vector<NodeMask>& reach : reach_) {
      NodeMask engaged = 0;
      for (NodeId v : seeds) engaged |= reach[v];
      acc += double(std::popcount(engaged));
    }
  } else {
    for (const Realization& phi : pool_->realizations)
      acc += double(engagements(pool_->instance, seeds, phi));
  }
  return acc / double(pool_->realizations.size());
}

}  // namespace revmax
