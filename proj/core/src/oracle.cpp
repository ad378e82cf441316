#include "revmax/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace revmax {

namespace {

std::size_t count_uncertain(const Instance& inst) {
  return inst.uncertain_edges().size();
}

void require_z_in_budget(const Instance& inst, double z) {
  if (!(z >= 0.0 && z <= inst.budget()))
    throw std::invalid_argument("reserved spend z must lie in [0, budget]");
}

// Calls fn(phi, p) for every full realization consistent with psi, where p
// is its conditional probability: observed edges keep psi's labels,
// deterministic unobserved edges are forced, uncertain unobserved edges are
// enumerated with product weights.
template <typename Fn>
void for_each_conditional(const Instance& inst, const PartialRealization& psi,
                          std::size_t cap, Fn&& fn) {
  std::vector<EdgeId> free_edges;
  for (EdgeId e : inst.uncertain_edges())
    if (!psi.observed(e)) free_edges.push_back(e);
  if (free_edges.size() >= 63 || (std::size_t(1) << free_edges.size()) > cap)
    throw std::invalid_argument(
        "too many unobserved uncertain edges for exact enumeration");

  Realization base(inst.num_edges());
  for (EdgeId e = 0; e < inst.num_edges(); ++e) {
    if (psi.observed(e))
      base.set_live(e, psi.live(e));
    else
      base.set_live(e, inst.edge(e).rho == 1.0);
  }

  std::uint64_t combos = std::uint64_t(1) << free_edges.size();
  for (std::uint64_t bits = 0; bits < combos; ++bits) {
    Realization phi = base;
    double p = 1.0;
    for (std::size_t k = 0; k < free_edges.size(); ++k) {
      double rho = inst.edge(free_edges[k]).rho;
      if ((bits >> k) & 1u) {
        phi.set_live(free_edges[k], true);
        p *= rho;
      } else {
        p *= 1.0 - rho;
      }
    }
    fn(phi, p);
  }
}

PartialRealization empty_observation(const Instance& inst) {
  return PartialRealization(inst.num_edges());
}

}  // namespace

bool enumeration_feasible(const Instance& inst, std::size_t cap) {
  std::size_t u = count_uncertain(inst);
  return u < 63 && (std::size_t(1) << u) <= cap;
}

ExactDistribution enumerate_realizations(const Instance& inst,
                                         std::size_t cap) {
  if (!enumeration_feasible(inst, cap))
    throw std::invalid_argument(
        "instance has too many uncertain edges for exact enumeration");
  ExactDistribution dist;
  dist.entries.reserve(std::size_t(1) << count_uncertain(inst));
  for_each_conditional(inst, empty_observation(inst), cap,
                       [&](const Realization& phi, double p) {
                         dist.entries.emplace_back(phi, p);
                       });
  return dist;
}

ExactEvaluator::ExactEvaluator(const Instance& inst, std::size_t cap)
    : inst_(&inst), dist_(enumerate_realizations(inst, cap)) {
  if (inst.num_nodes() <= 64) {
    reach_.reserve(dist_.entries.size());
    for (const auto& [phi, p] : dist_.entries)
      reach_.push_back(reach_masks(inst, phi));
  }
}

double ExactEvaluator::expected_truncated(std::span<const NodeId> seeds,
                                          double z) const {
  require_z_in_budget(*inst_, z);
  const double cap = inst_->budget() - z;
  double acc = 0;
  if (!reach_.empty()) {
    for (std::size_t i = 0; i < dist_.entries.size(); ++i) {
      NodeMask engaged = 0;
      for (NodeId v : seeds) engaged |= reach_[i][v];
      acc += dist_.entries[i].second *
             std::min(double(std::popcount(engaged)), cap);
    }
  } else {
    for (const auto& [phi, p] : dist_.entries)
      acc += p * std::min(double(engagements(*inst_, seeds, phi)), cap);
  }
  return acc;
}

double ExactEvaluator::expected_engagements(
    std::span<const NodeId> seeds) const {
  double acc = 0;
  if (!reach_.empty()) {
    for (std::size_t i = 0; i < dist_.entries.size(); ++i) {
      NodeMask engaged = 0;
      for (NodeId v : seeds) engaged |= reach_[i][v];
      acc += dist_.entries[i].second * double(std::popcount(engaged));
    }
  } else {
    for (const auto& [phi, p] : dist_.entries)
      acc += p * double(engagements(*inst_, seeds, phi));
  }
  return acc;
}

double exact_l(const Instance& inst, std::span<const NodeId> seeds, double z) {
  return ExactEvaluator(inst).expected_truncated(seeds, z);
}

double exact_f_exp(const Instance& inst, std::span<const NodeId> seeds) {
  return ExactEvaluator(inst).expected_revenue(seeds);
}

double exact_g_exp(const Instance& inst, std::span<const NodeId> seeds) {
  return ExactEvaluator(inst).expected_engagements(seeds);
}

double exact_conditional_marginal(const Instance& inst,
                                  const PartialRealization& psi, NodeId e,
                                  double z, std::size_t cap) {
  require_z_in_budget(inst, z);
  if (e >= inst.num_nodes())
    throw std::invalid_argument("candidate id out of range");
  if (contains(psi.dom(), e))
    throw std::invalid_argument("candidate already committed in observation");
  if (!closure_holds(inst, psi))
    throw std::invalid_argument("observation violates the closure property");
  const double budget_cap = inst.budget() - z;
  const NodeSet with = with_node(psi.dom(), e);
  double acc = 0;
  for_each_conditional(inst, psi, cap, [&](const Realization& phi, double p) {
    double before =
        std::min(double(engagements(inst, psi.dom(), phi)), budget_cap);
    double after = std::min(double(engagements(inst, with, phi)), budget_cap);
    acc += p * (after - before);
  });
  return acc;
}

double exact_conditional_value(const Instance& inst,
                               const PartialRealization& psi, double z,
                               std::size_t cap) {
  require_z_in_budget(inst, z);
  if (!closure_holds(inst, psi))
    throw std::invalid_argument("observation violates the closure property");
  const double budget_cap = inst.budget() - z;
  double acc = 0;
  for_each_conditional(inst, psi, cap, [&](const Realization& phi, double p) {
    acc += p * std::min(double(engagements(inst, psi.dom(), phi)), budget_cap);
  });
  return acc;
}

OptimalSet optimal_nonadaptive(const Instance& inst, std::size_t cap) {
  if (inst.num_nodes() > 20)
    throw std::invalid_argument(
        "exhaustive subset search limited to 20 nodes");
  ExactEvaluator eval(inst, cap);
  const std::size_t n = inst.num_nodes();

  OptimalSet best;  // empty set, value 0: always feasible
  NodeSet best_set;
  NodeSet current;
  for (NodeMask mask = 1; mask < (NodeMask(1) << n); ++mask) {
    current = set_from_mask(mask);
    double spent = inst.total_cost(current);
    if (spent > inst.budget()) continue;
    double value = eval.expected_truncated(current, spent);
    bool better = value > best.value;
    if (!better && value == best.value) {
      // Tie: prefer fewer seeds, then the lexicographically smaller list.
      better = current.size() < best.seeds.size() ||
               (current.size() == best.seeds.size() &&
                std::lexicographical_compare(current.begin(), current.end(),
                                             best.seeds.begin(),
                                             best.seeds.end()));
    }
    if (better) best = OptimalSet{current, value};
  }
  return best;
}

double optimal_adaptive(const Instance& inst, bool allow_stop,
                        std::size_t node_cap, std::size_t edge_cap) {
  if (node_cap > 20 || edge_cap > 20)
    throw std::invalid_argument("adaptive search caps limited to 20/20");
  if (inst.num_nodes() > node_cap)
    throw std::invalid_argument("too many nodes for exhaustive adaptive search");
  if (inst.num_edges() > edge_cap)
    throw std::invalid_argument("too many edges for exhaustive adaptive search");

  // States are canonical observations, packed as dom | observed | labels.
  auto key_of = [&](const PartialRealization& psi) {
    return mask_from_set(psi.dom()) | (psi.observed_mask() << 20) |
           (psi.live_mask() << 40);
  };
  std::unordered_map<std::uint64_t, double> memo;
  const std::size_t enum_cap = std::size_t(1) << inst.num_edges();

  auto value = [&](auto&& self, const PartialRealization& psi) -> double {
    std::uint64_t key = key_of(psi);
    if (auto it = memo.find(key); it != memo.end()) return it->second;

    double spent = inst.total_cost(psi.dom());
    // Collect now: revenue of the committed seeds over realizations
    // consistent with what has been observed.
    double stop_value = 0;
    for_each_conditional(
        inst, psi, enum_cap, [&](const Realization& phi, double p) {
          stop_value +=
              p * std::min(double(engagements(inst, psi.dom(), phi)),
                           inst.budget() - spent);
        });

    double best_pick = 0;
    bool any_pick = false;
    for (NodeId e = 0; e < inst.num_nodes(); ++e) {
      if (contains(psi.dom(), e)) continue;
      if (spent + inst.cost(e) > inst.budget()) continue;
      NodeSet next_dom = with_node(psi.dom(), e);
      double expected = 0;
      for_each_conditional(inst, psi, enum_cap,
                           [&](const Realization& phi, double p) {
                             expected +=
                                 p * self(self, observe(inst, next_dom, phi));
                           });
      if (!any_pick || expected > best_pick) {
        any_pick = true;
        best_pick = expected;
      }
    }

    double result;
    if (!any_pick)
      result = stop_value;
    else if (allow_stop)
      result = std::max(stop_value, best_pick);
    else
      result = best_pick;
    memo.emplace(key, result);
    return result;
  };
  return value(value, empty_observation(inst));
}

std::vector<SetFunctionViolation> check_submodularity(
    std::size_t n, const std::function<double(NodeMask)>& value, double tol) {
  if (n > 16)
    throw std::invalid_argument("exhaustive set-function check limited to 16");
  const NodeMask full = (NodeMask(1) << n) - 1;
  std::vector<double> table(std::size_t(1) << n);
  for (NodeMask mask = 0; mask <= full; ++mask) table[mask] = value(mask);

  std::vector<SetFunctionViolation> violations;
  for (NodeMask big = 0; big <= full; ++big) {
    // Every A ⊆ big via the standard submask walk, then every v outside big.
    NodeMask small = big;
    while (true) {
      for (NodeId v = 0; v < n; ++v) {
        NodeMask bit = NodeMask(1) << v;
        if (big & bit) continue;
        double gain_small = table[small | bit] - table[small];
        double gain_big = table[big | bit] - table[big];
        if (gain_small < gain_big - tol)
          violations.push_back(
              SetFunctionViolation{small, big, v, gain_small, gain_big});
      }
      if (small == 0) break;
      small = (small - 1) & big;
    }
  }
  return violations;
}

std::vector<SetFunctionViolation> check_monotonicity(
    std::size_t n, const std::function<double(NodeMask)>& value, double tol) {
  if (n > 16)
    throw std::invalid_argument("exhaustive set-function check limited to 16");
  const NodeMask full = (NodeMask(1) << n) - 1;
  std::vector<double> table(std::size_t(1) << n);
  for (NodeMask mask = 0; mask <= full; ++mask) table[mask] = value(mask);

  std::vector<SetFunctionViolation> violations;
  for (NodeMask set = 0; set <= full; ++set) {
    for (NodeId v = 0; v < n; ++v) {
      NodeMask bit = NodeMask(1) << v;
      if (set & bit) continue;
      double gain = table[set | bit] - table[set];
      if (gain < -tol)
        violations.push_back(SetFunctionViolation{set, set, v, gain, 0.0});
    }
  }
  return violations;
}

std::vector<AdaptiveViolation> check_adaptive_submodularity(
    const Instance& inst, double z, double tol) {
  require_z_in_budget(inst, z);
  if (inst.num_nodes() > 16 || inst.num_edges() > 22)
    throw std::invalid_argument(
        "exhaustive adaptive check limited to 16 nodes / 22 edges");
  if (!enumeration_feasible(inst))
    throw std::invalid_argument(
        "instance has too many uncertain edges for exact enumeration");

  // Every observation reachable from some seed set under some realization.
  ExactDistribution dist = enumerate_realizations(inst);
  std::vector<PartialRealization> states;
  std::unordered_map<std::uint64_t, std::size_t> index;
  auto key_of = [&](const PartialRealization& psi) {
    return mask_from_set(psi.dom()) | (psi.observed_mask() << 16) |
           (psi.live_mask() << 39);
  };
  const std::size_t n = inst.num_nodes();
  for (NodeMask dom = 0; dom < (NodeMask(1) << n); ++dom) {
    NodeSet seeds = set_from_mask(dom);
    for (const auto& [phi, p] : dist.entries) {
      PartialRealization psi = observe(inst, seeds, phi);
      if (index.emplace(key_of(psi), states.size()).second)
        states.push_back(std::move(psi));
    }
  }

  // Expected one-step gains, cached per (state, candidate).
  const double unset = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::vector<double>> gain(states.size(),
                                        std::vector<double>(n, unset));
  for (std::size_t i = 0; i < states.size(); ++i)
    for (NodeId e = 0; e < n; ++e)
      if (!contains(states[i].dom(), e))
        gain[i][e] = exact_conditional_marginal(inst, states[i], e, z);

  std::vector<AdaptiveViolation> violations;
  auto describe = [&](const PartialRealization& psi) {
    std::string out = "dom={";
    for (std::size_t k = 0; k < psi.dom().size(); ++k)
      out += (k ? "," : "") + inst.node_name(psi.dom()[k]);
    out += "} observed={";
    bool first = true;
    for (EdgeId e = 0; e < inst.num_edges(); ++e) {
      if (!psi.observed(e)) continue;
      if (!first) out += ",";
      first = false;
      out += inst.node_name(inst.edge(e).src) + "->" +
             inst.node_name(inst.edge(e).dst) + (psi.live(e) ? ":live" : ":blocked");
    }
    return out + "}";
  };

  for (std::size_t i = 0; i < states.size(); ++i) {
    for (NodeId e = 0; e < n; ++e) {
      if (contains(states[i].dom(), e)) continue;
      if (gain[i][e] < -tol)
        violations.push_back(AdaptiveViolation{
            "negative expected gain " + std::to_string(gain[i][e]) + " for " +
            inst.node_name(e) + " at " + describe(states[i])});
    }
  }
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (std::size_t j = 0; j < states.size(); ++j) {
      if (i == j || !is_subrealization(states[i], states[j])) continue;
      for (NodeId e = 0; e < n; ++e) {
        if (contains(states[j].dom(), e)) continue;
        if (gain[i][e] < gain[j][e] - tol)
          violations.push_back(AdaptiveViolation{
              "gain of " + inst.node_name(e) + " grows from " +
              std::to_string(gain[i][e]) + " at " + describe(states[i]) +
              " to " + std::to_string(gain[j][e]) + " at " +
              describe(states[j])});
      }
    }
  }
  return violations;
}

bool check_min_truncation(double c1, double c2, double c3, double c4,
                          double x) {
  if (!(c1 >= c2) || !(c3 >= c4) || !(c1 - c2 >= c3 - c4) || !(c2 <= c4))
    throw std::invalid_argument(
        "need c1 >= c2, c3 >= c4, c1 - c2 >= c3 - c4 and c2 <= c4");
  return std::min(c1, x) - std::min(c2, x) >= std::min(c3, x) - std::min(c4, x);
}

}  // namespace revmax
