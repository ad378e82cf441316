// Exact, exhaustive counterparts of the estimators and selectors, feasible
// only on small instances. These are the reference implementations the
// randomized machinery is validated against: exact expectations enumerate
// every realization, and the optimal solvers enumerate every seed set or
// every adaptive decision tree.
#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "revmax/cascade.hpp"
#include "revmax/estimator.hpp"
#include "revmax/instance.hpp"
#include "revmax/types.hpp"

namespace revmax {

inline constexpr std::size_t kDefaultEnumerationCap = 4096;

// All realizations with positive probability and their probabilities.
// Edges with rho in {0, 1} are fixed, not enumerated, so there are
// 2^(#uncertain edges) entries; probabilities sum to 1 within 1e-12.
struct ExactDistribution {
  std::vector<std::pair<Realization, double>> entries;
};

// True iff 2^(#edges with 0 < rho < 1) <= cap, i.e. exact expectation over
// all realizations is affordable.
bool enumeration_feasible(const Instance& inst,
                          std::size_t cap = kDefaultEnumerationCap);

// Throws std::invalid_argument when enumeration_feasible(inst, cap) fails.
ExactDistribution enumerate_realizations(
    const Instance& inst, std::size_t cap = kDefaultEnumerationCap);

// Exact drop-in for PoolEvaluator: probability-weighted sums over the full
// realization distribution instead of sample means.
class ExactEvaluator final : public Evaluator {
 public:
  explicit ExactEvaluator(const Instance& inst,
                          std::size_t cap = kDefaultEnumerationCap);
  const Instance& instance() const override { return *inst_; }
  double expected_truncated(std::span<const NodeId> seeds,
                            double z) const override;
  double expected_engagements(std::span<const NodeId> seeds) const override;
  const ExactDistribution& distribution() const { return dist_; }

 private:
  const Instance* inst_;
  ExactDistribution dist_;
  std::vector<std::vector<NodeMask>> reach_;  // per entry, when n <= 64
};

// One-off exact expectations (each builds its own enumeration).
double exact_l(const Instance& inst, std::span<const NodeId> seeds, double z);
double exact_f_exp(const Instance& inst, std::span<const NodeId> seeds);
double exact_g_exp(const Instance& inst, std::span<const NodeId> seeds);

// Exact counterpart of conditional_marginal: the expected one-step gain of
// adding `e` given psi, over the conditional distribution of the unobserved
// edges. Same preconditions, plus psi must be closed.
double exact_conditional_marginal(const Instance& inst,
                                  const PartialRealization& psi, NodeId e,
                                  double z,
                                  std::size_t cap = kDefaultEnumerationCap);

// Exact expected revenue of the already-committed seeds given psi.
double exact_conditional_value(const Instance& inst,
                               const PartialRealization& psi, double z,
                               std::size_t cap = kDefaultEnumerationCap);

struct OptimalSet {
  NodeSet seeds;
  double value = 0;
};

// Best fixed seed set within budget, by exhaustive subset search (requires
// |V| <= 20 and enumeration feasibility). Ties prefer the smaller set, then
// the lexicographically smallest node list.
OptimalSet optimal_nonadaptive(const Instance& inst,
                               std::size_t cap = kDefaultEnumerationCap);

// Value of the best adaptive policy, by memoized recursion over reachable
// observations: at each state either stop and collect, or commit one more
// affordable node and branch on what its observation reveals.
// `allow_stop=false` forces selection while any node remains affordable.
// Requires |V| <= node_cap and |E| <= edge_cap (defaults match the sizes the
// recursion can exhaust comfortably).
double optimal_adaptive(const Instance& inst, bool allow_stop = true,
                        std::size_t node_cap = 4, std::size_t edge_cap = 4);

// ---- Structural property checkers ---------------------------------------

struct SetFunctionViolation {
  NodeMask small;  // A
  NodeMask big;    // B with A subset of B
  NodeId added;    // v outside B
  double gain_small;
  double gain_big;
};

// Exhaustively checks the diminishing-returns inequality
//   f(A+v) - f(A) >= f(B+v) - f(B) - tol   for all A ⊆ B, v ∉ B
// over all subsets of {0..n-1}. Requires n <= 16.
std::vector<SetFunctionViolation> check_submodularity(
    std::size_t n, const std::function<double(NodeMask)>& value,
    double tol = 1e-9);

// Exhaustively checks f(S+v) >= f(S) - tol for all S, v ∉ S. Requires n <= 16.
std::vector<SetFunctionViolation> check_monotonicity(
    std::size_t n, const std::function<double(NodeMask)>& value,
    double tol = 1e-9);

struct AdaptiveViolation {
  std::string detail;  // human-readable description of the offending pair
};

// Checks adaptive diminishing returns of the truncated gain at reserve z:
// over every pair of reachable observations psi ⊆ psi', and every node e
// outside dom(psi'), the expected gain given psi must be at least the gain
// given psi' (within tol), and no gain may be negative (beyond tol).
// Enumerates all (seed set, realization) observations; requires
// enumeration feasibility and |V| <= 16.
std::vector<AdaptiveViolation> check_adaptive_submodularity(
    const Instance& inst, double z, double tol = 1e-9);

// Truncation preserves gap domination: given c1 >= c2, c3 >= c4,
// c1 - c2 >= c3 - c4 and c2 <= c4, returns whether
//   min{c1,x} - min{c2,x} >= min{c3,x} - min{c4,x}.
// Throws std::invalid_argument if the preconditions fail.
bool check_min_truncation(double c1, double c2, double c3, double c4, double x);

}  // namespace revmax
