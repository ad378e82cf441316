// Randomized property batteries: structural checks (submodularity of the
// objective family, adaptive diminishing returns, the truncation lemma) and
// end-to-end ratio checks of every selector against the exhaustive optima.
// Each suite draws its own instance corpus deterministically from the seed,
// so failures are reproducible; counterexamples carry the instance text.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace revmax {

struct VerifyOptions {
  std::uint64_t seed = 1;
  // Per-suite trial count; each suite has its own default when unset.
  std::optional<std::size_t> trials;
  // Replaces the proven approximation ratio in the ratio suites. Exists so
  // the failure path itself can be tested (an inflated ratio must fail and
  // print a counterexample); never set in normal verification.
  std::optional<double> ratio_override;
};

struct SuiteResult {
  std::string name;
  std::size_t trials = 0;
  std::size_t violations = 0;
  std::vector<std::string> counterexamples;  // capped, human-readable
  bool passed = false;
  double elapsed_s = 0;
};

// Structural suites.
SuiteResult run_g_submodularity_suite(const VerifyOptions& opts);        // g, g_exp
SuiteResult run_l_submodularity_suite(const VerifyOptions& opts);        // l(., z)
SuiteResult run_adaptive_submodularity_suite(const VerifyOptions& opts); // gains
SuiteResult run_h_dominates_f_suite(const VerifyOptions& opts);          // h >= f
SuiteResult run_lemma_min_suite(const VerifyOptions& opts);              // truncation
SuiteResult run_estimator_convergence_suite(const VerifyOptions& opts);  // MC vs exact

// Approximation-ratio suites against the exhaustive optima.
SuiteResult run_ratio_nonadaptive_suite(const VerifyOptions& opts);
SuiteResult run_ratio_deterministic_suite(const VerifyOptions& opts);
SuiteResult run_ratio_known_cost_suite(const VerifyOptions& opts);
SuiteResult run_ratio_adaptive_suite(const VerifyOptions& opts);

// All suites in reporting order; `only` restricts to one suite by name.
// Throws std::invalid_argument for an unknown name.
std::vector<SuiteResult> run_suites(const VerifyOptions& opts,
                                    const std::optional<std::string>& only = {});

std::vector<std::string> suite_names();

}  // namespace revmax
