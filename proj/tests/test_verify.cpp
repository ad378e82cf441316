#include <doctest.h>

#include "revmax/instance.hpp"
#include "revmax/verify.hpp"

using namespace revmax;

namespace {

VerifyOptions quick(std::size_t trials, std::uint64_t seed = 1) {
  VerifyOptions opts;
  opts.seed = seed;
  opts.trials = trials;
  return opts;
}

}  // namespace

TEST_CASE("every suite passes on a small run") {
  for (const SuiteResult& r : run_suites(quick(8, 3))) {
    INFO(r.name, ": ", r.counterexamples.empty() ? "" : r.counterexamples[0]);
    CHECK(r.passed);
    CHECK(r.violations == 0);
    CHECK(r.trials >= 8);
  }
}

TEST_CASE("suite registry") {
  CHECK(suite_names().size() == 10);
  auto only = run_suites(quick(3), std::string("lemma-min"));
  REQUIRE(only.size() == 1);
  CHECK(only[0].name == "lemma-min");
  CHECK(only[0].trials == 3);
  CHECK_THROWS_AS(run_suites(quick(3), std::string("no-such-suite")),
                  std::invalid_argument);
}

TEST_CASE("runs are reproducible") {
  VerifyOptions opts = quick(10, 99);
  auto a = run_suites(opts, std::string("ratio-nonadaptive"));
  auto b = run_suites(opts, std::string("ratio-nonadaptive"));
  CHECK(a[0].violations == b[0].violations);
  CHECK(a[0].counterexamples == b[0].counterexamples);
}

TEST_CASE("an unattainable ratio trips the ratio suites") {
  // The override exists precisely to prove the failure path works: no
  // selector can beat the optimum by one percent.
  VerifyOptions opts = quick(25, 7);
  opts.ratio_override = 1.01;
  const char* ratio_suites[] = {"ratio-nonadaptive", "ratio-deterministic",
                                "ratio-known-cost", "ratio-adaptive"};
  for (const char* name : ratio_suites) {
    auto rs = run_suites(opts, std::string(name));
    REQUIRE(rs.size() == 1);
    INFO(name);
    CHECK_FALSE(rs[0].passed);
    CHECK(rs[0].violations > 0);
    REQUIRE_FALSE(rs[0].counterexamples.empty());

    // Counterexamples embed the instance so failures can be replayed.
    const std::string& ce = rs[0].counterexamples[0];
    std::size_t at = ce.find("\nic ");
    REQUIRE(at != std::string::npos);
    Instance replay = parse_instance(ce.substr(at + 1));
    CHECK(replay.num_nodes() >= 2);
  }
}

TEST_CASE("counterexample lists are capped") {
  VerifyOptions opts = quick(40, 7);
  opts.ratio_override = 1.01;
  auto rs = run_suites(opts, std::string("ratio-nonadaptive"));
  CHECK(rs[0].violations > 5);
  CHECK(rs[0].counterexamples.size() == 5);
}
