#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "patternforge/detect.hpp"

namespace pf {

struct SuiteResult {
  std::string suite;
  std::vector<CheckResult> checks;
  double seconds = 0;
  bool pass() const;
};

// Named substitution checks. Without n every family runs at its own size;
// with n every family runs at that host size.
SuiteResult reduction_suite(std::optional<int> n = std::nullopt);
// Supergraph-count lemmas behind the mod-2 routes.
SuiteResult parity_lemma_suite();
// Builder output against the brute-force Hom expansion for every n <= max_n.
SuiteResult builder_suite(int max_n = 5);
// detect_induced against the brute-force count on seeded G(n, 1/2) hosts.
SuiteResult detection_suite(std::uint64_t seed, int hosts = 10, int n = 8);

SuiteResult run_suite(const std::string& name, std::optional<int> n, std::uint64_t seed);
std::vector<std::string> suite_names();

// Trials for the completeness bound: 50 * ceil(k^k / k!).
int completeness_trials(int k);

struct BenchRow {
  int n = 0;
  std::uint64_t ops = 0;
  double seconds = 0;
};

struct BenchResult {
  std::string subject;
  std::vector<BenchRow> rows;
  double slope = 0;  // least-squares slope of log(ops) against log(n)
};

// subject: treewidth:<pattern>, p5bar, p6bar, k5-p4, h6, kk-e:<k>, or
// oracle:<pattern> (brute-force induced count on a seeded G(n, 1/2)).
BenchResult bench(const std::string& subject, const std::vector<int>& grid, std::uint64_t seed = 1);

double loglog_slope(const std::vector<int>& xs, const std::vector<double>& ys);

}  // namespace pf
