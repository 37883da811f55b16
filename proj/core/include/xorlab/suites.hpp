#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "xorlab/analyze.hpp"
#include "xorlab/report.hpp"

namespace xorlab {

// Verification suites:
//   rank_sparsity  rank(M_F) equals the 01 Fourier sparsity, exhaustive at
//                  n = 3 plus seeded random functions at n_max
//   simulation     broadcast simulation computes F on every tuple for
//                  k in {2,4} with cost exactly k * depth
//   br_lemma       shift-intersection counts, core size and the four-fold
//                  containment, for dense random 4-tuples
//   restriction    restricted protocols compute the restricted function on
//                  every tuple at unchanged cost
//   sandwich       ceil(log2 rank) <= cc2 <= 2 * exact PDT depth at n = 3
struct SuiteResult {
  std::string suite;
  int n_max = 0;
  std::uint64_t seed = 0;
  std::int64_t checks = 0;
  std::vector<std::string> failures;
  std::vector<Report> reports;

  bool passed() const { return failures.empty(); }
};

std::vector<std::string> suite_names();
int suite_default_n_max(const std::string& name);

SuiteResult run_suite(const std::string& name, int n_max, std::uint64_t seed,
                      const AnalyzeOptions& opt, int threads = 1);

ordered_json suite_result_to_json(const SuiteResult& r);

}  // namespace xorlab
