#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "xorlab/boolfn.hpp"
#include "xorlab/commlab.hpp"
#include "xorlab/io.hpp"
#include "xorlab/pdt.hpp"
#include "xorlab/report.hpp"

namespace xorlab {

struct AnalyzeOptions {
  int max_exact_n = 6;      // exact PDT solver cap
  int max_cert_n = 8;       // pcert / minpcert / greedy builder cap
  int max_rank_n = 10;      // communication matrix rank cap
  int max_cc2_n = 3;        // 2^n + 2^n <= 16 for the exact 2-party DP
  int max_pipeline_n = 6;   // leaf rectangle enumeration cap for k = 4
  int oracle_max_n = 14;    // exact subspace oracle cap
  bool with_timing = true;  // false zeroes timing_ms for byte-stable output
  std::uint64_t rank_seed = 0x9e3779b97f4a7c15ull;
};

struct NamedFn {
  std::string name;
  std::uint64_t seed = 0;
  BoolFn fn;
};

NamedFn named_from_spec(const FunctionSpec& spec);

/// Every field the caps admit, computed fresh; everything else carries an
/// explicit skip marker. Simulation costs come from the exact tree when the
/// cap allows it and from the greedy tree otherwise.
Report analyze_function(const NamedFn& f, const AnalyzeOptions& opt);

/// The family instances defined at this n (ip needs even n, address needs
/// n = a + 2^a); the seeded families consume the given seed.
std::vector<NamedFn> families_for(int n, std::uint64_t seed);

BoolFn random_function(int n, std::uint64_t seed);

}  // namespace xorlab
