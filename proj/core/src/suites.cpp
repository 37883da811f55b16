#include "xorlab/suites.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "xorlab/rng.hpp"
#include "xorlab/util.hpp"

namespace xorlab {

namespace {

std::string hex_name(const BoolFn& f) {
  std::ostringstream s;
  s << "hex:";
  const std::uint64_t digits = std::max<std::uint64_t>(1, f.domain_size() / 4);
  for (std::uint64_t d = digits; d-- > 0;) {
    int v = 0;
    for (int b = 0; b < 4; ++b) {
      std::uint64_t i = 4 * d + b;
      if (i < f.domain_size() && f.eval(static_cast<std::uint32_t>(i))) v |= 1 << b;
    }
    s << "0123456789abcdef"[v];
  }
  return s.str();
}

BoolFn fn_from_byte(int n, std::uint64_t bits) {
  BoolFn f(n);
  for (std::uint64_t x = 0; x < f.domain_size(); ++x) f.set(static_cast<std::uint32_t>(x), (bits >> x) & 1);
  return f;
}

int ceil_log2(std::int64_t v) {
  if (v <= 1) return 0;
  int b = 0;
  while ((1ll << b) < v) ++b;
  return b;
}

// dense random subset of exact size, by partial Fisher-Yates
PointSet random_set_of_size(int n, std::uint64_t size, Rng& rng) {
  std::vector<std::uint32_t> all(1ull << n);
  for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;
  for (std::uint64_t i = 0; i < size; ++i) {
    std::uint64_t j = i + rng.below(all.size() - i);
    std::swap(all[i], all[j]);
  }
  return PointSet::from_points(n, std::span<const std::uint32_t>(all.data(), size));
}

AffineSubspace random_subspace(int n, int dim, Rng& rng) {
  std::vector<std::uint32_t> rows;
  AffineSubspace v = AffineSubspace::span_rref(n, rows, 0);
  while (v.dim() < dim) {
    rows.push_back(static_cast<std::uint32_t>(rng.below(1ull << n)));
    v = AffineSubspace::span_rref(n, rows, 0);
  }
  std::uint32_t offset = static_cast<std::uint32_t>(rng.below(1ull << n));
  return AffineSubspace::span_rref(n, rows, offset);
}

// Per-index failure slots keep the merged order deterministic no matter
// how the work is scheduled.
struct Collector {
  std::vector<std::vector<std::string>> slots;

  explicit Collector(std::size_t count) : slots(count) {}

  void fail_check(std::size_t i, const std::string& message) { slots[i].push_back(message); }

  void merge_into(SuiteResult& result) {
    for (auto& slot : slots)
      for (auto& msg : slot) result.failures.push_back(std::move(msg));
  }
};

SuiteResult rank_sparsity_suite(int n_max, std::uint64_t seed, const AnalyzeOptions& opt,
                                int threads) {
  SuiteResult res{"rank_sparsity", n_max, seed, 0, {}, {}};
  std::vector<NamedFn> fns;
  for (std::uint64_t bits = 0; bits < 256; ++bits) {
    NamedFn f{"", 0, fn_from_byte(3, bits)};
    f.name = hex_name(f.fn);
    fns.push_back(std::move(f));
  }
  Rng rng(seed);
  for (int i = 0; i < 100; ++i) {
    std::uint64_t s = rng.next();
    fns.push_back(NamedFn{"random", s, random_function(n_max, s)});
  }

  res.reports.resize(fns.size());
  Collector col(fns.size());
  parallel_for(fns.size(), threads, [&](std::size_t i) {
    const NamedFn& f = fns[i];
    Report r;
    r.name = f.name;
    r.n = f.fn.n();
    r.seed = f.seed;
    Spectrum spec = wht_spectrum(f.fn);
    std::int64_t sp01 = sparsity(spec, SpectrumConvention::zero_one);
    r.sparsity01 = Cell::of(sp01);
    r.sparsity_pm = Cell::of(sparsity(spec, SpectrumConvention::plus_minus));
    int rank = comm_matrix_rank(f.fn, opt.rank_seed ^ f.seed, opt.max_rank_n).rank;
    r.rank_mf = Cell::of(rank);
    r.timing_ms = 0;
    res.reports[i] = std::move(r);
    if (rank != sp01)
      col.fail_check(i, "rank_sparsity: " + f.name + " rank " + std::to_string(rank) +
                            " != sparsity01 " + std::to_string(sp01));
  });
  col.merge_into(res);
  res.checks = static_cast<std::int64_t>(fns.size());
  return res;
}

SuiteResult simulation_suite(int n_max, std::uint64_t seed, const AnalyzeOptions& opt,
                             int threads) {
  SuiteResult res{"simulation", n_max, seed, 0, {}, {}};
  std::vector<NamedFn> fns;
  Rng rng(seed);
  const int top = std::min(n_max, 4);
  for (int n = 1; n <= top; ++n) {
    for (NamedFn& f : families_for(n, seed)) fns.push_back(std::move(f));
    for (int i = 0; i < 5; ++i) {
      std::uint64_t s = rng.next();
      fns.push_back(NamedFn{"random", s, random_function(n, s)});
    }
  }

  res.reports.resize(fns.size());
  Collector col(fns.size());
  std::atomic<std::int64_t> checks{0};
  parallel_for(fns.size(), threads, [&](std::size_t i) {
    const NamedFn& f = fns[i];
    const int n = f.fn.n();
    PdtExactResult exact = pdt_exact(f.fn, opt.max_exact_n);
    Report r;
    r.name = f.name;
    r.n = n;
    r.seed = f.seed;
    r.pdt_exact_depth = Cell::of(exact.depth);
    for (int k : {2, 4}) {
      Protocol p = simulate_pdt_protocol(exact.tree, k);
      const int cost = p.cost();
      if (k == 2) r.sim_cost_k2 = Cell::of(cost);
      if (k == 4) r.sim_cost_k4 = Cell::of(cost);
      if (cost != k * exact.depth)
        col.fail_check(i, "simulation: " + f.name + " cost " + std::to_string(cost) +
                              " != k*depth");
      std::vector<std::uint32_t> xs(static_cast<std::size_t>(k), 0);
      const std::uint64_t tuples = 1ull << (k * n);
      bool ok = true;
      for (std::uint64_t t = 0; t < tuples && ok; ++t) {
        std::uint32_t acc = 0;
        for (int j = 0; j < k; ++j) {
          xs[static_cast<std::size_t>(j)] =
              static_cast<std::uint32_t>((t >> (j * n)) & ((1u << n) - 1));
          acc ^= xs[static_cast<std::size_t>(j)];
        }
        if (run_protocol(p, xs).output != f.fn.eval(acc)) ok = false;
      }
      if (!ok) col.fail_check(i, "simulation: " + f.name + " k=" + std::to_string(k) +
                                     " disagrees with F on some tuple");
      checks.fetch_add(1);
    }
    res.reports[i] = std::move(r);
  });
  col.merge_into(res);
  res.checks = checks.load();
  return res;
}

SuiteResult br_lemma_suite(int n_max, std::uint64_t seed, int threads) {
  SuiteResult res{"br_lemma", n_max, seed, 0, {}, {}};
  struct Case {
    int n, c;
    std::uint64_t seed;
  };
  std::vector<Case> cases;
  Rng rng(seed);
  for (int n : {8, 10, 12}) {
    if (n > n_max) continue;
    for (int c : {1, 2, 3})
      for (int trial = 0; trial < 50; ++trial) cases.push_back({n, c, rng.next()});
  }

  Collector col(cases.size());
  std::atomic<std::int64_t> checks{0};
  parallel_for(cases.size(), threads, [&](std::size_t i) {
    const Case cs = cases[i];
    Rng local(cs.seed);
    const std::uint64_t size = 1ull << (cs.n - cs.c);
    std::vector<PointSet> sets;
    for (int j = 0; j < 4; ++j) sets.push_back(random_set_of_size(cs.n, size, local));
    BrWitness w = br_intersect(sets[0], sets[1], sets[2], sets[3]);
    const std::uint64_t pair_floor = 1ull << (cs.n - 2 * cs.c);
    const std::uint64_t core_floor = 1ull << std::max(0, cs.n - 4 * cs.c);
    std::string id = "br_lemma: n=" + std::to_string(cs.n) + " c=" + std::to_string(cs.c) +
                     " trial_seed=" + std::to_string(cs.seed);
    if (w.pair_count_12 < pair_floor || w.pair_count_34 < pair_floor)
      col.fail_check(i, id + ": pigeonhole pair count below 2^{n-2c}");
    if (w.core.size() < core_floor) col.fail_check(i, id + ": core smaller than 2^{n-4c}");
    PointSet sum = sum_sets(sum_sets(sets[0], sets[1]), sum_sets(sets[2], sets[3]));
    PointSet four_core = iterated_sumset(w.core, 4);
    const std::uint32_t shift = w.a ^ w.a_prime;
    for (std::uint32_t x : four_core.points()) {
      if (!sum.contains(x ^ shift)) {
        col.fail_check(i, id + ": 4*core + a + a' escapes A1+A2+A3+A4");
        break;
      }
    }
    checks.fetch_add(3);
  });
  col.merge_into(res);
  res.checks = checks.load();
  return res;
}

SuiteResult restriction_suite(int n_max, std::uint64_t seed, const AnalyzeOptions& opt,
                              int threads) {
  SuiteResult res{"restriction", n_max, seed, 0, {}, {}};
  const int n = std::min(n_max, 4);
  struct Case {
    BoolFn f;
    AffineSubspace v;
    std::uint64_t seed;
  };
  std::vector<Case> cases;
  Rng rng(seed);
  for (int i = 0; i < 20; ++i) {
    std::uint64_t s = rng.next();
    BoolFn f = random_function(n, s);
    int dim = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    cases.push_back({std::move(f), random_subspace(n, dim, rng), s});
  }

  Collector col(cases.size());
  std::atomic<std::int64_t> checks{0};
  parallel_for(cases.size(), threads, [&](std::size_t i) {
    const Case& cs = cases[i];
    std::string id = "restriction: seed=" + std::to_string(cs.seed);
    PdtExactResult exact = pdt_exact(cs.f, opt.max_exact_n);
    Protocol p = simulate_pdt_protocol(exact.tree, 4);
    Protocol restricted = restrict_protocol(p, parametrize(cs.v));
    if (restricted.cost() != p.cost()) col.fail_check(i, id + ": restriction changed the cost");
    BoolFn g = restrict_affine(cs.f, cs.v);
    const int t = restricted.n;
    std::vector<std::uint32_t> zs(4, 0);
    bool ok = true;
    const std::uint64_t tuples = 1ull << (4 * t);
    for (std::uint64_t tup = 0; tup < tuples && ok; ++tup) {
      std::uint32_t acc = 0;
      for (int j = 0; j < 4; ++j) {
        zs[static_cast<std::size_t>(j)] =
            static_cast<std::uint32_t>((tup >> (j * t)) & ((1u << t) - 1));
        acc ^= zs[static_cast<std::size_t>(j)];
      }
      if (run_protocol(restricted, zs).output != g.eval(acc)) ok = false;
    }
    if (!ok)
      col.fail_check(i, id + ": restricted protocol disagrees with the restricted function");
    checks.fetch_add(2);
  });
  col.merge_into(res);
  res.checks = checks.load();
  return res;
}

SuiteResult sandwich_suite(std::uint64_t seed, const AnalyzeOptions& opt, int threads) {
  SuiteResult res{"sandwich", 3, seed, 0, {}, {}};
  res.reports.resize(256);
  Collector col(256);
  parallel_for(256, threads, [&](std::size_t i) {
    BoolFn f = fn_from_byte(3, i);
    Report r;
    r.name = hex_name(f);
    r.n = 3;
    int rank = comm_matrix_rank(f, opt.rank_seed, opt.max_rank_n).rank;
    int cc = cc2_exact(comm_matrix(f));
    int depth = pdt_exact(f, opt.max_exact_n).depth;
    r.rank_mf = Cell::of(rank);
    r.cc2 = Cell::of(cc);
    r.pdt_exact_depth = Cell::of(depth);
    std::string name = r.name;
    res.reports[i] = std::move(r);
    if (ceil_log2(rank) > cc || cc > 2 * depth)
      col.fail_check(i, "sandwich: " + name + " violates ceil(log2 rank) <= cc2 <= 2*pdt");
  });
  col.merge_into(res);
  res.checks = 256;
  return res;
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"rank_sparsity", "simulation", "br_lemma", "restriction", "sandwich"};
}

int suite_default_n_max(const std::string& name) {
  if (name == "rank_sparsity") return 6;
  if (name == "simulation") return 4;
  if (name == "br_lemma") return 12;
  if (name == "restriction") return 4;
  if (name == "sandwich") return 3;
  fail(ErrorCode::unknown_suite, "no suite named '" + name + "'");
}

SuiteResult run_suite(const std::string& name, int n_max, std::uint64_t seed,
                      const AnalyzeOptions& opt, int threads) {
  if (name == "rank_sparsity") return rank_sparsity_suite(n_max, seed, opt, threads);
  if (name == "simulation") return simulation_suite(n_max, seed, opt, threads);
  if (name == "br_lemma") return br_lemma_suite(n_max, seed, threads);
  if (name == "restriction") return restriction_suite(n_max, seed, opt, threads);
  if (name == "sandwich") return sandwich_suite(seed, opt, threads);
  fail(ErrorCode::unknown_suite, "no suite named '" + name + "'");
}

ordered_json suite_result_to_json(const SuiteResult& r) {
  ordered_json j;
  j["suite"] = r.suite;
  j["n_max"] = r.n_max;
  j["seed"] = r.seed;
  j["checks"] = r.checks;
  j["failures"] = r.failures;
  ordered_json reports = ordered_json::array();
  for (const Report& rep : r.reports) reports.push_back(report_to_json(rep));
  j["reports"] = reports;
  return j;
}

}  // namespace xorlab
