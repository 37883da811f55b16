#include "xorlab/analyze.hpp"

#include "xorlab/util.hpp"

namespace xorlab {

NamedFn named_from_spec(const FunctionSpec& spec) {
  NamedFn f;
  f.fn = realize(spec);
  switch (spec.source) {
    case FunctionSpec::Source::truth_table_hex:
      f.name = "hex:" + spec.hex;
      break;
    case FunctionSpec::Source::anf:
      f.name = "anf";
      break;
    case FunctionSpec::Source::family:
      f.name = spec.family;
      f.seed = spec.seed;
      break;
  }
  return f;
}

BoolFn random_function(int n, std::uint64_t seed) { return gen_family("random", n, seed); }

std::vector<NamedFn> families_for(int n, std::uint64_t seed) {
  std::vector<NamedFn> out;
  for (const std::string& name : family_names()) {
    if (name == "ip" && n % 2 != 0) continue;
    if (name == "address") {
      bool ok = false;
      for (int a = 0; a + (1 << a) <= n; ++a)
        if (a + (1 << a) == n) ok = true;
      if (!ok) continue;
    }
    out.push_back(NamedFn{name, seed, gen_family(name, n, seed)});
  }
  return out;
}

Report analyze_function(const NamedFn& f, const AnalyzeOptions& opt) {
  Timer timer;
  Report r;
  r.name = f.name;
  r.n = f.fn.n();
  r.seed = f.seed;

  r.deg2 = Cell::of(anf_deg2(f.fn).deg2);
  Spectrum spec = wht_spectrum(f.fn);
  r.sparsity01 = Cell::of(sparsity(spec, SpectrumConvention::zero_one));
  r.sparsity_pm = Cell::of(sparsity(spec, SpectrumConvention::plus_minus));

  const int n = f.fn.n();
  r.rank_mf = (n <= opt.max_rank_n)
                  ? Cell::of(comm_matrix_rank(f.fn, opt.rank_seed ^ f.seed, opt.max_rank_n).rank)
                  : Cell::skip_cap();
  r.minpcert_codim =
      (n <= opt.max_cert_n) ? Cell::of(minpcert(f.fn, opt.max_cert_n).codim) : Cell::skip_cap();

  bool have_exact = n <= opt.max_exact_n;
  bool have_greedy = n <= opt.max_cert_n;
  ParityDecisionTree sim_tree;
  if (have_exact) {
    PdtExactResult exact = pdt_exact(f.fn, opt.max_exact_n);
    r.pdt_exact_depth = Cell::of(exact.depth);
    sim_tree = std::move(exact.tree);
  } else {
    r.pdt_exact_depth = Cell::skip_cap();
  }
  if (have_greedy) {
    ParityDecisionTree greedy = greedy_pdt(f.fn, opt.max_cert_n);
    r.pdt_greedy_depth = Cell::of(greedy.depth());
    if (!have_exact) sim_tree = std::move(greedy);
  } else {
    r.pdt_greedy_depth = Cell::skip_cap();
  }

  r.cc2 = (n <= opt.max_cc2_n) ? Cell::of(cc2_exact(comm_matrix(f.fn))) : Cell::skip_cap();

  if (have_exact || have_greedy) {
    Protocol p2 = simulate_pdt_protocol(sim_tree, 2);
    r.sim_cost_k2 = Cell::of(p2.cost());
    Protocol p4 = simulate_pdt_protocol(sim_tree, 4);
    r.sim_cost_k4 = Cell::of(p4.cost());
    if (n <= opt.max_pipeline_n) {
      PipelineResult pipe = mono_affine_from_protocol(f.fn, p4, opt.oracle_max_n);
      r.pipeline.skip_reason.clear();
      r.pipeline.leaf_volume = static_cast<std::int64_t>(pipe.leaf_volume);
      r.pipeline.core_size = static_cast<std::int64_t>(pipe.core_size);
      r.pipeline.codim_v = pipe.codim_v;
      r.pipeline.containment_ok = pipe.containment_ok;
      r.pipeline.mono_ok = pipe.mono_ok;
    } else {
      r.pipeline = PipelineFields{"cap", 0, 0, 0, false, false};
    }
  } else {
    r.sim_cost_k2 = Cell::skip_cap();
    r.sim_cost_k4 = Cell::skip_cap();
    r.pipeline = PipelineFields{"cap", 0, 0, 0, false, false};
  }

  r.timing_ms = opt.with_timing ? timer.elapsed_ms() : 0;
  return r;
}

}  // namespace xorlab
