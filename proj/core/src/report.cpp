#include "xorlab/report.hpp"

#include <sstream>

namespace xorlab {

namespace {

constexpr const char* kHeader =
    "name,n,seed,deg2,sparsity01,sparsityPM,rank_MF,minpcert,pdt_exact,pdt_greedy_depth,"
    "cc2_exact,sim_cost_k2,sim_cost_k4,pipeline_leaf_volume,pipeline_core_size,"
    "pipeline_codim_V,pipeline_containment_ok,pipeline_mono_ok,timing_ms";

ordered_json cell_to_json(const Cell& c) {
  if (c.value) return *c.value;
  return "skipped: " + c.skip_reason;
}

Cell cell_from_json(const ordered_json& j, const char* field) {
  if (j.is_number_integer() || j.is_number_unsigned())
    return Cell::of(j.get<std::int64_t>());
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s.rfind("skipped: ", 0) == 0) return Cell{std::nullopt, s.substr(9)};
  }
  fail(ErrorCode::invalid_spec, std::string("report field '") + field + "' is malformed");
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

std::string cell_to_csv(const Cell& c) {
  if (c.value) return std::to_string(*c.value);
  return "skipped: " + c.skip_reason;
}

}  // namespace

const char* report_csv_header() { return kHeader; }

ordered_json report_to_json(const Report& r) {
  ordered_json j;
  j["name"] = r.name;
  j["n"] = r.n;
  j["seed"] = r.seed;
  j["deg2"] = cell_to_json(r.deg2);
  j["sparsity01"] = cell_to_json(r.sparsity01);
  j["sparsityPM"] = cell_to_json(r.sparsity_pm);
  j["rank_MF"] = cell_to_json(r.rank_mf);
  j["minpcert"] = cell_to_json(r.minpcert_codim);
  j["pdt_exact"] = cell_to_json(r.pdt_exact_depth);
  j["pdt_greedy_depth"] = cell_to_json(r.pdt_greedy_depth);
  j["cc2_exact"] = cell_to_json(r.cc2);
  j["sim_cost_k2"] = cell_to_json(r.sim_cost_k2);
  j["sim_cost_k4"] = cell_to_json(r.sim_cost_k4);
  if (r.pipeline.skipped()) {
    j["pipeline"] = "skipped: " + r.pipeline.skip_reason;
  } else {
    ordered_json p;
    p["leaf_volume"] = r.pipeline.leaf_volume;
    p["core_size"] = r.pipeline.core_size;
    p["codim_V"] = r.pipeline.codim_v;
    p["containment_ok"] = r.pipeline.containment_ok;
    p["mono_ok"] = r.pipeline.mono_ok;
    j["pipeline"] = p;
  }
  j["timing_ms"] = r.timing_ms;
  return j;
}

Report report_from_json(const ordered_json& j) {
  if (!j.is_object()) fail(ErrorCode::invalid_spec, "report: expected a JSON object");
  Report r;
  r.name = j.at("name").get<std::string>();
  r.n = j.at("n").get<int>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.deg2 = cell_from_json(j.at("deg2"), "deg2");
  r.sparsity01 = cell_from_json(j.at("sparsity01"), "sparsity01");
  r.sparsity_pm = cell_from_json(j.at("sparsityPM"), "sparsityPM");
  r.rank_mf = cell_from_json(j.at("rank_MF"), "rank_MF");
  r.minpcert_codim = cell_from_json(j.at("minpcert"), "minpcert");
  r.pdt_exact_depth = cell_from_json(j.at("pdt_exact"), "pdt_exact");
  r.pdt_greedy_depth = cell_from_json(j.at("pdt_greedy_depth"), "pdt_greedy_depth");
  r.cc2 = cell_from_json(j.at("cc2_exact"), "cc2_exact");
  r.sim_cost_k2 = cell_from_json(j.at("sim_cost_k2"), "sim_cost_k2");
  r.sim_cost_k4 = cell_from_json(j.at("sim_cost_k4"), "sim_cost_k4");
  const auto& p = j.at("pipeline");
  if (p.is_string()) {
    std::string s = p.get<std::string>();
    if (s.rfind("skipped: ", 0) != 0) fail(ErrorCode::invalid_spec, "report pipeline marker malformed");
    r.pipeline = PipelineFields{s.substr(9), 0, 0, 0, false, false};
  } else {
    r.pipeline.skip_reason.clear();
    r.pipeline.leaf_volume = p.at("leaf_volume").get<std::int64_t>();
    r.pipeline.core_size = p.at("core_size").get<std::int64_t>();
    r.pipeline.codim_v = p.at("codim_V").get<std::int64_t>();
    r.pipeline.containment_ok = p.at("containment_ok").get<bool>();
    r.pipeline.mono_ok = p.at("mono_ok").get<bool>();
  }
  r.timing_ms = j.at("timing_ms").get<std::int64_t>();
  return r;
}

std::string emit_reports(std::span<const Report> reports, ReportFormat format) {
  if (format == ReportFormat::json) {
    ordered_json arr = ordered_json::array();
    for (const Report& r : reports) arr.push_back(report_to_json(r));
    return arr.dump();
  }
  std::ostringstream out;
  out << kHeader << "\n";
  for (const Report& r : reports) {
    out << csv_escape(r.name) << "," << r.n << "," << r.seed << "," << cell_to_csv(r.deg2) << ","
        << cell_to_csv(r.sparsity01) << "," << cell_to_csv(r.sparsity_pm) << ","
        << cell_to_csv(r.rank_mf) << "," << cell_to_csv(r.minpcert_codim) << ","
        << cell_to_csv(r.pdt_exact_depth) << "," << cell_to_csv(r.pdt_greedy_depth) << ","
        << cell_to_csv(r.cc2) << "," << cell_to_csv(r.sim_cost_k2) << ","
        << cell_to_csv(r.sim_cost_k4) << ",";
    if (r.pipeline.skipped()) {
      std::string marker = "skipped: " + r.pipeline.skip_reason;
      out << marker << "," << marker << "," << marker << "," << marker << "," << marker;
    } else {
      out << r.pipeline.leaf_volume << "," << r.pipeline.core_size << "," << r.pipeline.codim_v
          << "," << (r.pipeline.containment_ok ? "true" : "false") << ","
          << (r.pipeline.mono_ok ? "true" : "false");
    }
    out << "," << r.timing_ms << "\n";
  }
  return out.str();
}

std::vector<Report> parse_reports(const std::string& json_text) {
  ordered_json j = ordered_json::parse(json_text, nullptr, false);
  if (j.is_discarded() || !j.is_array())
    fail(ErrorCode::invalid_spec, "report list: expected a JSON array");
  std::vector<Report> out;
  out.reserve(j.size());
  for (const auto& item : j) out.push_back(report_from_json(item));
  return out;
}

}  // namespace xorlab
