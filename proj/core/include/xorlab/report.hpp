#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "xorlab/io.hpp"

namespace xorlab {

// A computed value or an explicit skip marker; nothing is ever silently
// dropped. Markers render as "skipped: cap" (a cap blocked it) or
// "skipped: off" (the run did not ask for it).
struct Cell {
  std::optional<std::int64_t> value;
  std::string skip_reason;

  static Cell of(std::int64_t v) { return Cell{v, {}}; }
  static Cell skip_cap() { return Cell{std::nullopt, "cap"}; }
  static Cell skip_off() { return Cell{std::nullopt, "off"}; }
  bool skipped() const { return !value.has_value(); }

  friend bool operator==(const Cell&, const Cell&) = default;
};

struct PipelineFields {
  std::string skip_reason;  // nonempty when the whole pipeline was skipped
  std::int64_t leaf_volume = 0;
  std::int64_t core_size = 0;
  std::int64_t codim_v = 0;
  bool containment_ok = false;
  bool mono_ok = false;

  bool skipped() const { return !skip_reason.empty(); }

  friend bool operator==(const PipelineFields&, const PipelineFields&) = default;
};

// One record per analyzed function; field order is fixed and mirrors the
// upper/lower bound chain the lab verifies.
struct Report {
  std::string name;
  int n = 1;
  std::uint64_t seed = 0;
  Cell deg2 = Cell::skip_off();
  Cell sparsity01 = Cell::skip_off();
  Cell sparsity_pm = Cell::skip_off();
  Cell rank_mf = Cell::skip_off();
  Cell minpcert_codim = Cell::skip_off();
  Cell pdt_exact_depth = Cell::skip_off();
  Cell pdt_greedy_depth = Cell::skip_off();
  Cell cc2 = Cell::skip_off();
  Cell sim_cost_k2 = Cell::skip_off();
  Cell sim_cost_k4 = Cell::skip_off();
  PipelineFields pipeline = PipelineFields{"off", 0, 0, 0, false, false};
  std::int64_t timing_ms = 0;

  friend bool operator==(const Report&, const Report&) = default;
};

enum class ReportFormat { json, csv };

const char* report_csv_header();

ordered_json report_to_json(const Report& r);
Report report_from_json(const ordered_json& j);

std::string emit_reports(std::span<const Report> reports, ReportFormat format);
std::vector<Report> parse_reports(const std::string& json_text);

}  // namespace xorlab
