#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "xorlab/boolfn.hpp"
#include "xorlab/commlab.hpp"
#include "xorlab/gf2core.hpp"
#include "xorlab/pdt.hpp"
#include "xorlab/sumset.hpp"

namespace xorlab {

using ordered_json = nlohmann::ordered_json;

// Function specs carry one of three sources. Truth tables travel as hex:
// bit i of the (MSB-first) hex integer is f at input index i, so the table
// needs exactly 2^{n-2} hex digits and n >= 2. AND on two variables is
// {"n":2,"truth_table_hex":"8"}: only index 3 maps to 1, table 1000b = 0x8.
struct FunctionSpec {
  enum class Source { truth_table_hex, anf, family };

  int n = 1;
  Source source = Source::family;
  std::string hex;
  std::vector<std::uint32_t> monomials;
  std::string family;
  std::uint64_t seed = 0;

  friend bool operator==(const FunctionSpec&, const FunctionSpec&) = default;
};

FunctionSpec parse_function_spec(const std::string& text);
FunctionSpec function_spec_from_json(const ordered_json& j);
ordered_json function_spec_to_json(const FunctionSpec& spec);
std::string emit_function_spec(const FunctionSpec& spec);

BoolFn realize(const FunctionSpec& spec);

std::string table_hex(const BoolFn& f);
BoolFn fn_from_hex(int n, const std::string& hex);

// PointSet JSON: {"n":..,"points":[ints]} or {"n":..,"bitset_hex":".."};
// emission always uses the points form, ascending.
PointSet point_set_from_json(const ordered_json& j);
ordered_json point_set_to_json(const PointSet& s);

// PDT JSON: {"n":..,"tree":node}, node = {"query_mask":m,"zero":..,"one":..}
// or {"leaf":b}.
ordered_json pdt_to_json(const ParityDecisionTree& t);
ParityDecisionTree pdt_from_json(const ordered_json& j);

// Protocol JSON mirrors the expanded tree: {"k":..,"n":..,"cost":..,
// "tree":node}, node = {"speaker":1-based,"form_mask":m,...} or
// {"speaker":..,"table_hex":..,...} or {"leaf":b}. Emission re-expands any
// shared subtrees and is capped to keep the output desk-scale.
ordered_json protocol_to_json(const Protocol& p, std::uint64_t max_nodes = 1u << 21);
Protocol protocol_from_json(const ordered_json& j);

ordered_json subspace_to_json(const AffineSubspace& v);

}  // namespace xorlab
