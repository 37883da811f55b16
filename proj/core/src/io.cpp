#include "xorlab/io.hpp"

#include <algorithm>

namespace xorlab {

namespace {

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

char hex_char(int v) { return v < 10 ? static_cast<char>('0' + v) : static_cast<char>('a' + v - 10); }

ordered_json parse_json(const std::string& text, const char* who) {
  ordered_json j = ordered_json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(ErrorCode::invalid_spec, std::string(who) + ": not valid JSON");
  return j;
}

std::string bits_to_hex(const BitVec& bits) {
  const std::uint64_t nbits = bits.size();
  const std::uint64_t digits = nbits / 4;
  std::string out(digits, '0');
  for (std::uint64_t d = 0; d < digits; ++d) {
    int v = 0;
    for (int b = 0; b < 4; ++b)
      v |= bits.get(4 * d + b) << b;
    out[digits - 1 - d] = hex_char(v);
  }
  return out;
}

BitVec hex_to_bits(const std::string& hex, std::uint64_t nbits, const char* who) {
  if (hex.size() * 4 != nbits)
    fail(ErrorCode::length_mismatch,
         std::string(who) + ": expected exactly " + std::to_string(nbits / 4) + " hex digits");
  BitVec bits(nbits);
  for (std::uint64_t d = 0; d < hex.size(); ++d) {
    int v = hex_digit(hex[hex.size() - 1 - d]);
    if (v < 0) fail(ErrorCode::invalid_hex, std::string(who) + ": non-hex character");
    for (int b = 0; b < 4; ++b)
      if (v & (1 << b)) bits.set(4 * d + b, true);
  }
  return bits;
}

int require_n(const ordered_json& j, const char* who) {
  if (!j.contains("n") || !j["n"].is_number_integer())
    fail(ErrorCode::invalid_spec, std::string(who) + ": missing integer field 'n'");
  int n = j["n"].get<int>();
  check_dim(n);
  return n;
}

}  // namespace

std::string table_hex(const BoolFn& f) {
  if (f.n() < 2) fail(ErrorCode::length_mismatch, "hex truth tables need n >= 2");
  return bits_to_hex(f.table());
}

BoolFn fn_from_hex(int n, const std::string& hex) {
  check_dim(n);
  if (n < 2) fail(ErrorCode::length_mismatch, "hex truth tables need n >= 2");
  return BoolFn(n, hex_to_bits(hex, 1ull << n, "truth_table_hex"));
}

FunctionSpec function_spec_from_json(const ordered_json& j) {
  if (!j.is_object()) fail(ErrorCode::invalid_spec, "function spec: expected a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    if (key != "n" && key != "truth_table_hex" && key != "anf_monomials" && key != "family" &&
        key != "seed")
      fail(ErrorCode::invalid_spec, "function spec: unknown field '" + key + "'");
  }
  FunctionSpec spec;
  spec.n = require_n(j, "function spec");
  int sources = j.contains("truth_table_hex") + j.contains("anf_monomials") + j.contains("family");
  if (sources != 1)
    fail(ErrorCode::invalid_spec, "function spec: exactly one of truth_table_hex, anf_monomials, family");
  if (j.contains("truth_table_hex")) {
    if (!j["truth_table_hex"].is_string())
      fail(ErrorCode::invalid_hex, "truth_table_hex must be a string");
    spec.source = FunctionSpec::Source::truth_table_hex;
    spec.hex = j["truth_table_hex"].get<std::string>();
    if (j.contains("seed")) fail(ErrorCode::invalid_spec, "seed only applies to family specs");
  } else if (j.contains("anf_monomials")) {
    if (!j["anf_monomials"].is_array())
      fail(ErrorCode::invalid_spec, "anf_monomials must be an array of masks");
    spec.source = FunctionSpec::Source::anf;
    for (const auto& m : j["anf_monomials"]) {
      if (!m.is_number_integer() || m.get<std::int64_t>() < 0)
        fail(ErrorCode::invalid_spec, "anf_monomials must be non-negative integers");
      std::int64_t v = m.get<std::int64_t>();
      if (v >= (1ll << spec.n)) fail(ErrorCode::mask_overflow, "ANF monomial mask >= 2^n");
      spec.monomials.push_back(static_cast<std::uint32_t>(v));
    }
    if (j.contains("seed")) fail(ErrorCode::invalid_spec, "seed only applies to family specs");
  } else {
    if (!j["family"].is_string()) fail(ErrorCode::invalid_spec, "family must be a string");
    spec.source = FunctionSpec::Source::family;
    spec.family = j["family"].get<std::string>();
    if (j.contains("seed")) {
      if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
        fail(ErrorCode::invalid_spec, "seed must be an integer");
      spec.seed = j["seed"].get<std::uint64_t>();
    }
  }
  return spec;
}

FunctionSpec parse_function_spec(const std::string& text) {
  return function_spec_from_json(parse_json(text, "function spec"));
}

ordered_json function_spec_to_json(const FunctionSpec& spec) {
  ordered_json j;
  j["n"] = spec.n;
  switch (spec.source) {
    case FunctionSpec::Source::truth_table_hex:
      j["truth_table_hex"] = spec.hex;
      break;
    case FunctionSpec::Source::anf:
      j["anf_monomials"] = spec.monomials;
      break;
    case FunctionSpec::Source::family:
      j["family"] = spec.family;
      j["seed"] = spec.seed;
      break;
  }
  return j;
}

std::string emit_function_spec(const FunctionSpec& spec) {
  return function_spec_to_json(spec).dump();
}

BoolFn realize(const FunctionSpec& spec) {
  switch (spec.source) {
    case FunctionSpec::Source::truth_table_hex:
      return fn_from_hex(spec.n, spec.hex);
    case FunctionSpec::Source::anf:
      return fn_from_anf(spec.n, spec.monomials);
    case FunctionSpec::Source::family:
      return gen_family(spec.family, spec.n, spec.seed);
  }
  fail(ErrorCode::invalid_spec, "function spec: bad source");
}

PointSet point_set_from_json(const ordered_json& j) {
  if (!j.is_object()) fail(ErrorCode::invalid_spec, "point set: expected a JSON object");
  int n = require_n(j, "point set");
  if (j.contains("points") == j.contains("bitset_hex"))
    fail(ErrorCode::invalid_spec, "point set: exactly one of points, bitset_hex");
  PointSet s(n);
  if (j.contains("points")) {
    if (!j["points"].is_array()) fail(ErrorCode::invalid_spec, "points must be an array");
    for (const auto& p : j["points"]) {
      if (!p.is_number_integer() || p.get<std::int64_t>() < 0)
        fail(ErrorCode::invalid_spec, "points must be non-negative integers");
      std::int64_t v = p.get<std::int64_t>();
      if (v >= (1ll << n)) fail(ErrorCode::mask_overflow, "point >= 2^n");
      s.add(static_cast<std::uint32_t>(v));
    }
  } else {
    if (!j["bitset_hex"].is_string()) fail(ErrorCode::invalid_hex, "bitset_hex must be a string");
    if (n < 2) fail(ErrorCode::length_mismatch, "bitset_hex needs n >= 2");
    BitVec bits = hex_to_bits(j["bitset_hex"].get<std::string>(), 1ull << n, "bitset_hex");
    for (std::uint64_t x = 0; x < (1ull << n); ++x)
      if (bits.get(x)) s.add(static_cast<std::uint32_t>(x));
  }
  return s;
}

ordered_json point_set_to_json(const PointSet& s) {
  ordered_json j;
  j["n"] = s.n();
  j["points"] = s.points();
  return j;
}

// ---------------------------------------------------------------------------
// PDT JSON
// ---------------------------------------------------------------------------

namespace {

ordered_json pdt_node_to_json(const ParityDecisionTree& t, std::int32_t id) {
  const auto& node = t.nodes()[static_cast<std::size_t>(id)];
  ordered_json j;
  if (node.is_leaf()) {
    j["leaf"] = static_cast<int>(node.leaf);
    return j;
  }
  j["query_mask"] = node.query;
  j["zero"] = pdt_node_to_json(t, node.child0);
  j["one"] = pdt_node_to_json(t, node.child1);
  return j;
}

std::int32_t pdt_node_from_json(const ordered_json& j, ParityDecisionTree& t) {
  if (!j.is_object()) fail(ErrorCode::malformed_tree, "PDT node: expected an object");
  if (j.contains("leaf")) {
    if (!j["leaf"].is_number_integer()) fail(ErrorCode::malformed_tree, "PDT leaf must be 0 or 1");
    int b = j["leaf"].get<int>();
    if (b != 0 && b != 1) fail(ErrorCode::malformed_tree, "PDT leaf must be 0 or 1");
    return t.add_leaf(b);
  }
  if (!j.contains("query_mask") || !j.contains("zero") || !j.contains("one"))
    fail(ErrorCode::malformed_tree, "PDT node needs query_mask, zero, one");
  std::int64_t mask = j["query_mask"].get<std::int64_t>();
  if (mask <= 0 || mask >= (1ll << t.n()))
    fail(ErrorCode::malformed_tree, "PDT query mask must be nonzero and < 2^n");
  std::int32_t zero = pdt_node_from_json(j["zero"], t);
  std::int32_t one = pdt_node_from_json(j["one"], t);
  return t.add_query(static_cast<std::uint32_t>(mask), zero, one);
}

}  // namespace

ordered_json pdt_to_json(const ParityDecisionTree& t) {
  if (t.root() < 0) fail(ErrorCode::malformed_tree, "PDT has no root");
  ordered_json j;
  j["n"] = t.n();
  j["tree"] = pdt_node_to_json(t, t.root());
  return j;
}

ParityDecisionTree pdt_from_json(const ordered_json& j) {
  if (!j.is_object() || !j.contains("tree")) fail(ErrorCode::malformed_tree, "PDT: missing tree");
  ParityDecisionTree t;
  t.set_n(require_n(j, "PDT"));
  t.set_root(pdt_node_from_json(j["tree"], t));
  return t;
}

// ---------------------------------------------------------------------------
// protocol JSON
// ---------------------------------------------------------------------------

namespace {

ordered_json protocol_node_to_json(const Protocol& p, std::int32_t id, std::uint64_t& budget) {
  if (budget == 0)
    fail(ErrorCode::cap_exceeded, "protocol_to_json: expanded tree exceeds the node budget");
  --budget;
  const auto& node = p.nodes[static_cast<std::size_t>(id)];
  ordered_json j;
  if (node.is_leaf()) {
    j["leaf"] = static_cast<int>(node.leaf);
    return j;
  }
  j["speaker"] = static_cast<int>(node.speaker) + 1;
  const Message& m = p.pool[static_cast<std::size_t>(node.msg)];
  if (m.is_form)
    j["form_mask"] = m.mask;
  else
    j["table_hex"] = bits_to_hex(m.table);
  j["zero"] = protocol_node_to_json(p, node.child0, budget);
  j["one"] = protocol_node_to_json(p, node.child1, budget);
  return j;
}

std::int32_t protocol_node_from_json(const ordered_json& j, Protocol& p) {
  if (!j.is_object()) fail(ErrorCode::malformed_protocol, "protocol node: expected an object");
  Protocol::Node node;
  if (j.contains("leaf")) {
    int b = j["leaf"].get<int>();
    if (b != 0 && b != 1) fail(ErrorCode::malformed_protocol, "protocol leaf must be 0 or 1");
    node.leaf = static_cast<std::int8_t>(b);
    p.nodes.push_back(node);
    return static_cast<std::int32_t>(p.nodes.size() - 1);
  }
  if (!j.contains("speaker") || !j.contains("zero") || !j.contains("one"))
    fail(ErrorCode::malformed_protocol, "protocol node needs speaker, zero, one");
  int speaker = j["speaker"].get<int>();
  if (speaker < 1 || speaker > p.k)
    fail(ErrorCode::malformed_protocol, "protocol speaker out of range");
  Message m;
  if (j.contains("form_mask")) {
    std::int64_t mask = j["form_mask"].get<std::int64_t>();
    if (mask < 0 || mask >= (1ll << p.n))
      fail(ErrorCode::malformed_protocol, "protocol form mask out of range");
    m.is_form = true;
    m.mask = static_cast<std::uint32_t>(mask);
  } else if (j.contains("table_hex")) {
    if (p.n < 2) fail(ErrorCode::length_mismatch, "table_hex needs n >= 2");
    m.is_form = false;
    m.table = hex_to_bits(j["table_hex"].get<std::string>(), 1ull << p.n, "table_hex");
  } else {
    fail(ErrorCode::malformed_protocol, "protocol node needs form_mask or table_hex");
  }
  p.pool.push_back(std::move(m));
  node.msg = static_cast<std::int32_t>(p.pool.size() - 1);
  node.speaker = static_cast<std::uint8_t>(speaker - 1);
  std::int32_t zero = protocol_node_from_json(j["zero"], p);
  std::int32_t one = protocol_node_from_json(j["one"], p);
  node.child0 = zero;
  node.child1 = one;
  p.nodes.push_back(node);
  return static_cast<std::int32_t>(p.nodes.size() - 1);
}

}  // namespace

ordered_json protocol_to_json(const Protocol& p, std::uint64_t max_nodes) {
  if (p.root < 0) fail(ErrorCode::malformed_protocol, "protocol has no root");
  ordered_json j;
  j["k"] = p.k;
  j["n"] = p.n;
  j["cost"] = p.cost();
  std::uint64_t budget = max_nodes;
  j["tree"] = protocol_node_to_json(p, p.root, budget);
  return j;
}

Protocol protocol_from_json(const ordered_json& j) {
  if (!j.is_object() || !j.contains("k") || !j.contains("tree"))
    fail(ErrorCode::malformed_protocol, "protocol: missing k or tree");
  Protocol p;
  p.k = j["k"].get<int>();
  if (p.k < 2) fail(ErrorCode::malformed_protocol, "protocol needs k >= 2");
  p.n = require_n(j, "protocol");
  p.root = protocol_node_from_json(j["tree"], p);
  return p;
}

ordered_json subspace_to_json(const AffineSubspace& v) {
  ordered_json j;
  j["n"] = v.n();
  j["dim"] = v.dim();
  j["codim"] = v.codim();
  j["offset"] = v.offset();
  j["basis"] = v.basis();
  return j;
}

}  // namespace xorlab
