#include "chaoskit/zoo.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "chaoskit/errors.hpp"

namespace chaoskit {

namespace {

std::size_t get_size(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 0)
    throw ParseError(std::string("system field '") + key + "' must be a nonnegative integer");
  return j[key].get<std::size_t>();
}

BoolMatrix read_matrix(const nlohmann::json& j) {
  if (!j.contains("matrix") || !j["matrix"].is_array()) throw ParseError("'matrix' must be an array of rows");
  BoolMatrix m;
  const auto& rows = j["matrix"];
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != rows.size()) throw ParseError("matrix must be square");
    std::vector<bool> r;
    for (const auto& v : row) {
      if (!v.is_number_integer() || (v.get<int>() != 0 && v.get<int>() != 1))
        throw ParseError("matrix entries must be 0 or 1");
      r.push_back(v.get<int>() == 1);
    }
    m.push_back(std::move(r));
  }
  if (m.empty()) throw ParseError("matrix is empty");
  return m;
}

// Intervals in units of 1/(2 grid), as half-open ranges [lo, hi) modulo 2 grid.
struct Range {
  long lo, hi;
};

std::vector<Range> image(const std::string& name, long grid, long i) {
  const long a = 2 * i, b = 2 * i + 2, g2 = 2 * grid;
  if (name == "tent_slope2") {
    auto f = [&](long u) { return u <= grid ? 2 * u : 2 * g2 - 2 * u; };
    long lo = std::min(f(a), f(b)), hi = std::max(f(a), f(b));
    if (a < grid && grid < b) hi = f(grid);
    return {{lo, hi}};
  }
  if (name == "doubling") {
    if (2 * (b - a) >= g2) return {{0, g2}};
    const long lo = (2 * a) % g2, hi = lo + 2 * (b - a);
    if (hi <= g2) return {{lo, hi}};
    return {{lo, g2}, {0, hi - g2}};
  }
  throw UnknownMap("unknown interval map '" + name + "'");
}

}  // namespace

SystemSpec parse_system_spec(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw ParseError("system must be an object with a string 'kind'");
  SystemSpec s;
  s.kind = j["kind"].get<std::string>();
  s.name = j.value("name", s.kind);
  s.parameters = j;
  static const char* kinds[] = {"full_shift", "matrix", "forbidden", "product_with_odometer", "markov_map"};
  for (const char* k : kinds)
    if (s.kind == k) return s;
  throw ParseError("unknown system kind '" + s.kind + "'");
}

SystemSpec load_system_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open system file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("system file '" + path + "': " + e.what());
  }
  return parse_system_spec(j);
}

Sft product_with_odometer(std::size_t k, std::size_t depth) {
  if (k == 0) throw PreconditionViolation("need at least one symbol");
  if (depth > 10) throw PreconditionViolation("odometer depth above 10");
  const std::size_t c = std::size_t{1} << depth, n = k * c;
  BoolMatrix m(n, std::vector<bool>(n, false));
  for (std::size_t j = 0; j < c; ++j)
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) m[j * k + a][((j + 1) % c) * k + b] = true;
  std::vector<Word> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back({static_cast<Symbol>(i)});
  return Sft::build(std::move(m), std::move(labels), 1, nullptr, Alphabet(n),
                    "full " + std::to_string(k) + "-shift times the odometer cut at depth " +
                        std::to_string(depth));
}

CompiledSystem ingest_markov_map(const std::string& name, std::size_t grid) {
  if (name != "tent_slope2" && name != "doubling") throw UnknownMap("unknown interval map '" + name + "'");
  if (grid < 2 || grid > 4096) throw PreconditionViolation("grid must be between 2 and 4096");
  const long g = static_cast<long>(grid);
  BoolMatrix m(grid, std::vector<bool>(grid, false));
  for (long i = 0; i < g; ++i)
    for (const Range& r : image(name, g, i))
      for (long j = 0; j < g; ++j)
        if (r.lo < 2 * j + 2 && r.hi > 2 * j) m[i][j] = true;
  CompiledSystem out{essentialize(m), name + "/" + std::to_string(grid), {}, std::log(2.0)};
  out.notes.push_back("itinerary model on a uniform partition into " + std::to_string(grid) + " intervals");
  if (name == "tent_slope2" && grid % 2 == 1)
    out.notes.push_back("odd grid: the turning point 1/2 is interior to a cell, so the partition is not Markov and the matrix only approximates the map");
  return out;
}

CompiledSystem compile(const SystemSpec& spec) {
  const auto& p = spec.parameters;
  if (spec.kind == "full_shift") return {Sft::full_shift(get_size(p, "k")), spec.name, {}, {}};
  if (spec.kind == "matrix") return {essentialize(read_matrix(p)), spec.name, {}, {}};
  if (spec.kind == "forbidden") {
    const std::size_t k = get_size(p, "alphabet");
    if (!p.contains("forbidden") || !p["forbidden"].is_array()) throw ParseError("'forbidden' must be an array");
    std::vector<Word> words;
    for (const auto& w : p["forbidden"]) {
      if (!w.is_string()) throw ParseError("forbidden words are strings of digits");
      words.push_back(parse_word(w.get<std::string>(), Alphabet(k)));
    }
    return {higher_block_recode(Alphabet(k), words), spec.name, {}, {}};
  }
  if (spec.kind == "product_with_odometer") {
    CompiledSystem out{product_with_odometer(p.value("k", std::size_t{2}), get_size(p, "depth")), spec.name,
                       {}, {}};
    out.notes.push_back(
        "the odometer is not a subshift of finite type; this is its periodic approximation at finite depth, "
        "whose second coordinate is a single cycle");
    return out;
  }
  if (spec.kind == "markov_map") {
    if (!p.contains("map") || !p["map"].is_string()) throw ParseError("'map' must be a string");
    CompiledSystem out = ingest_markov_map(p["map"].get<std::string>(), get_size(p, "grid"));
    out.name = spec.name;
    return out;
  }
  throw ParseError("unknown system kind '" + spec.kind + "'");
}

std::vector<ZooEntry> zoo() {
  auto entry = [](const std::string& name, nlohmann::json j) {
    j["name"] = name;
    return ZooEntry{name, parse_system_spec(j)};
  };
  return {
      entry("full2", {{"kind", "full_shift"}, {"k", 2}}),
      entry("full3", {{"kind", "full_shift"}, {"k", 3}}),
      entry("golden_mean", {{"kind", "forbidden"}, {"alphabet", 2}, {"forbidden", {"11"}}}),
      entry("golden_matrix", {{"kind", "matrix"}, {"matrix", {{1, 1}, {1, 0}}}}),
      entry("bipartite3", {{"kind", "matrix"}, {"matrix", {{0, 1, 1}, {1, 0, 0}, {1, 0, 0}}}}),
      entry("no_two_zeros_three", {{"kind", "forbidden"}, {"alphabet", 2}, {"forbidden", {"000", "111"}}}),
      entry("odometer3", {{"kind", "product_with_odometer"}, {"k", 2}, {"depth", 3}}),
      entry("tent2", {{"kind", "markov_map"}, {"map", "tent_slope2"}, {"grid", 2}}),
      entry("doubling4", {{"kind", "markov_map"}, {"map", "doubling"}, {"grid", 4}}),
      entry("swap", {{"kind", "matrix"}, {"matrix", {{0, 1}, {1, 0}}}}),
      entry("cycle3", {{"kind", "matrix"}, {"matrix", {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}}}),
      entry("identity2", {{"kind", "matrix"}, {"matrix", {{1, 0}, {0, 1}}}}),
      entry("triangular", {{"kind", "matrix"}, {"matrix", {{1, 1}, {0, 1}}}}),
  };
}

}  // namespace chaoskit
