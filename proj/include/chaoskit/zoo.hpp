#pragma once

// System files, the example catalog and named interval maps.
//
// A system file is one JSON object with a "kind":
//   {"kind": "full_shift", "k": 2}
//   {"kind": "matrix", "matrix": [[1,1],[1,0]]}
//   {"kind": "forbidden", "alphabet": 2, "forbidden": ["11"]}
//   {"kind": "product_with_odometer", "k": 2, "depth": 3}
//   {"kind": "markov_map", "map": "tent_slope2", "grid": 2}
// and an optional "name".

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "chaoskit/sft.hpp"

namespace chaoskit {

struct SystemSpec {
  std::string kind;
  std::string name;
  nlohmann::json parameters;
};

/// Throws ParseError.
SystemSpec parse_system_spec(const nlohmann::json& j);
SystemSpec load_system_spec(const std::string& path);

struct CompiledSystem {
  Sft system;
  std::string name;
  std::vector<std::string> notes;
  std::optional<double> reference_entropy;
};

CompiledSystem compile(const SystemSpec& spec);

/// Full k-shift times the cycle of length 2^depth: symbol (a, j) is j k + a
/// and steps to (b, j + 1 mod 2^depth).
Sft product_with_odometer(std::size_t k, std::size_t depth);

/// Uniform partition into `grid` intervals; i -> j when the image of
/// interval i meets the interior of interval j. Throws UnknownMap.
CompiledSystem ingest_markov_map(const std::string& name, std::size_t grid);

struct ZooEntry {
  std::string name;
  SystemSpec spec;
};

std::vector<ZooEntry> zoo();

}  // namespace chaoskit
