#pragma once

// Property reports for the command line.

#include <string>
#include <vector>

#include <json.hpp>

#include "chaoskit/constructions.hpp"
#include "chaoskit/zoo.hpp"

namespace chaoskit {

struct Verdict {
  std::string name;
  bool value = false;
  std::string operation;
  std::string evidence;
  nlohmann::json detail;
};

struct Analyses {
  bool entropy = true;
  bool devaney = true;
  bool dichotomy = true;
};

struct Report {
  std::string name;
  nlohmann::json system;
  std::vector<std::string> notes;
  std::vector<Verdict> verdicts;
  bool hypotheses_hold = true;  // transitive and not a single cycle
};

Report run_report(const CompiledSystem& system, const Analyses& analyses);

std::string render_text(const Report& r);
nlohmann::json to_json(const Report& r);

/// Rows: subtuple,checkpoint,relation,parameter,count,density for every
/// certified sub-tuple at every checkpoint up to `horizon`.
std::string density_csv(const ScrambledFamilyReport& r, Index horizon);

/// Checkpoints used for a family: plan block ends (in the points' own time)
/// up to the horizon.
std::vector<Index> family_checkpoints(const ScrambledFamilyReport& r, Index horizon);

}  // namespace chaoskit
