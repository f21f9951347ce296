// chaoskit command line.
//
// Exit codes: 0 every requested verdict holds, 2 a hypothesis or verdict
// failed, 1 an error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "chaoskit/constructions.hpp"
#include "chaoskit/errors.hpp"
#include "chaoskit/report.hpp"
#include "chaoskit/shadowing.hpp"
#include "chaoskit/zoo.hpp"

using namespace chaoskit;

namespace {

constexpr int kOk = 0, kError = 1, kFailed = 2;

// "2^-3", "1/8" or a decimal.
double parse_value(const std::string& text) {
  try {
    if (text.rfind("2^", 0) == 0) return std::ldexp(1.0, std::stoi(text.substr(2)));
    if (const auto slash = text.find('/'); slash != std::string::npos)
      return std::stod(text.substr(0, slash)) / std::stod(text.substr(slash + 1));
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw ParseError("");
    return v;
  } catch (const std::exception&) {
    throw ParseError("cannot read number '" + text + "'");
  }
}

EpPoint read_point(const Sft& s, const std::string& literal) {
  return s.encode(parse_point(literal, s.source_alphabet()));
}

std::vector<EpPoint> read_points(const Sft& s, const std::vector<std::string>& literals) {
  std::vector<EpPoint> out;
  for (const auto& l : literals) out.push_back(read_point(s, l));
  return out;
}

std::string show(const Sft& s, const EpPoint& p) { return format_point(s.decode(p)); }

void print(const nlohmann::json& j) { std::cout << j.dump(2) << "\n"; }

// Checkpoint horizon wrapper: same sequence, but scheduled, so certifiers read prefixes.
Point as_scheduled(const EpPoint& p) {
  constexpr Index block = Index{1} << 16;
  return ScheduledPoint::from_function(
      p.alphabet(), [p](std::size_t k) { return PlanBlock{p, k * block, block}; },
      {{"wrapped", format_point(p)}});
}

struct Common {
  std::string system;
  std::string format = "text";
};

int cmd_check(const Common& c, bool e, bool d, bool x) {
  const auto sys = compile(load_system_spec(c.system));
  Analyses a;
  if (e || d || x) a = {e, d, x};
  const Report r = run_report(sys, a);
  if (c.format == "json")
    print(to_json(r));
  else
    std::cout << render_text(r);
  return r.hypotheses_hold ? kOk : kFailed;
}

int cmd_trace(const Common& c, const std::string& file, const std::string& eps_text) {
  const auto sys = compile(load_system_spec(c.system));
  const Sft& s = sys.system;
  std::ifstream in(file);
  if (!in) throw ParseError("cannot open pseudo-orbit file '" + file + "'");
  std::string line;
  double delta = -1;
  std::vector<EpPoint> entries;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    line = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);
    if (delta < 0) {
      if (line.rfind("delta=", 0) != 0) throw ParseError("pseudo-orbit file must start with delta=...");
      delta = parse_value(line.substr(6));
      continue;
    }
    entries.push_back(read_point(s, line));
  }
  if (delta < 0 || entries.empty()) throw ParseError("pseudo-orbit file has no entries");
  const double eps = parse_value(eps_text);
  PseudoOrbit po = make_pseudo_orbit(s, entries, delta);
  nlohmann::json out{{"delta", delta}, {"entries", entries.size()}, {"validated", po.validated}};
  if (!po.validated) {
    nlohmann::json jumps = nlohmann::json::array();
    for (std::size_t k = 0; k + 1 < entries.size(); ++k) jumps.push_back(jump(po, k).to_string());
    out["jumps"] = jumps;
    print(out);
    return kFailed;
  }
  const auto tc = trace(po, eps);
  out["certificate"] = to_json(tc);
  out["point"] = show(s, tc.point);
  print(out);
  return tc.holds ? kOk : kFailed;
}

int cmd_classify(const Common& c, const std::vector<std::string>& literals, const std::string& eps_text,
                 Index horizon, const std::string& relation) {
  const auto sys = compile(load_system_spec(c.system));
  const auto pts = read_points(sys.system, literals);
  const double eps = parse_value(eps_text);
  std::vector<Point> tuple;
  for (const auto& p : pts) tuple.push_back(horizon ? as_scheduled(p) : Point(p));
  HorizonOptions opts;
  if (horizon) {
    for (Index n = 1024; n < horizon; n *= 4) opts.checkpoints.push_back(n);
    opts.checkpoints.push_back(horizon);
  }
  nlohmann::json out = nlohmann::json::object();
  bool all = true;
  auto want = [&](const char* r) { return relation == "all" || relation == r; };
  auto add = [&](const char* key, const TupleCertificate& cert) {
    out[key] = to_json(cert);
    all = all && cert.verdict;
  };
  if (want("asymptotic")) add("asymptotic", is_eps_asymptotic(tuple, eps, opts));
  if (want("distal")) add("distal", is_eps_distal(tuple, eps, opts));
  if (want("li-yorke") && tuple.size() == 2) add("li_yorke", is_li_yorke_pair(tuple[0], tuple[1], opts));
  if (want("scrambled")) add("dist_scrambled", is_dist_scrambled(tuple, eps, default_t_grid(), opts));
  if (out.empty()) throw PreconditionViolation("no relation selected for this tuple");
  print(out);
  return all ? kOk : kFailed;
}

std::vector<EpPoint> default_starts(const Sft& s, const std::vector<std::string>& literals, std::size_t n) {
  if (!literals.empty()) return read_points(s, literals);
  return pick_distal_sensitive_targets(s, n).targets;
}

int cmd_build(const std::string& which, const Common& c, std::size_t n, const std::string& eta_text,
              const std::string& eps_text, std::size_t family, Index horizon, const std::string& csv,
              const std::vector<std::string>& literals) {
  const auto sys = compile(load_system_spec(c.system));
  const Sft& s = sys.system;
  const double eta = parse_value(eta_text);
  if (which == "build-asymptotic" || which == "build-distal") {
    const auto xs = default_starts(s, literals, n);
    const ConstructedTuple t = which == "build-asymptotic" ? build_asymptotic_tuple(s, xs, parse_value(eps_text), eta)
                                                          : build_distal_tuple(s, xs, eta);
    nlohmann::json out = to_json(t);
    nlohmann::json shown = nlohmann::json::array();
    for (const auto& p : t.points) shown.push_back(show(s, p));
    out["points_source_alphabet"] = shown;
    print(out);
    return t.certificate.verdict ? kOk : kFailed;
  }
  if (family == 0) family = n;
  ScrambledFamilyReport r = [&] {
    if (s.analysis().irreducible && s.analysis().period > 1) {
      if (family != n || !literals.empty())
        throw PreconditionViolation("period above one: only the decoded n-tuple is built");
      return periodic_case(s, n, eta);
    }
    if (!literals.empty()) {
      const auto xs = read_points(s, literals);
      if (xs.size() != family) throw PreconditionViolation("--points must list --family points");
      return build_scrambled_family(s, family, n, eta, xs);
    }
    return build_scrambled_family(s, family, n, eta);
  }();
  nlohmann::json out = to_json(r);
  out["csv_checkpoints"] = family_checkpoints(r, horizon);
  print(out);
  if (!csv.empty()) {
    std::ofstream f(csv);
    if (!f) throw ParseError("cannot write '" + csv + "'");
    f << density_csv(r, horizon);
  }
  bool all = !r.certificates.empty();
  for (const auto& cert : r.certificates) all = all && cert.verdict;
  return all ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chaoskit: chaos certificates for subshifts of finite type"};
  app.require_subcommand(1);
  Common common;

  auto* check = app.add_subcommand("check", "transitivity, mixing, entropy, Devaney package, dichotomy");
  bool e = false, d = false, x = false;
  check->add_option("system", common.system, "system file")->required();
  check->add_flag("--entropy", e);
  check->add_flag("--devaney", d);
  check->add_flag("--dichotomy", x);
  check->add_option("--format", common.format)->check(CLI::IsMember({"text", "json"}));

  auto* tr = app.add_subcommand("trace", "trace a pseudo-orbit file");
  std::string file, eps = "2^-1", eta = "2^-3", relation = "all", csv;
  tr->add_option("system", common.system)->required();
  tr->add_option("pseudo_orbit", file)->required();
  tr->add_option("--eps", eps);

  auto* cl = app.add_subcommand("classify-tuple", "asymptotic, distal, Li-Yorke and scrambled verdicts");
  std::vector<std::string> points;
  Index horizon = 0;
  cl->add_option("system", common.system)->required();
  cl->add_option("--points", points)->required();
  cl->add_option("--eps", eps);
  auto* exact = cl->add_flag("--exact", "eventually periodic evidence (default)");
  cl->add_option("--horizon", horizon, "read prefixes up to N instead")->excludes(exact);
  cl->add_option("--relation", relation)
      ->check(CLI::IsMember({"all", "asymptotic", "distal", "li-yorke", "scrambled"}));

  std::size_t n = 2, family = 0;
  Index build_horizon = 1000000;
  std::vector<CLI::App*> builds;
  for (const char* name : {"build-asymptotic", "build-distal", "build-scrambled"}) {
    auto* b = app.add_subcommand(name, "construct tuples with certificates");
    b->add_option("system", common.system)->required();
    b->add_option("--n", n);
    b->add_option("--eta", eta);
    b->add_option("--points", points, "start points (defaults to periodic points)");
    if (std::string(name) == "build-asymptotic") b->add_option("--eps", eps);
    if (std::string(name) == "build-scrambled") {
      b->add_option("--family", family);
      b->add_option("--horizon", build_horizon, "last CSV checkpoint");
      b->add_option("--csv", csv);
    }
    builds.push_back(b);
  }

  CLI11_PARSE(app, argc, argv);
  try {
    if (*check) return cmd_check(common, e, d, x);
    if (*tr) return cmd_trace(common, file, eps);
    if (*cl) return cmd_classify(common, points, eps, horizon, relation);
    for (auto* b : builds)
      if (*b) return cmd_build(b->get_name(), common, n, eta, eps, family, build_horizon, csv, points);
  } catch (const NotIrreducible& ex) {
    std::cerr << "hypothesis failed: " << ex.what() << "\n";
    return kFailed;
  } catch (const SingleCycle& ex) {
    std::cerr << "hypothesis failed: " << ex.what() << "\n";
    return kFailed;
  } catch (const NoFixedPoint& ex) {
    std::cerr << "hypothesis failed: " << ex.what() << "\n";
    return kFailed;
  } catch (const ClassMismatch& ex) {
    std::cerr << "hypothesis failed: " << ex.what() << "\n";
    return kFailed;
  } catch (const DeltaTooLarge& ex) {
    std::cerr << "hypothesis failed: " << ex.what() << "\n";
    return kFailed;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kError;
  }
  return kError;
}
