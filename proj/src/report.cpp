#include "chaoskit/report.hpp"

#include <cstdio>
#include <sstream>

#include "chaoskit/counting.hpp"
#include "chaoskit/errors.hpp"

namespace chaoskit {

namespace {

std::string fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

}  // namespace

Report run_report(const CompiledSystem& c, const Analyses& a) {
  const Sft& s = c.system;
  Report r;
  r.name = c.name;
  r.system = s.summary();
  r.notes = c.notes;
  auto add = [&](std::string name, bool v, std::string op, nlohmann::json detail = {}) {
    r.verdicts.push_back({std::move(name), v, std::move(op), "EXACT", std::move(detail)});
  };
  const bool transitive = is_transitive(s);
  add("transitive", transitive, "is_transitive", {{"components", s.analysis().component_count}});
  const bool single = is_single_cycle(s);
  add("single_cycle", single, "is_single_cycle");
  if (transitive) {
    const auto pi = graph_period(s);
    add("mixing", is_mixing(s), "is_mixing", {{"period", pi.period}});
    add("weakly_mixing", is_weakly_mixing(s), "is_weakly_mixing");
  }
  if (a.entropy) {
    const auto e = entropy(s);
    nlohmann::json d{{"value", fixed(e.value, 7)},
                     {"spectral_radius", fixed(e.spectral_radius, 10)},
                     {"iterations", e.iterations}};
    if (e.charpoly_radius) d["charpoly_radius"] = fixed(*e.charpoly_radius, 10);
    if (c.reference_entropy) d["reference"] = fixed(*c.reference_entropy, 7);
    r.verdicts.push_back({"positive_entropy", e.value > 1e-12, "entropy", "NUMERIC", d});
  }
  if (a.devaney) {
    const auto pp = periodic_points(s, 1, 0);
    add("dense_periodic_points", transitive, "periodic_points", {{"fixed_points", pp.count}});
    add("shadowing", true, "subshift of finite type");
    add("devaney_package", transitive && !single, "is_transitive + periodic_points + is_single_cycle");
  }
  if (a.dichotomy) {
    if (transitive) {
      const auto v = classify_sensitive_or_equicontinuous(s);
      add(v.kind == Dichotomy::sensitive ? "SENSITIVE" : "PERIODIC", v.kind == Dichotomy::sensitive,
          "classify_sensitive_or_equicontinuous", to_json(v));
    } else {
      r.verdicts.push_back({"dichotomy", false, "classify_sensitive_or_equicontinuous", "REFUSED",
                            {{"reason", "transition graph is not irreducible"}}});
    }
  }
  r.hypotheses_hold = transitive && !single;
  if (!r.hypotheses_hold) r.notes.push_back("constructions refused: the system is not a non-periodic transitive SFT");
  return r;
}

std::string render_text(const Report& r) {
  std::ostringstream o;
  o << "system " << r.name << ": " << r.system.value("provenance", std::string()) << "\n";
  o << "  symbols " << r.system.value("symbols", 0) << "\n";
  for (const auto& v : r.verdicts) {
    o << "  " << (v.value ? "[+] " : "[-] ") << v.name;
    if (v.name == "positive_entropy") o << "  entropy " << v.detail["value"].get<std::string>();
    if (v.name == "mixing") o << "  period " << v.detail["period"];
    o << "  (" << v.operation << ", " << v.evidence << ")\n";
  }
  for (const auto& n : r.notes) o << "  note: " << n << "\n";
  return o.str();
}

nlohmann::json to_json(const Report& r) {
  nlohmann::json vs = nlohmann::json::array();
  for (const auto& v : r.verdicts)
    vs.push_back({{"name", v.name},
                  {"value", v.value},
                  {"operation", v.operation},
                  {"evidence", v.evidence},
                  {"detail", v.detail}});
  return {{"name", r.name}, {"system", r.system}, {"notes", r.notes}, {"verdicts", vs},
          {"hypotheses_hold", r.hypotheses_hold}};
}

std::vector<Index> family_checkpoints(const ScrambledFamilyReport& r, Index horizon) {
  std::vector<Index> out;
  const Index scale = r.period;
  for (std::size_t k = 0; k <= r.plan->last_block(); ++k) {
    const Index e = r.plan->end(k);
    if (e > horizon / scale) break;
    out.push_back(e * scale);
  }
  return out;
}

std::string density_csv(const ScrambledFamilyReport& r, Index horizon) {
  std::ostringstream o;
  o << "subtuple,checkpoint,relation,parameter,count,density\n";
  const auto cps = family_checkpoints(r, horizon);
  for (std::size_t ci = 0; ci < r.certificates.size(); ++ci) {
    const auto& cert = r.certificates[ci];
    std::string label;
    for (std::size_t m : r.certified[ci]) label += (label.empty() ? "" : "-") + std::to_string(m);
    auto emit = [&](const char* rel, const std::string& param, Condition c) {
      const auto counts = count_exact_at(cert.tuple, cps, c);
      for (std::size_t i = 0; i < cps.size(); ++i)
        o << label << "," << cps[i] << "," << rel << "," << param << "," << counts[i] << ","
          << fixed(static_cast<double>(counts[i]) / static_cast<double>(cps[i]), 9) << "\n";
    };
    for (double t : r.t_grid) emit("close", fixed(t, 9), Condition::close_below(t));
    emit("separated", fixed(r.delta_n, 9), Condition::separated_above(r.delta_n));
  }
  return o.str();
}

}  // namespace chaoskit
