#include <doctest.h>

#include <cmath>

#include "chaoskit/errors.hpp"
#include "chaoskit/report.hpp"
#include "chaoskit/zoo.hpp"
#include "oracles.hpp"

using namespace chaoskit;

namespace {

CompiledSystem from(const nlohmann::json& j) { return compile(parse_system_spec(j)); }

const Verdict& find(const Report& r, const std::string& name) {
  for (const auto& v : r.verdicts)
    if (v.name == name) return v;
  FAIL("missing verdict " << name);
  throw;
}

}  // namespace

TEST_CASE("compile system specs") {
  const auto f = from({{"kind", "full_shift"}, {"k", 2}});
  CHECK(f.system.size() == 2);
  CHECK(f.system.matrix() == BoolMatrix{{1, 1}, {1, 1}});
  const auto g = from({{"kind", "forbidden"}, {"alphabet", 2}, {"forbidden", {"11"}}});
  CHECK(g.system.matrix() == BoolMatrix{{1, 1}, {1, 0}});
  const auto o = from({{"kind", "product_with_odometer"}, {"k", 2}, {"depth", 3}});
  CHECK(o.system.size() == 16);
  CHECK(graph_period(o.system).period == 8);
  CHECK_FALSE(o.notes.empty());
  CHECK_THROWS_AS(parse_system_spec({{"kind", "mystery"}}), ParseError);
  CHECK_THROWS_AS(parse_system_spec(nlohmann::json::array()), ParseError);
  CHECK_THROWS_AS(from({{"kind", "matrix"}, {"matrix", {{1, 1}}}}), ParseError);
  CHECK_THROWS_AS(load_system_spec("/nonexistent/system.json"), ParseError);
}

TEST_CASE("markov maps") {
  const auto t = ingest_markov_map("tent_slope2", 2);
  CHECK(t.system.matrix() == BoolMatrix{{1, 1}, {1, 1}});
  CHECK(entropy(t.system).value == doctest::Approx(std::log(2.0)));
  REQUIRE(t.reference_entropy.has_value());
  const auto d = ingest_markov_map("doubling", 4);
  CHECK(d.system.size() == 4);
  for (const auto& row : d.system.matrix()) CHECK(std::count(row.begin(), row.end(), true) == 2);
  CHECK(entropy(d.system).value == doctest::Approx(std::log(2.0)).epsilon(1e-10));
  // even grids are Markov partitions for the tent map, every grid is one for doubling
  for (std::size_t g : {4, 6, 8}) CHECK(entropy(ingest_markov_map("tent_slope2", g).system).value == doctest::Approx(std::log(2.0)).epsilon(1e-10));
  for (std::size_t g : {3, 5, 7}) CHECK(entropy(ingest_markov_map("doubling", g).system).value == doctest::Approx(std::log(2.0)).epsilon(1e-10));
  CHECK(ingest_markov_map("tent_slope2", 3).notes.size() == 2);
  CHECK_THROWS_AS(ingest_markov_map("logistic", 4), UnknownMap);
}

TEST_CASE("reports") {
  const auto g = from({{"kind", "forbidden"}, {"alphabet", 2}, {"forbidden", {"11"}}, {"name", "golden"}});
  const Report r = run_report(g, {});
  CHECK(r.hypotheses_hold);
  CHECK(find(r, "transitive").value);
  CHECK(find(r, "mixing").value);
  CHECK(find(r, "devaney_package").value);
  CHECK(find(r, "SENSITIVE").value);
  CHECK(find(r, "positive_entropy").detail["value"] == "0.4812118");
  for (const auto& v : r.verdicts) {
    CHECK_FALSE(v.operation.empty());
    CHECK_FALSE(v.evidence.empty());
  }
  const Report id = run_report(from({{"kind", "matrix"}, {"matrix", {{1, 0}, {0, 1}}}}), {});
  CHECK_FALSE(id.hypotheses_hold);
  CHECK_FALSE(find(id, "transitive").value);
  CHECK(find(id, "dichotomy").evidence == "REFUSED");
  const Report cyc = run_report(from({{"kind", "matrix"}, {"matrix", {{0, 1}, {1, 0}}}}), {});
  CHECK_FALSE(cyc.hypotheses_hold);
  CHECK(find(cyc, "PERIODIC").detail["verdict"] == "PERIODIC");
}

TEST_CASE("reports are deterministic") {
  for (const auto& e : zoo()) {
    const auto c = compile(e.spec);
    CHECK(to_json(run_report(c, {})).dump() == to_json(run_report(c, {})).dump());
    CHECK(render_text(run_report(c, {})) == render_text(run_report(c, {})));
  }
}

TEST_CASE("density csv") {
  const auto r = build_scrambled_family(Sft::full_shift(2), 3, 2, 0x1p-3);
  const auto cps = family_checkpoints(r, 10000);
  CHECK_FALSE(cps.empty());
  for (Index c : cps) CHECK(c <= 10000);
  const std::string csv = density_csv(r, 10000);
  CHECK(csv.rfind("subtuple,checkpoint,relation,parameter,count,density\n", 0) == 0);
  const auto rows = static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) - 1;
  CHECK(rows == r.certified.size() * cps.size() * (r.t_grid.size() + 1));
  CHECK(csv == density_csv(r, 10000));
}

TEST_CASE("zoo regression constants") {
  for (const auto& e : zoo()) {
    const auto c = compile(e.spec);
    CAPTURE(e.name);
    if (e.name == "golden_mean" || e.name == "golden_matrix")
      CHECK(std::abs(entropy(c.system).value - 0.4812118) < 1e-7);
    if (e.name == "full2") {
      const std::uint64_t want[] = {2, 4, 8, 16, 32, 64, 128, 256};
      for (std::size_t p = 1; p <= 8; ++p) CHECK(periodic_points(c.system, p).count == want[p - 1]);
    }
    if (e.name == "full3") CHECK(periodic_points(c.system, 4).count == 81);
    if (e.name == "odometer3") CHECK(graph_period(c.system).period == 8);
    if (e.name == "bipartite3") CHECK(graph_period(c.system).period == 2);
    if (e.name == "swap" || e.name == "cycle3") CHECK(is_single_cycle(c.system));
    if (e.name == "identity2" || e.name == "triangular") CHECK_FALSE(is_transitive(c.system));
  }
}

TEST_CASE("property: zoo periodic counts equal closed walk enumeration") {
  for (const auto& e : zoo()) {
    const auto c = compile(e.spec);
    CAPTURE(e.name);
    for (std::size_t p = 1; p <= 8; ++p) CHECK(trace_of_power(c.system, p) == oracle::closed_walks(c.system.matrix(), p));
  }
}
