#include <doctest.h>

#include <random>

#include "chaoskit/constructions.hpp"
#include "chaoskit/counting.hpp"
#include "chaoskit/errors.hpp"
#include "oracles.hpp"

using namespace chaoskit;

namespace {

const Alphabet two(2);

EpPoint ep(const char* lit) { return parse_point(lit, two); }

Sft golden() { return higher_block_recode(two, {parse_word("11", two)}); }
Sft loops() { return essentialize({{1, 0}, {0, 1}}); }
Sft swap2() { return essentialize({{0, 1}, {1, 0}}); }
Sft bipartite() { return essentialize({{0, 1, 1}, {1, 0, 0}, {1, 0, 0}}); }

std::vector<Point> members(const ScrambledFamilyReport& r, const std::vector<std::size_t>& idx) {
  std::vector<Point> out;
  for (std::size_t i : idx) out.push_back(r.points[i]);
  return out;
}

// Realized prefixes checked symbol by symbol against the transition matrix.
void check_admissible(const Sft& s, const std::vector<Point>& pts, Index n) {
  for (const auto& p : pts) {
    const Word w = prefix_of(p, n);
    for (Index i = 0; i + 1 < n; ++i) REQUIRE(s.allowed(w[i], w[i + 1]));
  }
}

// Brute-force closeness and separation counts over realized prefixes at every checkpoint.
void check_against_oracle(const ScrambledFamilyReport& r, const std::vector<std::size_t>& sub,
                          const std::vector<Index>& cps) {
  const auto pts = members(r, sub);
  std::vector<Word> xs;
  for (const auto& p : pts) xs.push_back(prefix_of(p, cps.back() + 64));
  const auto sep = count_exact_at(pts, cps, Condition::separated_above(r.delta_n));
  for (std::size_t j = 0; j < cps.size(); ++j) CHECK(sep[j] == oracle::count_far(xs, cps[j], r.delta_n));
  for (double t : r.t_grid) {
    const auto close = count_exact_at(pts, cps, Condition::close_below(t));
    for (std::size_t j = 0; j < cps.size(); ++j) CHECK(close[j] == oracle::count_close(xs, cps[j], t));
  }
}

}  // namespace

TEST_CASE("distal targets") {
  const auto f2 = pick_distal_sensitive_targets(Sft::full_shift(2), 2);
  CHECK(format_point(f2.targets[0]) == "(0)");
  CHECK(format_point(f2.targets[1]) == "(1)");
  CHECK(f2.separation.value() == 1.0);
  CHECK(f2.eps == 0.5);
  const auto f3 = pick_distal_sensitive_targets(Sft::full_shift(2), 3);
  CHECK(format_point(f3.targets[2]) == "(01)");
  CHECK(f3.separation.value() == 0.5);
  CHECK(f3.eps == 0.25);
  const auto g = pick_distal_sensitive_targets(golden(), 2);
  CHECK(format_point(g.targets[1]) == "(01)");
  CHECK(g.separation.value() == 0.5);
  for (const auto& y : g.sensitivity.points) CHECK(y.prefix(g.cylinder.size()) == g.cylinder);
  CHECK_THROWS_AS(pick_distal_sensitive_targets(swap2(), 2), SingleCycle);
}

TEST_CASE("asymptotic tuples") {
  const auto t = build_asymptotic_tuple(Sft::full_shift(2), {ep("(0)"), ep("(1)")}, 0.5, 0.125);
  CHECK(t.certificate.verdict);
  CHECK(t.certificate.evidence == Evidence::exact);
  CHECK(t.certificate.record["limsup_diameter"] == "0");
  CHECK(shift(t.points[0], t.witness.time) == shift(t.points[1], t.witness.time));
  for (const auto& d : t.approximation) CHECK(d.value() <= 0.25);
  const auto diag = build_asymptotic_tuple(golden(), {ep("0(01)"), ep("0(01)")}, 0.5, 0.125);
  CHECK(diag.points[0] == diag.points[1]);
  CHECK(diag.certificate.verdict);
  CHECK_THROWS_AS(build_asymptotic_tuple(loops(), {ep("(0)"), ep("(1)")}, 0.5, 0.125), NotIrreducible);
  CHECK_THROWS_AS(build_asymptotic_tuple(Sft::full_shift(2), {ep("(0)"), ep("(1)")}, 0.5, 0.25),
                  PreconditionViolation);
}

TEST_CASE("distal tuples") {
  const auto t = build_distal_tuple(Sft::full_shift(2), {ep("1(0)"), ep("(0)")}, 0.0625);
  CHECK(t.certificate.verdict);
  CHECK(t.certificate.evidence == Evidence::exact);
  CHECK(t.certificate.record["liminf_min_distance"] == "1");
  for (const auto& d : t.approximation) CHECK(d.value() <= 0.125);
  const auto same = build_distal_tuple(Sft::full_shift(2), {ep("(0)"), ep("(1)")}, 0.0625);
  CHECK(same.certificate.verdict);
  CHECK(same.points[0].prefix(4) == Word{0, 0, 0, 0});
  CHECK_THROWS_AS(build_distal_tuple(loops(), {ep("(0)"), ep("(1)")}, 0.0625), NotIrreducible);
  CHECK_THROWS_AS(build_distal_tuple(swap2(), {ep("(01)"), ep("(10)")}, 0.0625), SingleCycle);
}

TEST_CASE("property: constructions round trip on random tuples") {
  std::mt19937_64 rng(60);
  for (int trial = 0; trial < 60; ++trial) {
    const Sft s = trial % 2 ? golden() : Sft::full_shift(2);
    const std::size_t n = 2 + rng() % 2;
    std::vector<EpPoint> xs;
    for (std::size_t i = 0; i < n; ++i) xs.push_back(oracle::random_point(rng, s));
    const double eta = std::ldexp(1.0, -3 - static_cast<int>(rng() % 4));
    const auto a = build_asymptotic_tuple(s, xs, 0.5, eta);
    CHECK(a.certificate.verdict);
    CHECK(a.certificate.evidence == Evidence::exact);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(dist(xs[i], a.points[i]).less_than(2 * eta));
      CHECK(s.admissible(a.points[i]));
    }
    const double deta = pick_distal_sensitive_targets(s, n).eps / 4;
    const auto d = build_distal_tuple(s, xs, std::min(eta, deta));
    CHECK(d.certificate.verdict);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(dist(xs[i], d.points[i]).less_than(2 * std::min(eta, deta)));
      CHECK(s.admissible(d.points[i]));
    }
  }
}

TEST_CASE("scrambled pair on the full shift") {
  const auto r = build_dist_scrambled_tuple(Sft::full_shift(2), {ep("(0)"), ep("(1)")}, 2, 0x1p-3);
  CHECK(r.delta_n == 0.5);
  REQUIRE(r.certificates.size() == 1);
  CHECK(r.certificates[0].verdict);
  CHECK(r.certificates[0].evidence == Evidence::exact);
  CHECK(r.checkpoints.size() == 8);
  check_admissible(r.system, r.points, 20000);
  for (std::size_t i = 0; i < 2; ++i) CHECK(prefix_of(r.points[i], 4) == r.starts[i].prefix(4));
  std::vector<Index> cps;
  for (Index c : r.checkpoints)
    if (c <= 30000) cps.push_back(c);
  REQUIRE(cps.size() >= 5);
  check_against_oracle(r, {0, 1}, cps);
}

TEST_CASE("scrambled pair from a diagonal start") {
  const auto r = build_dist_scrambled_tuple(golden(), {ep("(0)"), ep("(0)")}, 2, 0x1p-3);
  CHECK(prefix_of(r.points[0], r.plan->end(3)) != prefix_of(r.points[1], r.plan->end(3)));
  CHECK(r.certificates[0].verdict);
  CHECK_THROWS_AS(build_dist_scrambled_tuple(swap2(), {ep("(01)"), ep("(10)")}, 2, 0x1p-3), SingleCycle);
}

TEST_CASE("monotone density envelope") {
  const auto r = build_dist_scrambled_tuple(Sft::full_shift(2), {ep("(0)"), ep("(1)")}, 2, 0x1p-3);
  const BlockPlan& plan = *r.plan;
  std::vector<Index> asy, dis;
  std::vector<std::size_t> asy_k, dis_k;
  // counts at the end of block k read into block k + 1
  for (std::size_t k = 1; k < std::min<std::size_t>(plan.last_block(), 24); ++k) {
    (plan.mode(k) == BlockMode::asymptotic ? asy : dis).push_back(plan.end(k));
    (plan.mode(k) == BlockMode::asymptotic ? asy_k : dis_k).push_back(k);
  }
  auto check_envelope = [](const std::vector<Index>& counts, const std::vector<Index>& ends,
                           const std::vector<std::size_t>& ks) {
    Rational previous = 0;
    for (std::size_t j = 0; j < ends.size(); ++j) {
      const Rational d(counts[j], ends[j]);
      if (ks[j] >= 5) CHECK(d >= 1 - Rational(1, ks[j]));
      if (j > 0) CHECK(d >= previous);
      previous = d;
    }
  };
  check_envelope(count_exact_at(r.points, dis, Condition::separated_above(0.5)), dis, dis_k);
  for (double t : r.t_grid) check_envelope(count_exact_at(r.points, asy, Condition::close_below(t)), asy, asy_k);
}

TEST_CASE("families") {
  const auto r = build_scrambled_family(Sft::full_shift(2), 5, 2, 0x1p-3);
  CHECK(r.points.size() == 5);
  CHECK(r.subtuples.size() == 10);
  REQUIRE(r.certificates.size() == 10);
  for (const auto& c : r.certificates) {
    CHECK(c.verdict);
    CHECK(c.evidence == Evidence::exact);
  }
  const auto pair = build_scrambled_family(Sft::full_shift(2), 2, 2, 0x1p-3, std::vector{ep("(0)"), ep("(1)")});
  const auto direct = build_dist_scrambled_tuple(Sft::full_shift(2), {ep("(0)"), ep("(1)")}, 2, 0x1p-3);
  for (std::size_t i = 0; i < 2; ++i) CHECK(prefix_of(pair.points[i], 5000) == prefix_of(direct.points[i], 5000));
  const auto g = build_scrambled_family(golden(), 3, 3, 0x1p-3);
  REQUIRE(g.certificates.size() == 1);
  CHECK(g.certificates[0].verdict);
  for (const auto& v : g.targets) CHECK(v.cycle().size() <= 4);
  CHECK(g.delta_n == joint_tail_stats(g.targets).min_distance().value() / 2);
  check_admissible(golden(), g.points, 20000);
  CHECK_THROWS_AS(build_scrambled_family(Sft::full_shift(2), 1, 2, 0x1p-3), PreconditionViolation);
}

TEST_CASE("periodic case") {
  const auto f = periodic_case(Sft::full_shift(2), 2, 0x1p-3);
  CHECK(f.period == 1);
  CHECK(f.certificates[0].evidence == Evidence::exact);
  const auto g = periodic_case(golden(), 2, 0x1p-3);
  CHECK(g.period == 1);
  CHECK(g.certificates[0].verdict);

  const Sft b = bipartite();
  const auto r = periodic_case(b, 2, 0x1p-3);
  CHECK(r.period == 2);
  REQUIRE(r.construction_delta.has_value());
  CHECK(r.certificates.size() == 1);
  const auto& c = r.certificates[0];
  CHECK(c.verdict);
  CHECK(c.evidence == Evidence::horizon);
  CHECK(c.parameters["distortion_factor"].get<double>() <= c.parameters["distortion_bound"].get<double>());
  check_admissible(b, r.points, 50000);
  // decoded checkpoints are the power-system block ends times the period
  for (std::size_t k = 0; k < r.checkpoints.size(); ++k) CHECK(r.checkpoints[k] == 2 * r.plan->end(k));
  CHECK_THROWS_AS(periodic_case(swap2(), 2, 0x1p-3), SingleCycle);
}

TEST_CASE("regionally proximal tuples through a fixed point") {
  const auto f = rp_via_fixed_point(Sft::full_shift(2), {0, 3, 7}, 0.25);
  CHECK(f.fixed == 0);
  CHECK(f.approximant.cycle() == Word{0});
  CHECK(tuple_diameter(f.witness.points, f.witness.time).is_zero());
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(dist(f.tuple[i], f.witness.points[i]).less_than(0.25));
    CHECK(f.tuple[i] == shift(f.approximant, f.shifts[i]));
  }
  // every allowed 3-word occurs in the approximant
  const Word w = oracle::expand(f.approximant, f.approximant.preperiod().size() + 3);
  for (unsigned code = 0; code < 8; ++code) {
    const Word u{code >> 2 & 1u, code >> 1 & 1u, code & 1u};
    CHECK(std::search(w.begin(), w.end(), u.begin(), u.end()) != w.end());
  }
  const auto g = rp_via_fixed_point(golden(), {1, 2}, 0.125);
  CHECK(g.fixed == 0);
  CHECK(golden().admissible(g.approximant));
  for (const auto& y : g.witness.points) CHECK(golden().admissible(y));
  CHECK_THROWS_AS(rp_via_fixed_point(swap2(), {0, 1}, 0.25), NoFixedPoint);
}
