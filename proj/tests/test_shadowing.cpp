#include <doctest.h>

#include <random>

#include "chaoskit/errors.hpp"
#include "chaoskit/shadowing.hpp"
#include "oracles.hpp"

using namespace chaoskit;

namespace {

const Alphabet two(2);

EpPoint ep(const char* lit) { return parse_point(lit, two); }

Sft golden() { return higher_block_recode(two, {parse_word("11", two)}); }

// Brute-force tracing check: d(sigma^n z, x_n) < eps for n < listed + extra,
// where x_n continues as the orbit of the last entry.
bool traces_by_enumeration(const std::vector<EpPoint>& xs, const EpPoint& z, double eps, Index extra) {
  const Index k = closeness_depth(eps);
  const Index total = xs.size() + extra;
  const Word zw = oracle::expand(z, total + k + 1);
  const Word last = oracle::expand(xs.back(), extra + k + 2);
  for (Index n = 0; n < total; ++n) {
    Word xn;
    Index off = 0;
    if (n < xs.size()) {
      xn = oracle::expand(xs[n], k + 1);
    } else {
      xn = last;
      off = n - (xs.size() - 1);
    }
    if (oracle::agreement(zw, n, xn, off, k) < k) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("validate examples") {
  const Sft f = Sft::full_shift(2);
  const EpPoint x = ep("011(01)");
  CHECK(validate(make_pseudo_orbit(f, {x, shift(x, 1), shift(x, 2)}, 0x1p-10)));
  CHECK(validate(make_pseudo_orbit(f, {ep("(0)"), ep("0(1)")}, 0.75)));
  CHECK_FALSE(validate(make_pseudo_orbit(f, {ep("(0)"), ep("0(1)")}, 0.25)));
  CHECK(jump(make_pseudo_orbit(f, {ep("(0)"), ep("0(1)")}, 0.75), 0).value() == 0.5);
  CHECK_THROWS_AS(make_pseudo_orbit(golden(), {ep("1(1)")}, 0.25), NotAdmissible);
}

TEST_CASE("shadowing modulus") {
  CHECK(shadowing_modulus(0.5) == 0.125);
  CHECK(shadowing_modulus(1.0) == 0.25);
  CHECK(shadowing_modulus(0x1p-10) == 0x1p-12);
  CHECK(shadowing_modulus(0.3) == 0x1p-4);
  for (int e = 0; e < 30; ++e) CHECK(shadowing_modulus(std::ldexp(1.0, -e)) < std::ldexp(1.0, -e));
}

TEST_CASE("trace of a true orbit") {
  const Sft f = Sft::full_shift(2);
  const EpPoint x = ep("0110(001)");
  const auto po = make_pseudo_orbit(f, {x, shift(x, 1), shift(x, 2), shift(x, 3)}, 0.125);
  const auto c = trace(po, 0.5);
  CHECK(c.point == x);
  CHECK(c.max_distance.is_zero());
  CHECK(c.holds);
}

TEST_CASE("trace of a drifting pseudo-orbit at delta 1/8") {
  // every jump is 1/16: the entries drift away from the orbit of x0
  const Sft f = Sft::full_shift(2);
  const EpPoint x0 = ep("00000(1)");
  const EpPoint x1 = ep("00001(0)");
  const EpPoint x2 = ep("00010(1)");
  const auto po = make_pseudo_orbit(f, {x0, x1, x2}, 0.125);
  REQUIRE(validate(po));
  const auto c = trace(po, 0.5);
  CHECK(format_point(c.point) == "0000010(1)");
  CHECK(c.holds);
  CHECK(c.max_distance.value() <= 0.25);
  CHECK(traces_by_enumeration(po.entries, c.point, 0.5, 100));
}

TEST_CASE("trace preconditions") {
  const Sft f = Sft::full_shift(2);
  CHECK_THROWS_AS(trace(make_pseudo_orbit(f, {ep("(0)"), ep("0(1)")}, 0.75)), DeltaTooLarge);
  CHECK_THROWS_AS(trace(make_pseudo_orbit(f, {ep("(0)"), ep("(1)")}, 0.25)), NotValidated);
}

TEST_CASE("readout of a short pseudo-orbit") {
  const EpPoint z = first_symbol_readout({ep("(0)"), ep("0(1)")});
  CHECK(format_point(z) == "00(1)");
  CHECK(dist(z, ep("(0)")).value() == 0.25);
}

TEST_CASE("concatenated pseudo-orbits") {
  const Sft f = Sft::full_shift(2);
  const EpPoint y = ep("0101(0)");
  const auto one = concat_pseudo_orbit(f, {{y, 3}}, 0.125);
  CHECK(one.entries.size() == 3);
  CHECK(trace(one, 0.5).point == y);
  const EpPoint y2 = ep("1101(0)");
  // asymptotic pattern: y2 for 4 steps, then the orbit of y from time 4
  const auto two_seg = concat_pseudo_orbit(f, {{y2, 4}, {shift(y, 4), 1}}, 0.125);
  CHECK(two_seg.validated);
  CHECK(trace(two_seg, 0.5).point == y2);
  CHECK_THROWS_AS(concat_pseudo_orbit(f, {{ep("(0)"), 2}, {ep("(1)"), 1}}, 0.125), SeamTooWide);
}

TEST_CASE("property: golden mean pseudo-orbits trace at 2^-3") {
  std::mt19937_64 rng(31);
  const Sft g = golden();
  for (int trial = 0; trial < 100; ++trial) {
    const auto xs = oracle::random_pseudo_orbit(rng, g, 0x1p-5, 50);
    const auto po = make_pseudo_orbit(g, xs, 0x1p-5);
    REQUIRE(po.validated);
    const auto c = trace(po, 0.125);
    CHECK(c.holds);
    CHECK(g.admissible(c.point));
    const Word w = oracle::expand(c.point, 200);
    for (std::size_t i = 0; i + 1 < w.size(); ++i) CHECK_FALSE((w[i] == 1 && w[i + 1] == 1));
    CHECK(traces_by_enumeration(xs, c.point, 0.125, 100));
  }
}
