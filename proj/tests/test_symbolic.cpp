#include <doctest.h>

#include <cmath>
#include <random>

#include "chaoskit/errors.hpp"
#include "chaoskit/symbolic.hpp"
#include "oracles.hpp"

using namespace chaoskit;

namespace {

const Alphabet two(2);

EpPoint ep(const char* pre, const char* cyc) {
  return EpPoint(two, parse_word(pre, two), parse_word(cyc, two));
}

}  // namespace

TEST_CASE("symbol_at on eventually periodic and scheduled points") {
  CHECK(ep("01", "10").symbol_at(5) == 0);
  for (Index i : {0, 1, 17, 1000000}) CHECK(ep("", "0").symbol_at(i) == 0);
  const auto sp = ScheduledPoint::from_function(two, [](std::size_t k) {
    return PlanBlock{EpPoint::constant(two, static_cast<Symbol>(k % 2)), 0, k == 0 ? 3u : 2u};
  });
  CHECK(sp.symbol_at(4) == 1);
  CHECK(format_word(sp.realize(9)) == "000110011");
}

TEST_CASE("shift re-canonicalizes") {
  CHECK(shift(ep("1", "0"), 1) == ep("", "0"));
  CHECK(shift(ep("", "01"), 1) == ep("", "10"));
  CHECK(shift(ep("011", "10"), 4) == ep("", "01"));
}

TEST_CASE("canonical form: primitive cycle, minimal preperiod") {
  const EpPoint p = ep("0101", "0101");
  CHECK(p.preperiod().empty());
  CHECK(p.cycle() == parse_word("01", two));
  const EpPoint q = ep("110", "10");
  CHECK(format_point(q) == "1(10)");
  CHECK(format_point(parse_point("0(00)", two)) == "(0)");
}

TEST_CASE("property: canonical forms agree iff the sequences agree") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> bit(0, 1), len(0, 4), clen(1, 4);
  auto rand_word = [&](int n) {
    Word w;
    for (int i = 0; i < n; ++i) w.push_back(static_cast<Symbol>(bit(rng)));
    return w;
  };
  for (int trial = 0; trial < 2000; ++trial) {
    const Word p1 = rand_word(len(rng)), c1 = rand_word(clen(rng));
    const Word p2 = rand_word(len(rng)), c2 = rand_word(clen(rng));
    const EpPoint a(two, p1, c1), b(two, p2, c2);
    // Agreement on max preperiod + lcm of the cycles (at most 16 symbols) means equality.
    const bool same = oracle::expand(p1, c1, 64) == oracle::expand(p2, c2, 64);
    CHECK((a == b) == same);
    CHECK(oracle::expand(a, 64) == oracle::expand(p1, c1, 64));
  }
}

TEST_CASE("distance examples") {
  CHECK(dist(ep("", "0"), ep("", "0")).is_zero());
  CHECK(dist(ep("", "0"), ep("1", "0")).value() == 1.0);
  CHECK(dist(ep("00", "1"), ep("", "0")).value() == 0.25);
}

TEST_CASE("property: dist matches brute-force first disagreement") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> bit(0, 1), len(0, 5), clen(1, 5);
  auto rand_word = [&](int n) {
    Word w;
    for (int i = 0; i < n; ++i) w.push_back(static_cast<Symbol>(bit(rng)));
    return w;
  };
  for (int trial = 0; trial < 2000; ++trial) {
    const EpPoint a(two, rand_word(len(rng)), rand_word(clen(rng)));
    const EpPoint b(two, rand_word(len(rng)), rand_word(clen(rng)));
    const Word x = oracle::expand(a, 200), y = oracle::expand(b, 200);
    const Index k = oracle::agreement(x, 0, y, 0, 100);
    const Distance d = dist(a, b);
    if (k == 100)
      CHECK(d.is_zero());
    else
      CHECK(d.agreement() == k);
  }
}

TEST_CASE("threshold depths") {
  CHECK(closeness_depth(0.5) == 2);
  CHECK(closeness_depth(0.3) == 2);
  CHECK(closeness_depth(1.0) == 1);
  CHECK(closeness_depth(2.0) == 0);
  CHECK(*separation_depth(0.5) == 0);
  CHECK(*separation_depth(0.25) == 1);
  CHECK(*separation_depth(0.3) == 1);
  CHECK_FALSE(separation_depth(1.0).has_value());
  for (Index k = 0; k < 12; ++k) {
    const Distance d = Distance::from_agreement(k);
    for (double t : {1.0, 0.75, 0.5, 0.3, 0.25, 0.125, 0.01, 0.001}) {
      CHECK(d.less_than(t) == (std::ldexp(1.0, -static_cast<int>(k)) < t));
      CHECK(d.greater_than(t) == (std::ldexp(1.0, -static_cast<int>(k)) > t));
    }
  }
}

TEST_CASE("tuple diameter") {
  const EpPoint x = ep("1", "0"), z = ep("", "0"), o = ep("", "1");
  std::vector<EpPoint> same{x, x};
  CHECK(tuple_diameter(same, 3).is_zero());
  std::vector<EpPoint> apart{z, o};
  for (Index k : {0, 5, 99}) CHECK(tuple_diameter(apart, k).value() == 1.0);
  std::vector<EpPoint> t3{x, z, z};
  CHECK(tuple_diameter(t3, 1).is_zero());
  CHECK(tuple_diameter(t3, 0).value() == 1.0);
}

TEST_CASE("joint tail statistics") {
  std::vector<EpPoint> alt{ep("", "01"), ep("", "10")};
  const auto st = joint_tail_stats(alt);
  CHECK(st.min_distance().value() == 1.0);
  CHECK(st.max_distance().value() == 1.0);
  std::vector<EpPoint> asy{ep("1", "0"), ep("", "0")};
  const auto sa = joint_tail_stats(asy);
  CHECK(sa.max_distance().is_zero());
}

TEST_CASE("property: joint tail stats match brute force over two joint periods") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> bit(0, 1), len(0, 3), clen(1, 4);
  auto rand_word = [&](int n) {
    Word w;
    for (int i = 0; i < n; ++i) w.push_back(static_cast<Symbol>(bit(rng)));
    return w;
  };
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<EpPoint> pts;
    for (int i = 0; i < 3; ++i) pts.emplace_back(two, rand_word(len(rng)), rand_word(clen(rng)));
    const auto st = joint_tail_stats(pts);
    std::vector<Word> xs;
    for (const auto& p : pts) xs.push_back(oracle::expand(p, 400));
    double lo = 2, hi = -1;
    for (Index t = 3; t < 3 + 2 * 12; ++t) {
      double dmin = 2, dmax = 0;
      for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) {
          const double d = oracle::distance(oracle::agreement(xs[a], t, xs[b], t, 200), 200);
          dmin = std::min(dmin, d);
          dmax = std::max(dmax, d);
        }
      lo = std::min(lo, dmin);
      hi = std::max(hi, dmax);
    }
    CHECK(st.min_distance().value() == lo);
    CHECK(st.max_distance().value() == hi);
  }
}

TEST_CASE("parse and format round trip") {
  for (const char* s : {"(0)", "1(0)", "01(10)", "(001)", "1101(0)"}) CHECK(format_point(parse_point(s, two)) == s);
  CHECK_THROWS_AS(parse_point("012", two), ParseError);
  CHECK_THROWS_AS(parse_point("(2)", two), Error);
  CHECK_THROWS_AS(parse_point("1()", two), ParseError);
}

TEST_CASE("scheduled points: realize equals block concatenation") {
  std::mt19937_64 rng(3);
  std::vector<EpPoint> sources{ep("", "0"), ep("1", "01"), ep("00", "1"), ep("", "011")};
  std::vector<PlanBlock> blocks;
  for (int k = 0; k < 40; ++k)
    blocks.push_back({sources[rng() % 4], rng() % 5, 1 + rng() % 9});
  const auto sp = ScheduledPoint::from_function(two, [blocks](std::size_t k) { return blocks[k % blocks.size()]; });
  Word want;
  for (const auto& b : blocks) {
    const Word w = oracle::expand(b.source, b.offset + b.length);
    want.insert(want.end(), w.begin() + b.offset, w.end());
  }
  CHECK(sp.realize(want.size()) == want);
  for (Index i = 0; i < want.size(); i += 7) CHECK(sp.symbol_at(i) == want[i]);
  CHECK(window_of(Point(sp), 10, 20) == Word(want.begin() + 10, want.begin() + 30));
}

TEST_CASE("lcm guard") {
  CHECK(lcm_checked(4, 6) == 12);
  CHECK_THROWS(lcm_checked(Index{1} << 40, (Index{1} << 40) - 1));
}
