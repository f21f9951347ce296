#include "chaoskit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "chaoskit/counting.hpp"
#include "chaoskit/errors.hpp"
#include "chaoskit/plan.hpp"

namespace chaoskit {

std::string to_string(const Rational& r) { return r.str(); }

const char* evidence_name(Evidence e) { return e == Evidence::exact ? "EXACT" : "HORIZON"; }

std::vector<Index> default_checkpoints() {
  std::vector<Index> out;
  for (int e = 10; e <= 24; e += 2) out.push_back(Index{1} << e);
  return out;
}

std::vector<double> default_t_grid() {
  std::vector<double> out;
  for (int e = 1; e <= 8; ++e) out.push_back(std::ldexp(1.0, -e));
  return out;
}

namespace {

std::string dyadic(double x) {
  int e = 0;
  const double m = std::frexp(x, &e);
  if (m == 0.5) return "2^" + std::to_string(e - 1);
  return std::to_string(x);
}

Rational ratio(Index num, Index den) {
  return Rational(boost::multiprecision::cpp_int(num), boost::multiprecision::cpp_int(den));
}

std::optional<std::vector<EpPoint>> all_eventually_periodic(const std::vector<Point>& tuple) {
  std::vector<EpPoint> out;
  for (const auto& p : tuple) {
    const auto* e = std::get_if<EpPoint>(&p);
    if (!e) return std::nullopt;
    out.push_back(*e);
  }
  return out;
}

void require_tuple(const std::vector<Point>& tuple) {
  if (tuple.size() < 2) throw PreconditionViolation("a tuple needs at least two points");
  for (const auto& p : tuple)
    if (!(alphabet_of(p) == alphabet_of(tuple[0])))
      throw AlphabetMismatch("tuple points over different alphabets");
}

void require_distinct(const std::vector<Point>& tuple) {
  for (std::size_t i = 0; i < tuple.size(); ++i)
    for (std::size_t j = i + 1; j < tuple.size(); ++j) {
      const auto d = dist(tuple[i], tuple[j]);
      if (!d || d->is_zero())
        throw PreconditionViolation("tuple points " + std::to_string(i) + " and " +
                                    std::to_string(j) + " are not distinct");
    }
}

std::vector<Index> checkpoints_for(const HorizonOptions& o, Index window) {
  std::vector<Index> cs = o.checkpoints.empty() ? default_checkpoints() : o.checkpoints;
  if (o.checkpoints.empty()) {
    const Index cap = max_horizon();
    std::erase_if(cs, [&](Index c) { return c + window > cap; });
  }
  if (cs.empty()) throw PreconditionViolation("no checkpoint fits the horizon cap");
  for (std::size_t i = 1; i < cs.size(); ++i)
    if (cs[i] <= cs[i - 1]) throw PreconditionViolation("checkpoints must increase");
  return cs;
}

TupleCertificate start_certificate(const std::vector<Point>& tuple, std::string relation,
                                   nlohmann::json parameters) {
  TupleCertificate c;
  c.tuple = tuple;
  c.relation = std::move(relation);
  c.parameters = std::move(parameters);
  return c;
}

// Late-window check: the condition holds at every time of [c/2, c).
void horizon_every_late_time(TupleCertificate& cert, const std::vector<Point>& tuple, Condition cond,
                             const HorizonOptions& options) {
  const auto cs = checkpoints_for(options, cond.window());
  std::vector<Index> marks;
  for (Index c : cs) {
    marks.push_back(c / 2);
    marks.push_back(c);
  }
  std::sort(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end()), marks.end());
  const auto counts = count_horizon_at(tuple, marks, cond);
  auto at = [&](Index m) {
    return counts[static_cast<std::size_t>(std::lower_bound(marks.begin(), marks.end(), m) - marks.begin())];
  };
  nlohmann::json rows = nlohmann::json::array();
  bool last = false;
  for (Index c : cs) {
    const Index hits = at(c) - at(c / 2);
    last = hits == c - c / 2;
    rows.push_back({{"checkpoint", c}, {"window", {c / 2, c}}, {"hits", hits}, {"size", c - c / 2}});
  }
  cert.verdict = last;
  cert.evidence = Evidence::horizon;
  cert.horizon = cs.back();
  cert.record["windows"] = rows;
}

// The plan shared by every point of the tuple, with their member indices.
struct PlanTuple {
  std::shared_ptr<const BlockPlan> plan;
  std::vector<std::size_t> members;
};

std::optional<PlanTuple> recognize_plan(const std::vector<Point>& tuple) {
  PlanTuple out;
  for (const auto& p : tuple) {
    const auto* r = plan_rule_of(p);
    if (!r) return std::nullopt;
    if (!out.plan) out.plan = r->plan();
    if (out.plan != r->plan()) return std::nullopt;
    out.members.push_back(r->member());
  }
  std::set<std::size_t> distinct(out.members.begin(), out.members.end());
  if (distinct.size() != out.members.size()) return std::nullopt;
  return out;
}

// Slots giving every member of the tuple a target, with the tail separation of
// the targets the tuple follows there.
std::vector<std::pair<std::size_t, Distance>> covering_slots(const PlanTuple& pt) {
  std::vector<std::pair<std::size_t, Distance>> out;
  const auto& setup = pt.plan->setup();
  for (std::size_t s = 0; s < setup.distal_slots.size(); ++s) {
    const auto& slot = setup.distal_slots[s];
    std::vector<EpPoint> followed;
    for (std::size_t m : pt.members) {
      if (slot[m] < 0) break;
      followed.push_back(setup.targets[static_cast<std::size_t>(slot[m])]);
    }
    if (followed.size() != pt.members.size()) continue;
    out.emplace_back(s, joint_tail_stats(followed).min_distance());
  }
  return out;
}

TupleCertificate plan_scrambled(const std::vector<Point>& tuple, const PlanTuple& pt, double delta,
                                const std::vector<double>& grid, const HorizonOptions& options,
                                TupleCertificate cert) {
  const BlockPlan& plan = *pt.plan;
  const Index a = *separation_depth(delta);
  const Index bound = plan.seam_bound();
  const std::size_t last = std::min(plan.last_block(), options.exact_blocks);
  cert.evidence = Evidence::exact;
  cert.horizon = 0;
  cert.record["members"] = pt.members;
  cert.record["argument"] =
      "ASYMPTOTIC block k: after a seam of length l_k <= B every member follows the common "
      "point, so closeness below t holds on at least L_k - l_k - (K - 1) of its times, where K "
      "is the closeness depth of t. DISTAL block k of a slot containing the tuple: the members "
      "follow targets whose tail separation exceeds delta, so separation holds on at least "
      "L_k - l_k - a of its times, a the separation depth of delta. With "
      "L_k >= k S_{k-1} + 1 the density at the block end is at least k/(k+1) - C/S_k, C "
      "= B + max(K - 1, a), which tends to 1; both upper densities are 1.";
  cert.record["seam_bound"] = bound;

  bool ok = true;
  const auto slots = covering_slots(pt);
  nlohmann::json slot_rows = nlohmann::json::array();
  std::set<std::size_t> good_slots;
  for (const auto& [s, sep] : slots) {
    const bool separated = sep.greater_than(delta);
    slot_rows.push_back({{"slot", s}, {"target_separation", sep.to_string()}, {"exceeds_delta", separated}});
    if (separated) good_slots.insert(s);
  }
  cert.record["covering_slots"] = slot_rows;
  if (good_slots.empty()) ok = false;

  nlohmann::json close_rows = nlohmann::json::array();
  for (double t : grid) {
    const Condition c = Condition::close_below(t);
    nlohmann::json rows = nlohmann::json::array();
    bool seen = false;
    for (std::size_t k = 1; k <= last; ++k) {
      if (plan.mode(k) != BlockMode::asymptotic) continue;
      const Index end = plan.end(k);
      const Index count = count_exact(tuple, 0, end, c);
      const Index len = plan.length(k), seam = plan.seam_length(k);
      const Index floor_count = len > seam + c.depth - 1 ? len - seam - (c.depth - 1) : 0;
      const Index uniform = bound + c.depth - 1;
      const bool holds = count >= floor_count;
      ok = ok && holds;
      seen = true;
      rows.push_back({{"block", k},
                      {"checkpoint", end},
                      {"count", count},
                      {"density", to_string(ratio(count, end))},
                      {"lower_bound", to_string(ratio(len > uniform ? len - uniform : 0, end))},
                      {"bound_holds", holds}});
    }
    ok = ok && seen;
    close_rows.push_back({{"t", dyadic(t)}, {"depth", c.depth}, {"blocks", rows}});
  }
  cert.record["closeness"] = close_rows;

  const Condition sep = Condition::separated_above(delta);
  nlohmann::json sep_rows = nlohmann::json::array();
  bool seen = false;
  for (std::size_t k = 1; k <= last; ++k) {
    if (plan.mode(k) != BlockMode::distal || !good_slots.count(plan.slot(k))) continue;
    const Index end = plan.end(k);
    const Index count = count_exact(tuple, 0, end, sep);
    const Index len = plan.length(k), seam = plan.seam_length(k);
    const Index floor_count = len > seam + a ? len - seam - a : 0;
    const Index uniform = bound + a;
    const bool holds = count >= floor_count;
    ok = ok && holds;
    seen = true;
    sep_rows.push_back({{"block", k},
                        {"checkpoint", end},
                        {"count", count},
                        {"density", to_string(ratio(count, end))},
                        {"lower_bound", to_string(ratio(len > uniform ? len - uniform : 0, end))},
                        {"bound_holds", holds}});
  }
  ok = ok && seen;
  cert.record["separation"] = {{"depth", a}, {"blocks", sep_rows}};
  cert.verdict = ok;
  return cert;
}

}  // namespace

nlohmann::json to_json(const TupleCertificate& c) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : c.tuple) {
    if (const auto* e = std::get_if<EpPoint>(&p))
      pts.push_back(format_point(*e));
    else if (const auto* r = plan_rule_of(p))
      pts.push_back({{"plan_member", r->member()}});
    else
      pts.push_back(to_json(p));
  }
  nlohmann::json j{{"relation", c.relation},
                   {"parameters", c.parameters},
                   {"verdict", c.verdict},
                   {"evidence", evidence_name(c.evidence)},
                   {"tuple", pts},
                   {"record", c.record}};
  if (c.evidence == Evidence::horizon) j["horizon"] = c.horizon;
  return j;
}

Rational phi(const Point& x, const Point& y, Index n, double t) {
  if (n == 0) throw PreconditionViolation("phi needs a positive horizon");
  const std::vector<Point> pair{x, y};
  return ratio(count_exact(pair, 0, n, Condition::close_below(t)), n);
}

PhiLimits phi_limits_exact(const EpPoint& x, const EpPoint& y, double t) {
  const std::vector<EpPoint> pair{x, y};
  const TailStats st = joint_tail_stats(pair);
  const Rational v = ratio(st.count_all_closer(t), st.period);
  return {v, v, true};
}

DensityResult upper_density(const PeriodicTailSet& set) {
  if (set.pattern.empty()) throw PreconditionViolation("periodic tail pattern is empty");
  const auto hits = static_cast<Index>(std::count(set.pattern.begin(), set.pattern.end(), true));
  DensityResult r;
  r.value = ratio(hits, set.pattern.size());
  r.evidence = Evidence::exact;
  return r;
}

DensityResult upper_density(const BlockUnionSet& set) {
  if (set.blocks == 0) throw PreconditionViolation("block union needs at least one interval");
  DensityResult r;
  boost::multiprecision::cpp_int count = 0;
  Index previous_end = 0;
  for (std::size_t k = 0; k < set.blocks; ++k) {
    const auto [a, b] = set.interval(k);
    if (a > b || a < previous_end) throw PreconditionViolation("intervals must be disjoint and increasing");
    previous_end = b;
    count += b - a;
    if (b == 0) continue;
    r.checkpoints.emplace_back(b, Rational(count, boost::multiprecision::cpp_int(b)));
  }
  if (r.checkpoints.empty()) {
    r.value = 0;
    return r;
  }
  r.value = r.checkpoints.back().second;
  r.evidence = Evidence::horizon;
  const std::size_t n = r.checkpoints.size();
  if (n >= 5) {
    const Rational d1 = r.checkpoints[n - 3].second - r.checkpoints[n - 4].second;
    const Rational d2 = r.checkpoints[n - 2].second - r.checkpoints[n - 3].second;
    const Rational d3 = r.checkpoints[n - 1].second - r.checkpoints[n - 2].second;
    const Rational d0 = r.checkpoints[n - 4].second - r.checkpoints[n - 5].second;
    if (d0 != 0 && d1 != 0 && d2 != 0) {
      const Rational rho = d1 / d0;
      if (d2 / d1 == rho && d3 / d2 == rho && rho > 0 && rho < 1) {
        r.geometric_limit = r.checkpoints.back().second + d3 * rho / (1 - rho);
        r.value = *r.geometric_limit;
        r.evidence = Evidence::exact;
      }
    } else if (d0 == 0 && d1 == 0 && d2 == 0 && d3 == 0) {
      r.geometric_limit = r.value;
      r.evidence = Evidence::exact;
    }
  }
  return r;
}

DensityResult upper_density(const FiniteIndexSet& set) {
  if (set.horizon == 0) throw PreconditionViolation("finite set needs a positive horizon");
  std::set<Index> members(set.members.begin(), set.members.end());
  const auto hits = static_cast<Index>(
      std::count_if(members.begin(), members.end(), [&](Index i) { return i < set.horizon; }));
  DensityResult r;
  r.value = ratio(hits, set.horizon);
  r.evidence = Evidence::horizon;
  r.checkpoints.emplace_back(set.horizon, r.value);
  return r;
}

TupleCertificate is_eps_asymptotic(const std::vector<Point>& tuple, double eps,
                                   const HorizonOptions& options) {
  require_tuple(tuple);
  if (!(eps > 0) || eps > 1) throw PreconditionViolation("eps must lie in (0, 1]");
  auto cert = start_certificate(tuple, "eps_asymptotic", {{"eps", eps}});
  if (auto eps_points = all_eventually_periodic(tuple)) {
    const TailStats st = joint_tail_stats(*eps_points);
    const Distance limsup = st.max_distance();
    cert.verdict = limsup.less_than(eps);
    cert.record = {{"limsup_diameter", limsup.to_string()},
                   {"tail_start", st.tail_start},
                   {"joint_period", st.period}};
    return cert;
  }
  horizon_every_late_time(cert, tuple, Condition::close_below(eps), options);
  return cert;
}

TupleCertificate is_eps_distal(const std::vector<Point>& tuple, double eps,
                               const HorizonOptions& options) {
  require_tuple(tuple);
  if (!(eps > 0) || !(eps < 1)) throw PreconditionViolation("eps must lie in (0, 1)");
  auto cert = start_certificate(tuple, "eps_distal", {{"eps", eps}});
  if (auto eps_points = all_eventually_periodic(tuple)) {
    const TailStats st = joint_tail_stats(*eps_points);
    const Distance liminf = st.min_distance();
    cert.verdict = liminf.greater_than(eps);
    cert.record = {{"liminf_min_distance", liminf.to_string()},
                   {"tail_start", st.tail_start},
                   {"joint_period", st.period}};
    return cert;
  }
  horizon_every_late_time(cert, tuple, Condition::separated_above(eps), options);
  return cert;
}

TupleCertificate is_li_yorke_pair(const Point& x, const Point& y, const HorizonOptions& options) {
  const std::vector<Point> tuple{x, y};
  require_tuple(tuple);
  require_distinct(tuple);
  auto cert = start_certificate(tuple, "li_yorke", {{"liminf_tolerance", options.liminf_tolerance}});
  if (auto eps_points = all_eventually_periodic(tuple)) {
    const TailStats st = joint_tail_stats(*eps_points);
    const Distance lo = st.pair_min(0), hi = st.pair_max(0);
    cert.verdict = lo.is_zero() && !hi.is_zero();
    cert.record = {{"liminf", lo.to_string()}, {"limsup", hi.to_string()}};
    return cert;
  }
  if (auto pt = recognize_plan(tuple)) {
    // ASYMPTOTIC blocks bring the pair together for L_k - O(1) steps, so the
    // liminf is 0; a covering DISTAL slot keeps it apart by the target separation.
    const auto slots = covering_slots(*pt);
    Distance best = Distance::zero();
    for (const auto& [s, sep] : slots) best = std::max(best, sep);
    cert.verdict = !best.is_zero();
    cert.record = {{"liminf", "0"}, {"limsup_at_least", best.to_string()}, {"members", pt->members}};
    return cert;
  }
  const Condition close = Condition::close_below(options.liminf_tolerance);
  const auto cs = checkpoints_for(options, close.window());
  const auto close_counts = count_horizon_at(tuple, cs, close);
  std::vector<std::optional<Index>> max_agreement(cs.size());
  for (Index a = 0; a + 1 < close.depth; ++a) {
    if (std::all_of(max_agreement.begin(), max_agreement.end(), [](const auto& m) { return m.has_value(); }))
      break;
    const auto far = count_horizon_at(tuple, cs, {Relation::all_separated, a});
    for (std::size_t j = 0; j < cs.size(); ++j) {
      const Index before = j == 0 ? 0 : far[j - 1];
      if (!max_agreement[j] && far[j] > before) max_agreement[j] = a;
    }
  }
  nlohmann::json rows = nlohmann::json::array();
  bool ok = true;
  for (std::size_t j = 0; j < cs.size(); ++j) {
    const Index lo = j == 0 ? 0 : cs[j - 1];
    const Index close_hits = close_counts[j] - (j == 0 ? 0 : close_counts[j - 1]);
    ok = ok && close_hits > 0 && max_agreement[j].has_value();
    rows.push_back({{"window", {lo, cs[j]}},
                    {"times_below_tolerance", close_hits},
                    {"max_distance", max_agreement[j] ? Distance::from_agreement(*max_agreement[j]).to_string()
                                                      : std::string("<= tolerance")}});
  }
  cert.verdict = ok;
  cert.evidence = Evidence::horizon;
  cert.horizon = cs.back();
  cert.record["windows"] = rows;
  return cert;
}

TupleCertificate is_dist_scrambled(const std::vector<Point>& tuple, double delta,
                                   const std::vector<double>& t_grid, const HorizonOptions& options) {
  require_tuple(tuple);
  if (!(delta > 0) || !(delta < 1)) throw PreconditionViolation("delta must lie in (0, 1)");
  require_distinct(tuple);
  const std::vector<double> grid = t_grid.empty() ? default_t_grid() : t_grid;
  for (double t : grid)
    if (!(t > 0)) throw PreconditionViolation("thresholds must be positive");
  nlohmann::json ts = nlohmann::json::array();
  for (double t : grid) ts.push_back(dyadic(t));
  auto cert = start_certificate(tuple, "dist_scrambled",
                                {{"n", tuple.size()}, {"delta", delta}, {"t_grid", ts}});

  if (auto eps_points = all_eventually_periodic(tuple)) {
    // Both frequencies converge; closeness density 1 for every t forces the
    // tail distances to vanish, which leaves no separated times.
    const TailStats st = joint_tail_stats(*eps_points);
    nlohmann::json rows = nlohmann::json::array();
    for (double t : grid)
      rows.push_back({{"t", dyadic(t)}, {"closeness_limit", to_string(ratio(st.count_all_closer(t), st.period))}});
    const bool close_all = st.max_distance().is_zero();
    const Rational sep = ratio(st.count_all_farther(delta), st.period);
    cert.verdict = close_all && sep == 1;
    cert.record = {{"closeness", rows},
                   {"closeness_one_for_every_t", close_all},
                   {"separation_limit", to_string(sep)},
                   {"tail_start", st.tail_start},
                   {"joint_period", st.period}};
    return cert;
  }
  if (auto pt = recognize_plan(tuple)) return plan_scrambled(tuple, *pt, delta, grid, options, cert);

  const Condition sep = Condition::separated_above(delta);
  Index window = sep.window();
  for (double t : grid) window = std::max(window, Condition::close_below(t).window());
  const auto cs = checkpoints_for(options, window);
  bool ok = true;
  auto summarize = [&](const std::vector<Index>& counts) {
    nlohmann::json rows = nlohmann::json::array();
    // Early checkpoints only see the first few symbols; the limsup is read from the later half.
    Rational best = 0;
    for (std::size_t j = 0; j < cs.size(); ++j) {
      const Rational d = ratio(counts[j], cs[j]);
      if (j >= cs.size() / 2) best = std::max(best, d);
      rows.push_back({{"checkpoint", cs[j]}, {"count", counts[j]}, {"density", to_string(d)}});
    }
    ok = ok && best >= options.density_threshold;
    return std::make_pair(rows, best);
  };
  nlohmann::json close_rows = nlohmann::json::array();
  for (double t : grid) {
    const auto [rows, best] = summarize(count_horizon_at(tuple, cs, Condition::close_below(t)));
    close_rows.push_back({{"t", dyadic(t)}, {"max_density", to_string(best)}, {"checkpoints", rows}});
  }
  const auto [sep_rows, sep_best] = summarize(count_horizon_at(tuple, cs, sep));
  cert.verdict = ok;
  cert.evidence = Evidence::horizon;
  cert.horizon = cs.back();
  cert.record = {{"density_threshold", to_string(options.density_threshold)},
                 {"max_over", "checkpoints from index " + std::to_string(cs.size() / 2) + " on"},
                 {"closeness", close_rows},
                 {"separation", {{"max_density", to_string(sep_best)}, {"checkpoints", sep_rows}}}};
  return cert;
}

namespace {

Index precision_depth(double eps) {
  if (!(eps > 0) || eps > 1) throw PreconditionViolation("eps must lie in (0, 1]");
  Index c = 0;
  while (std::ldexp(1.0, -static_cast<int>(c)) > eps) ++c;
  return c;
}

}  // namespace

std::optional<Witness> rp_witness_search(const Sft& s, const std::vector<EpPoint>& tuple, double eps,
                                         std::optional<std::size_t> walk_budget) {
  if (tuple.empty()) throw PreconditionViolation("empty tuple");
  for (const auto& x : tuple)
    if (!s.admissible(x)) throw NotAdmissible("point " + format_point(x) + " is not admissible");
  const Index m = precision_depth(eps) + 1;
  if (std::all_of(tuple.begin(), tuple.end(), [&](const EpPoint& x) { return x == tuple[0]; }))
    return Witness{tuple, 0, 0};
  if (!s.analysis().irreducible) return std::nullopt;
  const EpPoint o = common_tail(s);
  std::vector<Symbol> from, to;
  for (const auto& x : tuple) {
    from.push_back(x.symbol_at(m - 1));
    to.push_back(o.cycle().front());
  }
  const auto walks = aligned_walks(s, from, to, walk_budget);
  if (!walks) return std::nullopt;
  Witness w;
  w.prefix = m;
  w.time = m + walks->length;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    Word pre = tuple[i].prefix(m);
    pre.insert(pre.end(), walks->words[i].begin(), walks->words[i].end());
    w.points.emplace_back(s.alphabet(), std::move(pre), o.cycle());
  }
  return w;
}

std::optional<Witness> sensitive_tuple_witness(const Sft& s, const Word& cylinder,
                                               const std::vector<EpPoint>& targets, double eps) {
  if (cylinder.empty() || !s.admissible(cylinder))
    throw PreconditionViolation("cylinder word must be nonempty and admissible");
  for (const auto& x : targets)
    if (!s.admissible(x)) throw NotAdmissible("target " + format_point(x) + " is not admissible");
  for (std::size_t i = 0; i < targets.size(); ++i)
    for (std::size_t j = i + 1; j < targets.size(); ++j)
      if (targets[i] == targets[j]) throw PreconditionViolation("targets must be pairwise distinct");
  const Index m = precision_depth(eps);
  const bool inside = std::all_of(targets.begin(), targets.end(), [&](const EpPoint& x) {
    return x.prefix(cylinder.size()) == cylinder;
  });
  if (inside) return Witness{targets, 0, m};
  if (!s.analysis().irreducible) return std::nullopt;
  std::vector<Symbol> from(targets.size(), cylinder.back()), to;
  for (const auto& x : targets) to.push_back(x.symbol_at(0));
  const auto walks = aligned_walks(s, from, to);
  if (!walks) return std::nullopt;
  Witness w;
  w.prefix = m;
  w.time = cylinder.size() + walks->length;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    Word pre = cylinder;
    pre.insert(pre.end(), walks->words[i].begin(), walks->words[i].end());
    pre.insert(pre.end(), targets[i].preperiod().begin(), targets[i].preperiod().end());
    w.points.emplace_back(s.alphabet(), std::move(pre), targets[i].cycle());
  }
  return w;
}

DichotomyVerdict classify_sensitive_or_equicontinuous(const Sft& s) {
  if (!s.analysis().irreducible) throw NotIrreducible();
  DichotomyVerdict v;
  if (is_single_cycle(s)) {
    v.kind = Dichotomy::periodic;
    v.constant = 0;
    return v;
  }
  // A symbol with two successors b != c gives targets starting with b and c.
  Symbol b = 0, c = 0;
  for (Symbol a = 0; a < s.size(); ++a)
    if (s.successors(a).size() >= 2) {
      b = s.successors(a)[0];
      c = s.successors(a)[1];
      break;
    }
  auto loop_through = [&](Symbol x) {
    Word cyc{x};
    const Word back = connecting_word(s, x, x);
    cyc.insert(cyc.end(), back.begin(), back.end());
    return EpPoint::periodic(s.alphabet(), cyc);
  };
  v.kind = Dichotomy::sensitive;
  v.constant = 0.5;
  v.targets = {loop_through(b), loop_through(c)};
  for (Symbol a = 0; a < s.size(); ++a) {
    auto w = sensitive_tuple_witness(s, {a}, v.targets, 0.5);
    if (!w) throw WitnessNotFound("no sensitivity witness for cylinder [" + std::to_string(a) + "]");
    v.witnesses.emplace_back(Word{a}, std::move(*w));
  }
  return v;
}

nlohmann::json to_json(const Witness& w) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : w.points) pts.push_back(format_point(p));
  return {{"points", pts}, {"time", w.time}, {"prefix", w.prefix}};
}

nlohmann::json to_json(const DichotomyVerdict& v) {
  nlohmann::json j{{"verdict", v.kind == Dichotomy::sensitive ? "SENSITIVE" : "PERIODIC"}};
  if (v.kind == Dichotomy::sensitive) {
    j["constant"] = v.constant;
    nlohmann::json ts = nlohmann::json::array();
    for (const auto& t : v.targets) ts.push_back(format_point(t));
    j["targets"] = ts;
    nlohmann::json ws = nlohmann::json::array();
    for (const auto& [u, w] : v.witnesses) ws.push_back({{"cylinder", format_word(u)}, {"witness", to_json(w)}});
    j["witnesses"] = ws;
  } else {
    j["note"] = "single periodic orbit: finite, hence equicontinuous";
  }
  return j;
}

}  // namespace chaoskit
