#include "chaoskit/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <set>

#include "chaoskit/errors.hpp"

namespace chaoskit {

namespace {

void require_constructible(const Sft& s) {
  if (!s.analysis().irreducible) throw NotIrreducible();
  if (is_single_cycle(s)) throw SingleCycle();
}

// Rotation of a periodic point whose cycle starts in class 0.
EpPoint rotate_to_class0(const Sft& s, const EpPoint& v) {
  const auto& cls = s.analysis().class_of;
  for (Index r = 0; r < v.cycle().size(); ++r)
    if (cls[v.cycle()[r]] == 0) return v.shifted(r);
  return v;
}

std::vector<EpPoint> first_periodic_points(const Sft& s, std::size_t count, bool to_class0) {
  std::vector<EpPoint> out;
  std::set<EpPoint> seen;
  for (std::size_t p = 1; out.size() < count; ++p) {
    if (p > 64) throw WitnessNotFound("not enough periodic points up to period 64");
    for (const auto& v : periodic_points(s, p).points) {
      const EpPoint w = to_class0 ? rotate_to_class0(s, v) : v;
      if (!seen.insert(w).second) continue;
      out.push_back(w);
      if (out.size() == count) break;
    }
  }
  return out;
}

std::vector<std::vector<std::size_t>> combinations(std::size_t m, std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = i;
  while (true) {
    out.push_back(c);
    std::size_t i = n;
    while (i > 0 && c[i - 1] == m - n + i - 1) --i;
    if (i == 0) break;
    ++c[i - 1];
    for (std::size_t j = i; j < n; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

// DISTAL slots covering every n-subset: a slot assigns target indices to
// members, and a subset is covered when its members get pairwise distinct
// targets. Greedy over the uncovered subsets in lexicographic order.
std::vector<std::vector<int>> rainbow_cover(std::size_t m, const std::vector<std::vector<std::size_t>>& subsets) {
  std::vector<bool> covered(subsets.size(), false);
  std::vector<std::vector<int>> slots;
  auto rainbow = [](const std::vector<int>& col, const std::vector<std::size_t>& s) {
    std::set<int> seen;
    for (std::size_t i : s)
      if (col[i] < 0 || !seen.insert(col[i]).second) return false;
    return true;
  };
  while (std::find(covered.begin(), covered.end(), false) != covered.end()) {
    std::vector<int> col(m, -1);
    for (std::size_t k = 0; k < subsets.size(); ++k) {
      if (covered[k]) continue;
      std::set<int> used;
      bool ok = true;
      for (std::size_t i : subsets[k])
        if (col[i] >= 0 && !used.insert(col[i]).second) ok = false;
      if (!ok) continue;
      int next = 0;
      for (std::size_t i : subsets[k]) {
        if (col[i] >= 0) continue;
        while (used.count(next)) ++next;
        col[i] = next;
        used.insert(next);
      }
    }
    for (std::size_t k = 0; k < subsets.size(); ++k)
      if (!covered[k] && rainbow(col, subsets[k])) covered[k] = true;
    slots.push_back(std::move(col));
  }
  return slots;
}

std::vector<std::vector<std::size_t>> sample(const std::vector<std::vector<std::size_t>>& all,
                                             std::size_t cap) {
  if (all.size() <= cap) return all;
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < cap; ++i) out.push_back(all[i * all.size() / cap]);
  return out;
}

std::vector<TupleCertificate> certify_all(const std::vector<Point>& points,
                                          const std::vector<std::vector<std::size_t>>& subs, double delta,
                                          const std::vector<double>& grid, const HorizonOptions& options) {
  std::vector<std::future<TupleCertificate>> jobs;
  for (const auto& sub : subs) {
    std::vector<Point> tuple;
    for (std::size_t i : sub) tuple.push_back(points[i]);
    jobs.push_back(std::async(std::launch::async, [tuple, delta, &grid, &options] {
      return is_dist_scrambled(tuple, delta, grid, options);
    }));
  }
  std::vector<TupleCertificate> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

}  // namespace

DistalTargets pick_distal_sensitive_targets(const Sft& s, std::size_t n) {
  require_constructible(s);
  if (n < 2) throw PreconditionViolation("need at least two targets");
  const bool rotate = s.analysis().period > 1;
  DistalTargets out;
  out.targets = first_periodic_points(s, n, rotate);
  out.separation = joint_tail_stats(out.targets).min_distance();
  out.eps = out.separation.value() / 2;
  out.cylinder = {out.targets[0].symbol_at(0)};
  auto w = sensitive_tuple_witness(s, out.cylinder, out.targets, out.eps);
  if (!w) throw WitnessNotFound("no sensitivity witness for the chosen targets");
  out.sensitivity = std::move(*w);
  return out;
}

ConstructedTuple build_asymptotic_tuple(const Sft& s, const std::vector<EpPoint>& x, double eps,
                                        double eta) {
  if (!s.analysis().irreducible) throw NotIrreducible();
  if (x.size() < 2) throw PreconditionViolation("need at least two points");
  if (!(eta > 0 && eta < eps / 2)) throw PreconditionViolation("need 0 < eta < eps/2");
  ConstructedTuple out;
  out.delta = shadowing_modulus(eta);
  auto w = rp_witness_search(s, x, out.delta);
  if (!w) throw WitnessNotFound("no regionally proximal witness for the tuple");
  out.witness = *w;
  const Index k = w->time;
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::vector<std::pair<EpPoint, std::size_t>> segs;
    if (k > 0) segs.emplace_back(w->points[i], k);
    segs.emplace_back(shift(w->points[0], k), 1);
    const auto po = concat_pseudo_orbit(s, segs, out.delta);
    auto tc = trace(po, eta);
    Word pre = w->points[i].prefix(k);
    const EpPoint tail = shift(w->points[0], k);
    for (Index j = 0; j < tail.preperiod().size(); ++j) pre.push_back(tail.preperiod()[j]);
    const EpPoint closed(s.alphabet(), std::move(pre), tail.cycle());
    if (!(closed == tc.point)) throw Error("traced point differs from the closed form");
    out.points.push_back(tc.point);
    out.approximation.push_back(dist(x[i], tc.point));
    out.traces.push_back(std::move(tc));
  }
  std::vector<Point> tuple(out.points.begin(), out.points.end());
  out.certificate = is_eps_asymptotic(tuple, eps);
  return out;
}

ConstructedTuple build_distal_tuple(const Sft& s, const std::vector<EpPoint>& x, double eta) {
  require_constructible(s);
  if (x.size() < 2) throw PreconditionViolation("need at least two points");
  for (const auto& p : x)
    if (!s.admissible(p)) throw NotAdmissible("point " + format_point(p) + " is not admissible");
  const DistalTargets t = pick_distal_sensitive_targets(s, x.size());
  if (!(eta > 0 && eta < t.eps / 2)) throw PreconditionViolation("need 0 < eta < eps_v/2");
  ConstructedTuple out;
  out.delta = shadowing_modulus(eta);
  const Index m = closeness_depth(out.delta);
  std::vector<Symbol> from, to;
  for (std::size_t i = 0; i < x.size(); ++i) {
    from.push_back(x[i].symbol_at(m - 1));
    to.push_back(t.targets[i].symbol_at(0));
  }
  const auto walks = aligned_walks(s, from, to);
  if (!walks) throw ClassMismatch("no common-length bridges from the tuple to the targets");
  const Index l = walks->length;
  out.witness.prefix = m;
  out.witness.time = m + l;
  for (std::size_t i = 0; i < x.size(); ++i) {
    Word pre = x[i].prefix(m);
    pre.insert(pre.end(), walks->words[i].begin(), walks->words[i].end());
    const EpPoint y(s.alphabet(), pre, t.targets[i].cycle());
    out.witness.points.push_back(y);
    std::vector<std::pair<EpPoint, std::size_t>> segs{{y, m}};
    if (l > 0) segs.emplace_back(shift(y, m), l);
    segs.emplace_back(t.targets[i], 1);
    const auto po = concat_pseudo_orbit(s, segs, out.delta);
    auto tc = trace(po, eta);
    if (!(tc.point == y)) throw Error("traced point differs from the closed form");
    out.points.push_back(tc.point);
    out.approximation.push_back(dist(x[i], tc.point));
    out.traces.push_back(std::move(tc));
  }
  std::vector<Point> tuple(out.points.begin(), out.points.end());
  out.certificate = is_eps_distal(tuple, t.eps);
  out.certificate.parameters["target_separation"] = t.separation.to_string();
  return out;
}

namespace {

ScrambledFamilyReport scrambled_plan(const Sft& s, std::vector<EpPoint> starts, std::size_t n, double eta,
                                     std::size_t certificate_cap) {
  require_constructible(s);
  if (n < 2) throw PreconditionViolation("need n >= 2");
  if (starts.size() < n) throw PreconditionViolation("family smaller than n");
  if (!(eta > 0 && eta <= 1)) throw PreconditionViolation("need 0 < eta <= 1");
  for (const auto& x : starts)
    if (!s.admissible(x)) throw NotAdmissible("start " + format_point(x) + " is not admissible");
  const DistalTargets t = pick_distal_sensitive_targets(s, n);
  auto subsets = combinations(starts.size(), n);
  if (subsets.size() > 100000) throw PreconditionViolation("too many sub-tuples to schedule");
  PlanSetup setup{s, starts, rotate_to_class0(s, common_tail(s)), t.targets,
                  rainbow_cover(starts.size(), subsets), closeness_depth(eta)};
  ScrambledFamilyReport r(s);
  r.n = n;
  r.delta_n = t.eps;
  r.targets = t.targets;
  r.subtuples = std::move(subsets);
  r.starts = starts;
  r.plan = BlockPlan::create(std::move(setup));
  for (auto& p : r.plan->points()) r.points.emplace_back(p);
  for (std::size_t i = 0; i < starts.size(); ++i)
    r.approximation.push_back(Distance::from_agreement(r.plan->setup().prefix_length));
  r.t_grid = default_t_grid();
  for (std::size_t k = 0; k < 8; ++k) r.checkpoints.push_back(r.plan->end(k));
  r.certified = sample(r.subtuples, certificate_cap);
  r.certificates = certify_all(r.points, r.certified, r.delta_n, r.t_grid, {});
  return r;
}

}  // namespace

ScrambledFamilyReport build_dist_scrambled_tuple(const Sft& s, const std::vector<EpPoint>& x,
                                                 std::size_t n, double eta) {
  if (x.size() != n) throw PreconditionViolation("tuple size differs from n");
  return scrambled_plan(s, x, n, eta, 1);
}

ScrambledFamilyReport build_scrambled_family(const Sft& s, std::size_t m, std::size_t n, double eta,
                                             std::optional<std::vector<EpPoint>> starts,
                                             std::size_t certificate_cap) {
  require_constructible(s);
  if (m < n) throw PreconditionViolation("need m >= n");
  std::vector<EpPoint> xs = starts ? *starts : first_periodic_points(s, m, false);
  if (xs.size() != m) throw PreconditionViolation("expected m start points");
  return scrambled_plan(s, std::move(xs), n, eta, certificate_cap);
}

ScrambledFamilyReport periodic_case(const Sft& s, std::size_t n, double eta, const HorizonOptions& options) {
  require_constructible(s);
  const std::size_t q = s.analysis().period;
  if (q == 1) return build_scrambled_family(s, n, n, eta);
  const Sft y = power_system(s, q, 0);
  ScrambledFamilyReport inner = build_scrambled_family(y, n, n, eta);
  ScrambledFamilyReport r = inner;
  r.system = s;
  r.construction_system = y;
  r.period = q;
  r.construction_delta = inner.delta_n;
  r.points.clear();
  for (const auto& p : inner.points) r.points.push_back(y.lift(p));
  r.targets.clear();
  for (const auto& v : inner.targets) r.targets.push_back(y.lift(v));
  r.starts.clear();
  for (std::size_t i = 0; i < inner.starts.size(); ++i) {
    r.starts.push_back(y.lift(inner.starts[i]));
    r.approximation[i] = Distance::from_agreement(inner.plan->setup().prefix_length * q);
  }
  r.delta_n = joint_tail_stats(r.targets).min_distance().value() / 2;
  HorizonOptions opts = options;
  if (opts.checkpoints.empty()) {
    for (std::size_t k = 0; k < 8; ++k) {
      const Index e = inner.plan->end(k) * q;
      if (e > (Index{1} << 20) || e > max_horizon()) break;
      opts.checkpoints.push_back(e);
    }
  }
  r.checkpoints = opts.checkpoints;
  r.certificates.clear();
  for (const auto& c : certify_all(r.points, r.certified, r.delta_n, r.t_grid, opts)) {
    TupleCertificate cert = c;
    cert.parameters["period"] = q;
    cert.parameters["power_system_delta"] = inner.delta_n;
    cert.parameters["distortion_factor"] = inner.delta_n / r.delta_n;
    cert.parameters["distortion_bound"] = std::ldexp(1.0, static_cast<int>(q) - 1);
    r.certificates.push_back(std::move(cert));
  }
  return r;
}

FixedPointWitness rp_via_fixed_point(const Sft& s, const std::vector<Index>& shifts, double eps,
                                     Index window) {
  if (!s.analysis().irreducible) throw NotIrreducible();
  if (shifts.empty()) throw PreconditionViolation("need at least one shift");
  if (window == 0) throw PreconditionViolation("window must be positive");
  FixedPointWitness out;
  bool found = false;
  for (Symbol a = 0; a < s.size() && !found; ++a)
    if (s.allowed(a, a)) {
      out.fixed = a;
      found = true;
    }
  if (!found) throw NoFixedPoint();
  out.window = window;
  // All allowed words of the window length, joined by connecting words.
  std::vector<Word> words;
  Word cur;
  auto dfs = [&](auto&& self) -> void {
    if (cur.size() == window) {
      words.push_back(cur);
      return;
    }
    if (words.size() > (1u << 16)) throw PreconditionViolation("window too large");
    for (Symbol b = 0; b < s.size(); ++b) {
      if (!cur.empty() && !s.allowed(cur.back(), b)) continue;
      cur.push_back(b);
      self(self);
      cur.pop_back();
    }
  };
  dfs(dfs);
  Word w;
  for (const auto& u : words) {
    if (!w.empty()) {
      const Word c = connecting_word(s, w.back(), u.front());
      w.insert(w.end(), c.begin(), c.end());
    }
    w.insert(w.end(), u.begin(), u.end());
  }
  const Word c = connecting_word(s, w.back(), out.fixed);
  w.insert(w.end(), c.begin(), c.end());
  out.approximant = EpPoint(s.alphabet(), w, {out.fixed});
  out.shifts = shifts;
  for (Index i : shifts) out.tuple.push_back(shift(out.approximant, i));
  auto wit = rp_witness_search(s, out.tuple, eps);
  if (!wit) throw WitnessNotFound("no regionally proximal witness through the fixed point");
  out.witness = std::move(*wit);
  return out;
}

nlohmann::json to_json(const DistalTargets& t) {
  nlohmann::json ts = nlohmann::json::array();
  for (const auto& v : t.targets) ts.push_back(format_point(v));
  return {{"targets", ts},
          {"separation", t.separation.to_string()},
          {"eps", t.eps},
          {"cylinder", format_word(t.cylinder)},
          {"sensitivity", to_json(t.sensitivity)}};
}

nlohmann::json to_json(const ConstructedTuple& c) {
  nlohmann::json pts = nlohmann::json::array(), approx = nlohmann::json::array();
  for (const auto& p : c.points) pts.push_back(format_point(p));
  for (const auto& d : c.approximation) approx.push_back(d.to_string());
  nlohmann::json traces = nlohmann::json::array();
  for (const auto& t : c.traces) traces.push_back(to_json(t));
  return {{"points", pts},           {"delta", c.delta},      {"witness", to_json(c.witness)},
          {"approximation", approx}, {"traces", traces},      {"certificate", to_json(c.certificate)}};
}

nlohmann::json to_json(const ScrambledFamilyReport& r) {
  nlohmann::json j;
  j["system"] = r.system.summary();
  j["n"] = r.n;
  j["delta_n"] = r.delta_n;
  j["period"] = r.period;
  if (r.construction_delta) j["construction_delta"] = *r.construction_delta;
  nlohmann::json ts = nlohmann::json::array(), xs = nlohmann::json::array();
  for (const auto& v : r.targets) ts.push_back(format_point(v));
  for (const auto& x : r.starts) xs.push_back(format_point(x));
  j["targets"] = ts;
  j["starts"] = xs;
  nlohmann::json approx = nlohmann::json::array();
  for (const auto& d : r.approximation) approx.push_back(d.to_string());
  j["approximation"] = approx;
  j["plan"] = r.plan->describe();
  j["subtuples"] = r.subtuples;
  j["checkpoints"] = r.checkpoints;
  j["certified"] = r.certified;
  nlohmann::json certs = nlohmann::json::array();
  for (const auto& c : r.certificates) certs.push_back(to_json(c));
  j["certificates"] = certs;
  return j;
}

nlohmann::json to_json(const FixedPointWitness& w) {
  nlohmann::json tuple = nlohmann::json::array();
  for (const auto& p : w.tuple) tuple.push_back(format_point(p));
  return {{"fixed_symbol", w.fixed},
          {"window", w.window},
          {"approximant", format_point(w.approximant)},
          {"shifts", w.shifts},
          {"tuple", tuple},
          {"witness", to_json(w.witness)}};
}

}  // namespace chaoskit
