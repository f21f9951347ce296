#include "chaoskit/shadowing.hpp"

#include <cmath>

#include "chaoskit/errors.hpp"

namespace chaoskit {

PseudoOrbit make_pseudo_orbit(const Sft& system, std::vector<EpPoint> entries, double delta) {
  if (entries.empty()) throw PreconditionViolation("pseudo-orbit needs at least one entry");
  if (!(delta > 0)) throw PreconditionViolation("delta must be positive");
  for (std::size_t k = 0; k < entries.size(); ++k)
    if (!system.admissible(entries[k]))
      throw NotAdmissible("entry " + std::to_string(k) + " (" + format_point(entries[k]) +
                          ") is not admissible");
  PseudoOrbit po{system, std::move(entries), delta, false};
  po.validated = validate(po);
  return po;
}

Distance jump(const PseudoOrbit& po, std::size_t k) {
  return dist(po.entries[k].shifted(1), po.entries[k + 1]);
}

bool validate(const PseudoOrbit& po) {
  if (po.entries.empty()) throw PreconditionViolation("pseudo-orbit needs at least one entry");
  for (std::size_t k = 0; k + 1 < po.entries.size(); ++k)
    if (!jump(po, k).less_than(po.delta)) return false;
  return true;
}

double shadowing_modulus(double eps) {
  if (!(eps > 0) || eps > 1) throw PreconditionViolation("eps must lie in (0, 1]");
  int m = 0;
  while (std::ldexp(1.0, -m) > eps) ++m;
  return std::ldexp(1.0, -(m + 2));
}

EpPoint first_symbol_readout(const std::vector<EpPoint>& entries) {
  if (entries.empty()) throw PreconditionViolation("pseudo-orbit needs at least one entry");
  const EpPoint& last = entries.back();
  Word pre;
  for (std::size_t k = 0; k + 1 < entries.size(); ++k) pre.push_back(entries[k].symbol_at(0));
  pre.insert(pre.end(), last.preperiod().begin(), last.preperiod().end());
  return EpPoint(last.alphabet(), std::move(pre), last.cycle());
}

TraceCertificate trace(const PseudoOrbit& po, std::optional<double> eps) {
  if (po.delta > 0.25) throw DeltaTooLarge(po.delta);
  if (!validate(po)) throw NotValidated();
  TraceCertificate c{first_symbol_readout(po.entries), eps.value_or(4 * po.delta), po.delta, {},
                     Distance::zero(), true, false};
  // Beyond the list, sigma^n z and x_n are the same point.
  for (std::size_t n = 0; n < po.entries.size(); ++n) {
    const Distance d = dist(c.point.shifted(n), po.entries[n]);
    c.distances.push_back(d);
    c.max_distance = std::max(c.max_distance, d);
  }
  c.holds = c.max_distance.less_than(c.epsilon) && po.system.admissible(c.point);
  return c;
}

PseudoOrbit concat_pseudo_orbit(const Sft& system,
                                const std::vector<std::pair<EpPoint, std::size_t>>& segments,
                                double delta) {
  if (segments.empty()) throw PreconditionViolation("no segments");
  std::vector<EpPoint> entries;
  for (std::size_t j = 0; j < segments.size(); ++j) {
    const auto& [p, len] = segments[j];
    if (len == 0) throw PreconditionViolation("segment lengths must be positive");
    if (j > 0) {
      const Distance seam = dist(entries.back().shifted(1), p);
      if (!seam.less_than(delta)) throw SeamTooWide(j - 1, seam.value());
    }
    for (std::size_t i = 0; i < len; ++i) entries.push_back(p.shifted(i));
  }
  return make_pseudo_orbit(system, std::move(entries), delta);
}

nlohmann::json to_json(const TraceCertificate& c) {
  return {{"point", to_json(c.point)},
          {"epsilon", c.epsilon},
          {"delta", c.delta},
          {"max_distance", c.max_distance.to_string()},
          {"listed_entries", c.distances.size()},
          {"evidence", c.exact ? "EXACT" : "HORIZON"},
          {"traces", c.holds}};
}

}  // namespace chaoskit
