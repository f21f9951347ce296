#pragma once

// Finite delta-pseudo-orbits continued by the true orbit of their last entry,
// and the first-symbol readout tracer.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "chaoskit/sft.hpp"
#include "chaoskit/symbolic.hpp"

namespace chaoskit {

struct PseudoOrbit {
  Sft system;
  std::vector<EpPoint> entries;
  double delta = 0.25;
  bool validated = false;
};

/// Checks admissibility of every entry (NotAdmissible) and sets `validated`.
PseudoOrbit make_pseudo_orbit(const Sft& system, std::vector<EpPoint> entries, double delta);

/// d(sigma entries[k], entries[k+1]).
Distance jump(const PseudoOrbit& po, std::size_t k);

/// Every listed jump is strictly below delta.
bool validate(const PseudoOrbit& po);

/// 2^-(m+2) with m the least integer such that 2^-m <= eps.
double shadowing_modulus(double eps);

/// z = (x_0)_0 (x_1)_0 ... (x_{N-2})_0 x_{N-1}.
EpPoint first_symbol_readout(const std::vector<EpPoint>& entries);

struct TraceCertificate {
  EpPoint point;
  double epsilon = 0;
  double delta = 0;
  std::vector<Distance> distances;  // d(sigma^n z, x_n) for listed n; zero beyond
  Distance max_distance = Distance::zero();
  bool exact = true;   // entries are eventually periodic, so the tail is exact
  bool holds = false;  // max_distance < epsilon
};

/// Throws DeltaTooLarge (delta > 1/4) or NotValidated. Without `eps` the
/// certificate uses the epsilon paired with delta, 4 delta.
TraceCertificate trace(const PseudoOrbit& po, std::optional<double> eps = {});

/// Entries p, sigma p, ..., sigma^{len-1} p for each segment in turn; the last
/// segment continues as a true orbit. Throws SeamTooWide.
PseudoOrbit concat_pseudo_orbit(const Sft& system,
                                const std::vector<std::pair<EpPoint, std::size_t>>& segments,
                                double delta);

nlohmann::json to_json(const TraceCertificate& c);

}  // namespace chaoskit
