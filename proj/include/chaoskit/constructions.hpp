#pragma once

// Asymptotic, distal and distributionally scrambled tuples built by explicit
// pseudo-orbits and block plans.

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include <json.hpp>

#include "chaoskit/metrics.hpp"
#include "chaoskit/plan.hpp"
#include "chaoskit/sft.hpp"
#include "chaoskit/shadowing.hpp"
#include "chaoskit/symbolic.hpp"

namespace chaoskit {

struct DistalTargets {
  std::vector<EpPoint> targets;
  Distance separation = Distance::zero();  // exact liminf of the pairwise distances
  double eps = 0.0;     // separation / 2
  Word cylinder;
  Witness sensitivity;  // n points of the cylinder whose orbits reach the targets
};

/// The first n distinct periodic points by period, then lexicographically,
/// rotated to start in class 0 when the period of the graph exceeds one.
DistalTargets pick_distal_sensitive_targets(const Sft& s, std::size_t n);

struct ConstructedTuple {
  std::vector<EpPoint> points;
  std::vector<TraceCertificate> traces;  // one per coordinate
  Witness witness;
  double delta = 0.0;  // pseudo-orbit jump bound
  std::vector<Distance> approximation;  // d(x_i, output_i)
  TupleCertificate certificate;
};

ConstructedTuple build_asymptotic_tuple(const Sft& s, const std::vector<EpPoint>& x, double eps,
                                        double eta);
ConstructedTuple build_distal_tuple(const Sft& s, const std::vector<EpPoint>& x, double eta);

struct ScrambledFamilyReport {
  explicit ScrambledFamilyReport(const Sft& s) : system(s), construction_system(s) {}

  Sft system;                 // where the points live
  std::vector<Point> points;  // ScheduledPoints
  std::size_t n = 2;
  double delta_n = 0.0;
  std::vector<EpPoint> targets;
  std::shared_ptr<const BlockPlan> plan;  // over `construction_system`
  Sft construction_system;
  std::size_t period = 1;
  std::optional<double> construction_delta;  // delta in the power system
  std::vector<std::vector<std::size_t>> subtuples;  // every n-subset of the members
  std::vector<TupleCertificate> certificates;
  std::vector<std::vector<std::size_t>> certified;  // members behind each certificate
  std::vector<Distance> approximation;  // d(x_i, output_i) for the starts
  std::vector<EpPoint> starts;
  std::vector<double> t_grid;
  std::vector<Index> checkpoints;  // used by HORIZON certificates and the CSV
};

/// The plan behind one n-tuple: its points, delta_n and an EXACT certificate.
ScrambledFamilyReport build_dist_scrambled_tuple(const Sft& s, const std::vector<EpPoint>& x,
                                                 std::size_t n, double eta);

/// m members; DISTAL slots assign targets so that every n-subset follows
/// pairwise distinct targets in some slot. Starts default to the first m
/// distinct periodic points. Sub-tuples beyond `certificate_cap` are sampled evenly.
ScrambledFamilyReport build_scrambled_family(const Sft& s, std::size_t m, std::size_t n, double eta,
                                             std::optional<std::vector<EpPoint>> starts = {},
                                             std::size_t certificate_cap = 64);

/// Runs the construction in the q-th power restricted to class 0 and decodes.
ScrambledFamilyReport periodic_case(const Sft& s, std::size_t n, double eta,
                                    const HorizonOptions& options = {});

struct FixedPointWitness {
  Symbol fixed = 0;
  Index window = 0;      // every allowed word of this length occurs in the approximant
  EpPoint approximant = EpPoint::constant(Alphabet(1), 0);  // transitive word followed by the fixed point
  std::vector<Index> shifts;
  std::vector<EpPoint> tuple;  // sigma^{i_j} of the approximant
  Witness witness;
};

/// Throws NoFixedPoint.
FixedPointWitness rp_via_fixed_point(const Sft& s, const std::vector<Index>& shifts, double eps,
                                     Index window = 3);

nlohmann::json to_json(const DistalTargets& t);
nlohmann::json to_json(const ConstructedTuple& c);
nlohmann::json to_json(const ScrambledFamilyReport& r);
nlohmann::json to_json(const FixedPointWitness& w);

}  // namespace chaoskit
