#pragma once

// Distribution functions, densities and the tuple certifiers.
//
// Verdicts carry their evidence: EXACT when the answer follows from a finite
// exact computation (joint tail cycles of eventually periodic points, or the
// block structure of a recognized plan), HORIZON when it is read off finite
// prefixes at checkpoints.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "chaoskit/sft.hpp"
#include "chaoskit/symbolic.hpp"

namespace chaoskit {

using Rational = boost::multiprecision::cpp_rational;

std::string to_string(const Rational& r);

enum class Evidence { exact, horizon };

const char* evidence_name(Evidence e);

struct HorizonOptions {
  std::vector<Index> checkpoints;  // empty: 2^10, 2^12, ..., 2^24 (clipped to the horizon cap)
  // HORIZON density verdicts take the max over the later half of the checkpoints.
  double liminf_tolerance = 0x1p-40;
  Rational density_threshold = Rational(7, 8);
  std::size_t exact_blocks = 16;  // plan blocks replayed by exact certificates
};

std::vector<Index> default_checkpoints();

struct TupleCertificate {
  std::vector<Point> tuple;
  std::string relation;
  nlohmann::json parameters;
  bool verdict = false;
  Evidence evidence = Evidence::exact;
  Index horizon = 0;
  nlohmann::json record;
};

nlohmann::json to_json(const TupleCertificate& c);

/// (1/n) #{0 <= i < n : d(sigma^i x, sigma^i y) < t}.
Rational phi(const Point& x, const Point& y, Index n, double t);

struct PhiLimits {
  Rational liminf;
  Rational limsup;
  bool exists = true;
};

PhiLimits phi_limits_exact(const EpPoint& x, const EpPoint& y, double t);

struct DensityResult {
  Rational value;
  Evidence evidence = Evidence::exact;
  std::vector<std::pair<Index, Rational>> checkpoints;
  std::optional<Rational> geometric_limit;  // exact when the checkpoint ratios form a geometric tail
};

/// Members with i < start are `head[i]`; from start on membership is pattern[(i - start) % |pattern|].
struct PeriodicTailSet {
  std::vector<bool> head;
  std::vector<bool> pattern;
};

/// Union of the disjoint increasing intervals [a_k, b_k) for k < blocks.
struct BlockUnionSet {
  std::function<std::pair<Index, Index>(std::size_t)> interval;
  std::size_t blocks = 0;
};

struct FiniteIndexSet {
  std::vector<Index> members;
  Index horizon = 0;
};

DensityResult upper_density(const PeriodicTailSet& set);
/// Ratios at the interval ends; the limsup over checkpoints is attained there.
DensityResult upper_density(const BlockUnionSet& set);
DensityResult upper_density(const FiniteIndexSet& set);

TupleCertificate is_eps_asymptotic(const std::vector<Point>& tuple, double eps,
                                   const HorizonOptions& options = {});
TupleCertificate is_eps_distal(const std::vector<Point>& tuple, double eps,
                               const HorizonOptions& options = {});
TupleCertificate is_li_yorke_pair(const Point& x, const Point& y, const HorizonOptions& options = {});
TupleCertificate is_dist_scrambled(const std::vector<Point>& tuple, double delta,
                                   const std::vector<double>& t_grid,
                                   const HorizonOptions& options = {});

/// Default threshold grid 2^-1, ..., 2^-8.
std::vector<double> default_t_grid();

struct Witness {
  std::vector<EpPoint> points;  // y_1..y_n
  Index time = 0;               // k
  Index prefix = 0;             // m, symbols kept from the originals
};

/// y_i = x_i[0..m) w_i o with m = ceil(log2(1/eps)) + 1, common-length walks
/// w_i and a common periodic tail o; k = m + |w_i|. Empty when no such
/// walks exist (reducible graph, or coordinates in incompatible classes).
std::optional<Witness> rp_witness_search(const Sft& s, const std::vector<EpPoint>& tuple, double eps,
                                         std::optional<std::size_t> walk_budget = {});

/// y_i = U w_i x_i with common-length walks; k = |U| + |w_i|, so sigma^k y_i = x_i.
std::optional<Witness> sensitive_tuple_witness(const Sft& s, const Word& cylinder,
                                               const std::vector<EpPoint>& targets, double eps);

enum class Dichotomy { sensitive, periodic };

struct DichotomyVerdict {
  Dichotomy kind = Dichotomy::sensitive;
  double constant = 0.5;
  // one witness per one-symbol cylinder: two points of the cylinder at distance 1 after k steps
  std::vector<std::pair<Word, Witness>> witnesses;
  std::vector<EpPoint> targets;
};

/// Throws NotIrreducible.
DichotomyVerdict classify_sensitive_or_equicontinuous(const Sft& s);

nlohmann::json to_json(const Witness& w);
nlohmann::json to_json(const DichotomyVerdict& v);

}  // namespace chaoskit
