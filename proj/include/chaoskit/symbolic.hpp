#pragma once

// Symbolic points over a finite alphabet and the first-disagreement metric
// d(x, y) = 2^-k, k the least index with x_k != y_k.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "chaoskit/kernels.hpp"

namespace chaoskit {

using Word = std::vector<Symbol>;
using Index = std::uint64_t;

struct Alphabet {
  std::size_t size = 1;

  explicit Alphabet(std::size_t k);
  Alphabet() = default;
  bool contains(Symbol s) const noexcept { return s < size; }
  friend bool operator==(const Alphabet&, const Alphabet&) = default;
};

void check_word(const Word& w, Alphabet a);

/// Least k with 2^-k < t, i.e. d(x, y) < t exactly when x and y agree on
/// their first k symbols. Requires t > 0.
Index closeness_depth(double t);

/// Largest a with 2^-a > delta, i.e. d(x, y) > delta exactly when x and y
/// agree on at most a symbols. Empty when delta >= 1 (no distance exceeds it).
std::optional<Index> separation_depth(double delta);

/// Exact value of the metric: 0, or 2^-agreement.
class Distance {
 public:
  static Distance zero() noexcept { return Distance(0, true); }
  static Distance from_agreement(Index agreement) noexcept { return Distance(agreement, false); }

  bool is_zero() const noexcept { return zero_; }
  /// Length of the common prefix (meaningless when is_zero()).
  Index agreement() const noexcept { return agreement_; }
  double value() const noexcept;

  bool less_than(double t) const;
  bool greater_than(double t) const;

  /// Ordered by value.
  friend std::strong_ordering operator<=>(const Distance& a, const Distance& b) noexcept;
  friend bool operator==(const Distance& a, const Distance& b) noexcept = default;

  std::string to_string() const;

 private:
  Distance(Index a, bool z) noexcept : agreement_(a), zero_(z) {}
  Index agreement_;
  bool zero_;
};

/// Eventually periodic point u w w w ... stored in canonical form:
/// primitive cycle, minimal preperiod.
class EpPoint {
 public:
  EpPoint(Alphabet alphabet, Word preperiod, Word cycle);
  static EpPoint constant(Alphabet alphabet, Symbol s);
  static EpPoint periodic(Alphabet alphabet, Word cycle);

  Alphabet alphabet() const noexcept { return alphabet_; }
  const Word& preperiod() const noexcept { return preperiod_; }
  const Word& cycle() const noexcept { return cycle_; }

  Symbol symbol_at(Index i) const noexcept;
  Word prefix(std::size_t n) const;
  EpPoint shifted(Index k) const;
  bool purely_periodic() const noexcept { return preperiod_.empty(); }

  friend bool operator==(const EpPoint&, const EpPoint&) = default;
  friend auto operator<=>(const EpPoint& a, const EpPoint& b) {
    if (auto c = a.preperiod_ <=> b.preperiod_; c != 0) return c;
    return a.cycle_ <=> b.cycle_;
  }

 private:
  Alphabet alphabet_;
  Word preperiod_;
  Word cycle_;
};

/// The canonical representative of u w^inf: primitive root of w, then the
/// preperiod is shortened while its last symbol can be rotated into the cycle.
std::pair<Word, Word> canonical_form(Word preperiod, Word cycle);

/// One block of a symbol plan: `length` symbols of `source` starting at `offset`.
struct PlanBlock {
  EpPoint source;
  Index offset = 0;
  Index length = 1;
};

/// A finitely describable rule k -> block k. Blocks must have positive length.
class BlockRule {
 public:
  virtual ~BlockRule() = default;
  virtual Alphabet alphabet() const = 0;
  virtual PlanBlock block(std::size_t k) const = 0;
  virtual nlohmann::json describe() const = 0;
};

/// Sequence given by concatenating the blocks of a rule. Block boundaries
/// and the realized prefix are cached behind a mutex; copies share the cache.
class ScheduledPoint {
 public:
  explicit ScheduledPoint(std::shared_ptr<const BlockRule> rule);

  /// Rule built from a callable; `description` is reported by describe().
  static ScheduledPoint from_function(Alphabet alphabet,
                                      std::function<PlanBlock(std::size_t)> fn,
                                      nlohmann::json description = {});

  Alphabet alphabet() const { return rule_->alphabet(); }
  const BlockRule& rule() const noexcept { return *rule_; }
  std::shared_ptr<const BlockRule> rule_ptr() const noexcept { return rule_; }

  Symbol symbol_at(Index i) const;
  /// First n symbols.
  Word realize(Index n) const;
  /// Symbols [from, from + n) written into out.
  void read(Index from, std::span<Symbol> out) const;

  /// Start index of block k (block 0 starts at 0).
  Index block_start(std::size_t k) const;
  Index block_end(std::size_t k) const { return block_start(k + 1); }
  /// Block containing position i.
  std::size_t block_of(Index i) const;
  PlanBlock block(std::size_t k) const;

 private:
  struct Cache;
  std::shared_ptr<const BlockRule> rule_;
  std::shared_ptr<Cache> cache_;
};

using Point = std::variant<EpPoint, ScheduledPoint>;

Alphabet alphabet_of(const Point& p);
Symbol symbol_at(const Point& p, Index i);
Word prefix_of(const Point& p, Index n);
/// Symbols [from, from + n).
Word window_of(const Point& p, Index from, Index n);

EpPoint shift(const EpPoint& p, Index k);

/// Exact distance of two eventually periodic points.
Distance dist(const EpPoint& x, const EpPoint& y);

/// Distance of arbitrary points, exact when a disagreement occurs within
/// `max_depth` symbols; otherwise std::nullopt (only possible when a
/// scheduled point is involved and the points agree on the whole window).
std::optional<Distance> dist(const Point& x, const Point& y, Index max_depth = Index{1} << 20);

/// Decides d(sigma^k x, sigma^k y) < t with finite lookahead.
bool close_at(const Point& x, const Point& y, Index k, double t);

/// Does the common prefix of sigma^k x and sigma^k y have length >= depth?
bool agree_at_least(const Point& x, const Point& y, Index k, Index depth);

/// Max pairwise distance of the k-shifted points (all eventually periodic).
Distance tuple_diameter(std::span<const EpPoint> points, Index k);

/// Pairwise-distance pattern of an eventually periodic tuple over one joint
/// cycle. For every time s >= tail_start the pairwise distances at s equal
/// those at tail_start + (s - tail_start) mod period.
struct TailStats {
  Index tail_start = 0;  // max preperiod length
  Index period = 1;      // lcm of cycle lengths
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  // distances[t][p]: pair p at time tail_start + t
  std::vector<std::vector<Distance>> distances;

  Distance max_distance() const;          // limsup of the tuple diameter
  Distance min_distance() const;          // liminf of the min pairwise distance
  Distance pair_max(std::size_t p) const;
  Distance pair_min(std::size_t p) const;
  Distance diameter_at(std::size_t t) const;
  Distance min_pair_at(std::size_t t) const;
  /// Number of cycle positions where every pair is below t.
  Index count_all_closer(double t) const;
  /// Number of cycle positions where every pair is above delta.
  Index count_all_farther(double delta) const;
};

TailStats joint_tail_stats(std::span<const EpPoint> points);

/// Literal syntax u(w): symbols 0-9 then a-z for 10..35, or [n] for any n.
EpPoint parse_point(std::string_view literal, Alphabet alphabet);
std::string format_word(const Word& w);
std::string format_point(const EpPoint& p);
Word parse_word(std::string_view text, Alphabet alphabet);

nlohmann::json to_json(const EpPoint& p);
nlohmann::json to_json(const ScheduledPoint& p);
nlohmann::json to_json(const Point& p);

Index lcm_checked(Index a, Index b);

/// Cap on realized-prefix length: CHAOSKIT_MAX_HORIZON, default 2^24.
Index max_horizon();

}  // namespace chaoskit
