#pragma once

// One-step subshifts of finite type as transition graphs, plus the graph
// analyses used throughout: irreducibility, period and cyclic classes,
// periodic points, entropy, power systems and connecting words.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "chaoskit/symbolic.hpp"

namespace chaoskit {

using BoolMatrix = std::vector<std::vector<bool>>;

struct GraphAnalysis {
  std::vector<std::size_t> component;  // strongly connected component per vertex
  std::size_t component_count = 0;
  bool irreducible = false;
  std::size_t period = 0;                    // 0 unless irreducible
  std::vector<std::vector<Symbol>> classes;  // cyclic classes C_0..C_{q-1}
  std::vector<std::size_t> class_of;
  std::size_t diameter = 0;  // longest shortest path among reachable pairs
  bool single_cycle = false;
};

class Sft {
 public:
  /// Builds a system from an explicit graph; stranded symbols are removed
  /// iteratively (labels follow the surviving symbols).
  ///
  /// `labels[s]` is the word over the parent alphabet (or the source
  /// alphabet when there is no parent) that symbol s stands for; decoding
  /// emits the first `step` symbols of each label.
  static Sft build(BoolMatrix allowed, std::vector<Word> labels, std::size_t step,
                   std::shared_ptr<const Sft> parent, Alphabet source_alphabet,
                   std::string provenance);

  static Sft full_shift(std::size_t k);

  std::size_t size() const noexcept { return size_; }
  Alphabet alphabet() const { return Alphabet(size_); }
  bool allowed(Symbol a, Symbol b) const noexcept { return allowed_[a * size_ + b] != 0; }
  const std::vector<Symbol>& successors(Symbol a) const { return successors_[a]; }
  const std::vector<Symbol>& predecessors(Symbol a) const { return predecessors_[a]; }
  BoolMatrix matrix() const;
  const std::string& provenance() const noexcept { return provenance_; }
  const GraphAnalysis& analysis() const noexcept { return analysis_; }

  /// Alphabet in which decoded points and user literals are written.
  Alphabet source_alphabet() const noexcept { return source_alphabet_; }
  const std::vector<Word>& labels() const noexcept { return labels_; }
  std::size_t step() const noexcept { return step_; }
  const Sft* parent() const noexcept { return parent_.get(); }

  bool admissible(const Word& w) const;
  bool admissible(const EpPoint& p) const;
  /// Checks the first n symbols (n - 1 transitions).
  bool admissible_prefix(const Point& p, Index n) const;

  /// Source-alphabet point -> this system's alphabet; throws NotAdmissible.
  EpPoint encode(const EpPoint& source_point) const;
  /// This system's alphabet -> source alphabet.
  EpPoint decode(const EpPoint& p) const;
  ScheduledPoint decode(const ScheduledPoint& p) const;
  Point decode(const Point& p) const;
  /// One level of decoding: to the parent's alphabet (the source alphabet at the root).
  EpPoint lift(const EpPoint& p) const { return decode_one(p); }
  ScheduledPoint lift(const ScheduledPoint& p) const;
  Point lift(const Point& p) const;

  nlohmann::json summary() const;

 private:
  Sft() = default;
  EpPoint encode_one(const EpPoint& parent_point) const;
  EpPoint decode_one(const EpPoint& p) const;

  std::size_t size_ = 0;
  std::vector<std::uint8_t> allowed_;
  std::vector<std::vector<Symbol>> successors_;
  std::vector<std::vector<Symbol>> predecessors_;
  std::vector<Word> labels_;
  std::size_t step_ = 1;
  std::shared_ptr<const Sft> parent_;
  Alphabet source_alphabet_;
  std::string provenance_;
  GraphAnalysis analysis_;
};

/// Removes symbols without an incoming or outgoing transition until fixpoint.
Sft essentialize(const BoolMatrix& allowed);

/// m-step presentation from forbidden words, recoded to one step on (m-1)-blocks.
Sft higher_block_recode(Alphabet alphabet, const std::vector<Word>& forbidden);

bool is_transitive(const Sft& s);
bool is_single_cycle(const Sft& s);

struct PeriodInfo {
  std::size_t period = 1;
  std::vector<std::vector<Symbol>> classes;
};

/// Throws NotIrreducible.
PeriodInfo graph_period(const Sft& s);

bool is_mixing(const Sft& s);
bool is_weakly_mixing(const Sft& s);

struct PeriodicPoints {
  std::uint64_t count = 0;        // trace(A^p)
  std::vector<EpPoint> points;    // closed walks of length p, as points
  bool truncated = false;         // enumeration stopped at the limit
  bool dense = false;             // periodic points dense (irreducible)
};

/// Fixed points of sigma^p.
PeriodicPoints periodic_points(const Sft& s, std::size_t p, std::size_t enumerate_limit = 1 << 16);

/// trace(A^p); throws on 64-bit overflow.
std::uint64_t trace_of_power(const Sft& s, std::size_t p);

struct EntropyResult {
  double value = 0;            // log of the spectral radius
  double spectral_radius = 0;
  std::size_t iterations = 0;
  bool converged = true;
  std::optional<double> charpoly_radius;  // independent route for size <= 4
};

EntropyResult entropy(const Sft& s);

/// Characteristic polynomial coefficients c_0..c_n (c_n = 1) of the transition matrix.
std::vector<long long> characteristic_polynomial(const Sft& s);

/// Presentation of sigma^p on allowed p-blocks; `cyclic_class` keeps only
/// blocks starting in that class.
Sft power_system(const Sft& s, std::size_t p, std::optional<std::size_t> cyclic_class = {});

/// The constant point on the smallest symbol with a self-loop, otherwise the
/// first periodic point of least period.
EpPoint common_tail(const Sft& s);

/// Shortest w with from.w.to allowed. Throws NotIrreducible.
Word connecting_word(const Sft& s, Symbol from, Symbol to);

/// Intermediate words of one common length l: from[i] . w[i] . to[i] is an
/// allowed path with |w[i]| = l for every i. Smallest such l, searched up to
/// max_length (default 2 size^2 + 2 size + 2).
struct AlignedWalks {
  std::size_t length = 0;
  std::vector<Word> words;
};
std::optional<AlignedWalks> aligned_walks(const Sft& s, const std::vector<Symbol>& from,
                                          const std::vector<Symbol>& to,
                                          std::optional<std::size_t> max_length = {});

}  // namespace chaoskit
