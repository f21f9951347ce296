#pragma once

// Counting the times t at which a tuple is jointly close or jointly
// separated. With K = closeness_depth(t) all pairwise distances are below t
// exactly when every coordinate agrees on [t, t + K); with
// a = separation_depth(delta) all pairwise distances exceed delta exactly
// when every pair has a mismatch in [t, t + a].

#include <cstddef>
#include <span>
#include <vector>

#include "chaoskit/kernels.hpp"
#include "chaoskit/symbolic.hpp"

namespace chaoskit {

enum class Relation { all_close, all_separated };

struct Condition {
  Relation relation = Relation::all_close;
  Index depth = 1;  // K for all_close, a for all_separated

  static Condition close_below(double t) { return {Relation::all_close, closeness_depth(t)}; }
  /// Requires delta < 1.
  static Condition separated_above(double delta);
  /// Number of symbols read from each coordinate at one time.
  Index window() const noexcept { return relation == Relation::all_close ? depth : depth + 1; }
};

/// Does the condition hold at time t? Reads symbols directly.
bool holds_at(std::span<const Point> points, Index t, Condition c);

/// #{lo <= t < hi : condition at t}, computed from the block structure:
/// inside a block segment every coordinate is eventually periodic, so the
/// count is a periodic-pattern sum plus directly evaluated boundary windows.
/// Exact for every hi, with no realized prefix.
Index count_exact(std::span<const Point> points, Index lo, Index hi, Condition c);

/// Cumulative exact counts over [0, checkpoint) for increasing checkpoints.
std::vector<Index> count_exact_at(std::span<const Point> points, std::span<const Index> checkpoints,
                                  Condition c);

/// Same counts from realized prefixes through the data-parallel kernels.
/// Throws HorizonExceeded past CHAOSKIT_MAX_HORIZON.
std::vector<Index> count_horizon_at(std::span<const Point> points,
                                    std::span<const Index> checkpoints, Condition c,
                                    const kernels::Table& table = kernels::dispatch());

}  // namespace chaoskit
