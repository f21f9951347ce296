#pragma once

// Block plans behind the scrambled constructions.
//
// Block 0 copies a prefix of each member's start point. Block k >= 1 has
// length L_k = max(k S_{k-1} + 1, l_k + 1) and starts with seams of one
// common length l_k; after the seam odd blocks (ASYMPTOTIC) follow the common
// periodic point o for every member, even blocks (DISTAL) let the members of
// a slot follow the targets the slot assigns them while everybody else
// follows o. DISTAL blocks cycle through the slots in order.

#include <cstddef>
#include <memory>
#include <deque>
#include <mutex>
#include <vector>

#include <json.hpp>

#include "chaoskit/sft.hpp"
#include "chaoskit/symbolic.hpp"

namespace chaoskit {

enum class BlockMode { prefix, asymptotic, distal };

const char* mode_name(BlockMode m);

struct PlanSetup {
  Sft system;
  std::vector<EpPoint> starts;                      // one per member
  EpPoint common;                                   // o, purely periodic
  std::vector<EpPoint> targets;                     // v_1..v_n, purely periodic
  // One entry per member and DISTAL slot: the target index it follows, or -1 for o.
  std::vector<std::vector<int>> distal_slots;
  Index prefix_length = 1;                          // length of block 0
};

class BlockPlan : public std::enable_shared_from_this<BlockPlan> {
 public:
  static std::shared_ptr<const BlockPlan> create(PlanSetup setup);

  const PlanSetup& setup() const noexcept { return setup_; }
  std::size_t members() const noexcept { return setup_.starts.size(); }

  BlockMode mode(std::size_t k) const;
  /// DISTAL slot of block k (index into setup().distal_slots).
  std::size_t slot(std::size_t k) const;
  Index length(std::size_t k) const;
  Index start(std::size_t k) const;
  Index end(std::size_t k) const { return start(k) + length(k); }
  Index seam_length(std::size_t k) const;
  Word seam(std::size_t k, std::size_t member) const;
  EpPoint body(std::size_t k, std::size_t member) const;
  PlanBlock block(std::size_t k, std::size_t member) const;

  /// Uniform bound on seam lengths (the aligned-walk search cap).
  Index seam_bound() const noexcept { return seam_bound_; }

  /// Largest k whose block end fits in 64 bits.
  std::size_t last_block() const;

  std::vector<ScheduledPoint> points() const;
  nlohmann::json describe(std::size_t blocks = 6) const;

 private:
  explicit BlockPlan(PlanSetup setup);

  struct Info {
    BlockMode mode;
    std::size_t slot;
    Index start;
    Index length;
    std::size_t seam;
    std::vector<Word> seams;
    std::vector<EpPoint> bodies;
    std::vector<PlanBlock> blocks;
  };
  const Info& info(std::size_t k) const;
  void extend(std::size_t k) const;

  PlanSetup setup_;
  Index seam_bound_;
  mutable std::mutex mutex_;
  mutable std::deque<Info> infos_;
  mutable std::size_t overflow_at_ = static_cast<std::size_t>(-1);
};

/// Coordinate `member` of a plan as a block rule.
class PlanCoordinateRule final : public BlockRule {
 public:
  PlanCoordinateRule(std::shared_ptr<const BlockPlan> plan, std::size_t member)
      : plan_(std::move(plan)), member_(member) {}
  Alphabet alphabet() const override { return plan_->setup().system.alphabet(); }
  PlanBlock block(std::size_t k) const override { return plan_->block(k, member_); }
  nlohmann::json describe() const override;

  const std::shared_ptr<const BlockPlan>& plan() const noexcept { return plan_; }
  std::size_t member() const noexcept { return member_; }

 private:
  std::shared_ptr<const BlockPlan> plan_;
  std::size_t member_;
};

/// The plan and member behind a scheduled point, if it is a plan coordinate.
const PlanCoordinateRule* plan_rule_of(const Point& p);

}  // namespace chaoskit
