#include "chaoskit/plan.hpp"

#include <limits>
#include <map>

#include "chaoskit/errors.hpp"

namespace chaoskit {

const char* mode_name(BlockMode m) {
  switch (m) {
    case BlockMode::prefix:
      return "PREFIX";
    case BlockMode::asymptotic:
      return "ASYMPTOTIC";
    case BlockMode::distal:
      return "DISTAL";
  }
  return "?";
}

std::shared_ptr<const BlockPlan> BlockPlan::create(PlanSetup setup) {
  return std::shared_ptr<const BlockPlan>(new BlockPlan(std::move(setup)));
}

BlockPlan::BlockPlan(PlanSetup setup) : setup_(std::move(setup)) {
  const auto& s = setup_.system;
  const std::size_t n = s.size();
  seam_bound_ = 2 * n * n + 2 * n + 2;
  if (setup_.starts.empty()) throw PreconditionViolation("plan without members");
  if (setup_.prefix_length == 0) throw PreconditionViolation("prefix block must be nonempty");
  if (setup_.distal_slots.empty()) throw PreconditionViolation("plan without DISTAL slots");
  if (!setup_.common.purely_periodic()) throw PreconditionViolation("common source must be periodic");
  if (!s.admissible(setup_.common)) throw NotAdmissible("common source is not admissible");
  for (const auto& v : setup_.targets) {
    if (!v.purely_periodic()) throw PreconditionViolation("targets must be periodic");
    if (!s.admissible(v)) throw NotAdmissible("target is not admissible");
  }
  for (const auto& x : setup_.starts)
    if (!s.admissible(x)) throw NotAdmissible("start point " + format_point(x) + " is not admissible");
  for (const auto& slot : setup_.distal_slots) {
    if (slot.size() != members()) throw PreconditionViolation("every DISTAL slot needs one entry per member");
    for (int t : slot)
      if (t < -1 || t >= static_cast<int>(setup_.targets.size()))
        throw PreconditionViolation("DISTAL slot names an unknown target");
  }
}

BlockMode BlockPlan::mode(std::size_t k) const { return info(k).mode; }
std::size_t BlockPlan::slot(std::size_t k) const { return info(k).slot; }
Index BlockPlan::length(std::size_t k) const { return info(k).length; }
Index BlockPlan::start(std::size_t k) const { return info(k).start; }
Index BlockPlan::seam_length(std::size_t k) const { return info(k).seam; }
Word BlockPlan::seam(std::size_t k, std::size_t member) const { return info(k).seams.at(member); }
EpPoint BlockPlan::body(std::size_t k, std::size_t member) const { return info(k).bodies.at(member); }
PlanBlock BlockPlan::block(std::size_t k, std::size_t member) const {
  return info(k).blocks.at(member);
}

std::size_t BlockPlan::last_block() const {
  std::lock_guard lock(mutex_);
  while (overflow_at_ == static_cast<std::size_t>(-1)) {
    try {
      extend(infos_.size());
    } catch (const HorizonExceeded&) {
    }
  }
  return overflow_at_ - 1;
}

const BlockPlan::Info& BlockPlan::info(std::size_t k) const {
  std::lock_guard lock(mutex_);
  extend(k);
  return infos_[k];
}

void BlockPlan::extend(std::size_t k) const {
  const auto& s = setup_.system;
  const std::size_t m = members();
  while (infos_.size() <= k) {
    const std::size_t j = infos_.size();
    if (j >= overflow_at_) throw HorizonExceeded("plan block " + std::to_string(j) + " ends past 2^64");
    Info in;
    if (j == 0) {
      in.mode = BlockMode::prefix;
      in.slot = 0;
      in.start = 0;
      in.length = setup_.prefix_length;
      in.seam = 0;
      in.seams.assign(m, {});
      in.bodies = setup_.starts;
      for (std::size_t i = 0; i < m; ++i) in.blocks.push_back({setup_.starts[i], 0, in.length});
      infos_.push_back(std::move(in));
      continue;
    }
    const Info& prev = infos_.back();
    in.mode = j % 2 == 1 ? BlockMode::asymptotic : BlockMode::distal;
    in.slot = in.mode == BlockMode::distal ? (j / 2 - 1) % setup_.distal_slots.size() : 0;
    in.bodies.assign(m, setup_.common);
    if (in.mode == BlockMode::distal) {
      const auto& slot = setup_.distal_slots[in.slot];
      for (std::size_t i = 0; i < m; ++i)
        if (slot[i] >= 0) in.bodies[i] = setup_.targets[static_cast<std::size_t>(slot[i])];
    }
    std::vector<Symbol> exits(m), entries(m);
    for (std::size_t i = 0; i < m; ++i) {
      const PlanBlock& b = prev.blocks[i];
      exits[i] = b.source.symbol_at(b.offset + b.length - 1);
      entries[i] = in.bodies[i].cycle().front();
    }
    const auto walks = aligned_walks(s, exits, entries, seam_bound_);
    if (!walks)
      throw ClassMismatch("no common-length seams into block " + std::to_string(j) +
                          ": coordinates sit in incompatible cyclic classes");
    in.seam = walks->length;
    in.seams = walks->words;
    const Index history = prev.start + prev.length;
    const Index limit = std::numeric_limits<Index>::max();
    if (history > (limit - 1) / j || j * history + 1 > limit - history) {
      overflow_at_ = j;
      throw HorizonExceeded("plan block " + std::to_string(j) + " ends past 2^64");
    }
    in.start = history;
    in.length = std::max<Index>(j * history + 1, in.seam + 1);
    for (std::size_t i = 0; i < m; ++i)
      in.blocks.push_back({EpPoint(s.alphabet(), in.seams[i], in.bodies[i].cycle()), 0, in.length});
    infos_.push_back(std::move(in));
  }
}

std::vector<ScheduledPoint> BlockPlan::points() const {
  std::vector<ScheduledPoint> out;
  for (std::size_t i = 0; i < members(); ++i)
    out.emplace_back(std::make_shared<PlanCoordinateRule>(shared_from_this(), i));
  return out;
}

nlohmann::json BlockPlan::describe(std::size_t blocks) const {
  nlohmann::json j;
  j["schedule"] = "L_k = max(k * S_{k-1} + 1, seam_k + 1)";
  j["prefix_length"] = setup_.prefix_length;
  j["common"] = format_point(setup_.common);
  nlohmann::json ts = nlohmann::json::array();
  for (const auto& v : setup_.targets) ts.push_back(format_point(v));
  j["targets"] = ts;
  nlohmann::json xs = nlohmann::json::array();
  for (const auto& x : setup_.starts) xs.push_back(format_point(x));
  j["starts"] = xs;
  j["distal_slots"] = setup_.distal_slots;
  j["seam_bound"] = seam_bound_;
  nlohmann::json bs = nlohmann::json::array();
  for (std::size_t k = 0; k < blocks; ++k) {
    const Info& in = info(k);
    nlohmann::json b{{"k", k}, {"mode", mode_name(in.mode)}, {"start", in.start},
                     {"length", in.length}, {"seam", in.seam}};
    if (in.mode == BlockMode::distal) b["slot"] = in.slot;
    nlohmann::json seams = nlohmann::json::array();
    for (const auto& w : in.seams) seams.push_back(format_word(w));
    b["seams"] = seams;
    bs.push_back(b);
  }
  j["blocks"] = bs;
  return j;
}

nlohmann::json PlanCoordinateRule::describe() const {
  return {{"member", member_}, {"plan", plan_->describe()}};
}

const PlanCoordinateRule* plan_rule_of(const Point& p) {
  const auto* s = std::get_if<ScheduledPoint>(&p);
  if (!s) return nullptr;
  return dynamic_cast<const PlanCoordinateRule*>(&s->rule());
}

}  // namespace chaoskit
