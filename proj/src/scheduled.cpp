#include <algorithm>
#include <cstdlib>
#include <limits>
#include <mutex>

#include "chaoskit/errors.hpp"
#include "chaoskit/symbolic.hpp"

namespace chaoskit {

Index max_horizon() {
  static const Index cap = [] {
    if (const char* env = std::getenv("CHAOSKIT_MAX_HORIZON")) {
      try {
        const auto v = std::stoull(env);
        if (v > 0) return static_cast<Index>(v);
      } catch (const std::exception&) {
      }
    }
    return Index{1} << 24;
  }();
  return cap;
}

namespace {

class FunctionRule final : public BlockRule {
 public:
  FunctionRule(Alphabet a, std::function<PlanBlock(std::size_t)> fn, nlohmann::json d)
      : alphabet_(a), fn_(std::move(fn)), description_(std::move(d)) {}
  Alphabet alphabet() const override { return alphabet_; }
  PlanBlock block(std::size_t k) const override { return fn_(k); }
  nlohmann::json describe() const override { return description_; }

 private:
  Alphabet alphabet_;
  std::function<PlanBlock(std::size_t)> fn_;
  nlohmann::json description_;
};

}  // namespace

struct ScheduledPoint::Cache {
  std::mutex mutex;
  std::vector<Index> starts{0};
  std::vector<PlanBlock> blocks;
  Word realized;

  void extend_blocks(const BlockRule& rule, std::size_t count) {
    while (blocks.size() < count) {
      PlanBlock b = rule.block(blocks.size());
      if (b.length == 0) throw PreconditionViolation("plan block with zero length");
      if (!(b.source.alphabet() == rule.alphabet()))
        throw AlphabetMismatch("plan block source over a different alphabet");
      if (starts.back() > std::numeric_limits<Index>::max() - b.length)
        throw HorizonExceeded("cumulative plan length overflows 64 bits");
      starts.push_back(starts.back() + b.length);
      blocks.push_back(std::move(b));
    }
  }

  std::size_t block_of(const BlockRule& rule, Index i) {
    while (starts.back() <= i) extend_blocks(rule, blocks.size() + 1);
    const auto it = std::upper_bound(starts.begin(), starts.end(), i);
    return static_cast<std::size_t>(it - starts.begin()) - 1;
  }

  Symbol symbol_at(const BlockRule& rule, Index i) {
    if (i < realized.size()) return realized[i];
    const std::size_t k = block_of(rule, i);
    const PlanBlock& b = blocks[k];
    return b.source.symbol_at(b.offset + (i - starts[k]));
  }

  void realize(const BlockRule& rule, Index n) {
    if (n <= realized.size()) return;
    if (n > max_horizon())
      throw HorizonExceeded("realized prefix of " + std::to_string(n) +
                            " symbols exceeds CHAOSKIT_MAX_HORIZON=" +
                            std::to_string(max_horizon()));
    realized.reserve(n);
    while (realized.size() < n) {
      const Index i = realized.size();
      const std::size_t k = block_of(rule, i);
      const PlanBlock& b = blocks[k];
      const Index stop = std::min(n, starts[k + 1]);
      for (Index j = i; j < stop; ++j)
        realized.push_back(b.source.symbol_at(b.offset + (j - starts[k])));
    }
  }
};

ScheduledPoint::ScheduledPoint(std::shared_ptr<const BlockRule> rule)
    : rule_(std::move(rule)), cache_(std::make_shared<Cache>()) {
  if (!rule_) throw PreconditionViolation("scheduled point needs a block rule");
}

ScheduledPoint ScheduledPoint::from_function(Alphabet alphabet,
                                             std::function<PlanBlock(std::size_t)> fn,
                                             nlohmann::json description) {
  return ScheduledPoint(
      std::make_shared<FunctionRule>(alphabet, std::move(fn), std::move(description)));
}

Symbol ScheduledPoint::symbol_at(Index i) const {
  std::lock_guard lock(cache_->mutex);
  return cache_->symbol_at(*rule_, i);
}

Word ScheduledPoint::realize(Index n) const {
  std::lock_guard lock(cache_->mutex);
  cache_->realize(*rule_, n);
  return Word(cache_->realized.begin(), cache_->realized.begin() + static_cast<std::ptrdiff_t>(n));
}

void ScheduledPoint::read(Index from, std::span<Symbol> out) const {
  std::lock_guard lock(cache_->mutex);
  Index i = from;
  std::size_t w = 0;
  while (w < out.size()) {
    if (i < cache_->realized.size()) {
      const Index stop = std::min<Index>(cache_->realized.size(), i + (out.size() - w));
      for (; i < stop; ++i) out[w++] = cache_->realized[i];
      continue;
    }
    const std::size_t k = cache_->block_of(*rule_, i);
    const PlanBlock& b = cache_->blocks[k];
    const Index stop = std::min<Index>(cache_->starts[k + 1], i + (out.size() - w));
    for (; i < stop; ++i) out[w++] = b.source.symbol_at(b.offset + (i - cache_->starts[k]));
  }
}

Index ScheduledPoint::block_start(std::size_t k) const {
  std::lock_guard lock(cache_->mutex);
  cache_->extend_blocks(*rule_, k);
  return cache_->starts[k];
}

std::size_t ScheduledPoint::block_of(Index i) const {
  std::lock_guard lock(cache_->mutex);
  return cache_->block_of(*rule_, i);
}

PlanBlock ScheduledPoint::block(std::size_t k) const {
  std::lock_guard lock(cache_->mutex);
  cache_->extend_blocks(*rule_, k + 1);
  return cache_->blocks[k];
}

}  // namespace chaoskit
