#include "chaoskit/sft.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <numeric>

#include "chaoskit/errors.hpp"

namespace chaoskit {

namespace {

// Tarjan, iterative.
std::pair<std::vector<std::size_t>, std::size_t> strongly_connected(
    std::size_t n, const std::vector<std::vector<Symbol>>& succ) {
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, unset), low(n, 0), comp(n, unset);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t next = 0, count = 0;
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != unset) continue;
    std::vector<std::pair<std::size_t, std::size_t>> frames{{root, 0}};
    index[root] = low[root] = next++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, edge] = frames.back();
      if (edge < succ[v].size()) {
        const std::size_t w = succ[v][edge++];
        if (index[w] == unset) {
          index[w] = low[w] = next++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const std::size_t done = v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[done]);
      if (low[done] == index[done]) {
        while (true) {
          const std::size_t w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = count;
          if (w == done) break;
        }
        ++count;
      }
    }
  }
  return {comp, count};
}

std::vector<std::size_t> bfs_levels(std::size_t n, const std::vector<std::vector<Symbol>>& succ,
                                    std::size_t from) {
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> level(n, unset);
  std::deque<std::size_t> queue{from};
  level[from] = 0;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (Symbol w : succ[v])
      if (level[w] == unset) {
        level[w] = level[v] + 1;
        queue.push_back(w);
      }
  }
  return level;
}

GraphAnalysis analyze(std::size_t n, const std::vector<std::vector<Symbol>>& succ) {
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  GraphAnalysis g;
  std::tie(g.component, g.component_count) = strongly_connected(n, succ);
  g.irreducible = g.component_count == 1;
  for (std::size_t v = 0; v < n; ++v) {
    const auto level = bfs_levels(n, succ, v);
    for (std::size_t w = 0; w < n; ++w)
      if (level[w] != unset) g.diameter = std::max(g.diameter, level[w]);
  }
  if (!g.irreducible) return g;
  const auto level = bfs_levels(n, succ, 0);
  std::size_t q = 0;
  std::size_t edges = 0;
  for (std::size_t v = 0; v < n; ++v)
    for (Symbol w : succ[v]) {
      ++edges;
      const long long diff =
          static_cast<long long>(level[v]) + 1 - static_cast<long long>(level[w]);
      q = std::gcd(q, static_cast<std::size_t>(diff < 0 ? -diff : diff));
    }
  g.period = q;
  g.classes.assign(q, {});
  g.class_of.assign(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    g.class_of[v] = level[v] % q;
    g.classes[g.class_of[v]].push_back(static_cast<Symbol>(v));
  }
  g.single_cycle = edges == n;
  return g;
}

}  // namespace

Sft Sft::build(BoolMatrix allowed, std::vector<Word> labels, std::size_t step,
               std::shared_ptr<const Sft> parent, Alphabet source_alphabet,
               std::string provenance) {
  const std::size_t n0 = allowed.size();
  for (const auto& row : allowed)
    if (row.size() != n0) throw PreconditionViolation("transition matrix must be square");
  if (labels.size() != n0) throw PreconditionViolation("one label per symbol required");
  if (step == 0) throw PreconditionViolation("decoding step must be positive");
  for (const auto& l : labels)
    if (l.size() < step) throw PreconditionViolation("label shorter than decoding step");

  std::vector<bool> alive(n0, true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t v = 0; v < n0; ++v) {
      if (!alive[v]) continue;
      bool out = false, in = false;
      for (std::size_t w = 0; w < n0; ++w) {
        if (!alive[w]) continue;
        out = out || allowed[v][w];
        in = in || allowed[w][v];
      }
      if (!out || !in) {
        alive[v] = false;
        changed = true;
      }
    }
  }
  std::vector<std::size_t> keep;
  for (std::size_t v = 0; v < n0; ++v)
    if (alive[v]) keep.push_back(v);
  if (keep.empty()) throw EmptySubshift();

  Sft s;
  s.size_ = keep.size();
  s.allowed_.assign(s.size_ * s.size_, 0);
  s.successors_.assign(s.size_, {});
  s.predecessors_.assign(s.size_, {});
  for (std::size_t i = 0; i < s.size_; ++i)
    for (std::size_t j = 0; j < s.size_; ++j)
      if (allowed[keep[i]][keep[j]]) {
        s.allowed_[i * s.size_ + j] = 1;
        s.successors_[i].push_back(static_cast<Symbol>(j));
        s.predecessors_[j].push_back(static_cast<Symbol>(i));
      }
  for (std::size_t v : keep) s.labels_.push_back(std::move(labels[v]));
  s.step_ = step;
  s.parent_ = std::move(parent);
  s.source_alphabet_ = source_alphabet;
  s.provenance_ = std::move(provenance);
  const Alphabet label_alphabet = s.parent_ ? s.parent_->alphabet() : source_alphabet;
  for (const auto& l : s.labels_) check_word(l, label_alphabet);
  s.analysis_ = analyze(s.size_, s.successors_);
  return s;
}

Sft Sft::full_shift(std::size_t k) {
  if (k == 0) throw PreconditionViolation("full shift needs at least one symbol");
  BoolMatrix m(k, std::vector<bool>(k, true));
  std::vector<Word> labels;
  for (std::size_t i = 0; i < k; ++i) labels.push_back({static_cast<Symbol>(i)});
  return build(std::move(m), std::move(labels), 1, nullptr, Alphabet(k),
               "native full shift on " + std::to_string(k) + " symbols");
}

BoolMatrix Sft::matrix() const {
  BoolMatrix m(size_, std::vector<bool>(size_, false));
  for (std::size_t i = 0; i < size_; ++i)
    for (std::size_t j = 0; j < size_; ++j) m[i][j] = allowed(i, j);
  return m;
}

bool Sft::admissible(const Word& w) const {
  for (Symbol s : w)
    if (s >= size_) return false;
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (!allowed(w[i], w[i + 1])) return false;
  return true;
}

bool Sft::admissible(const EpPoint& p) const {
  if (p.alphabet().size != size_) return false;
  Word w = p.preperiod();
  w.insert(w.end(), p.cycle().begin(), p.cycle().end());
  w.push_back(p.cycle().front());
  return admissible(w);
}

bool Sft::admissible_prefix(const Point& p, Index n) const {
  if (alphabet_of(p).size != size_) return false;
  if (const auto* e = std::get_if<EpPoint>(&p)) {
    if (n > e->preperiod().size() + e->cycle().size()) return admissible(*e);
  }
  return admissible(prefix_of(p, n));
}

EpPoint Sft::encode_one(const EpPoint& x) const {
  const Alphabet from = parent_ ? parent_->alphabet() : source_alphabet_;
  if (x.alphabet() != from) throw AlphabetMismatch("point is not over the coding alphabet");
  std::size_t label_len = labels_.front().size();
  for (const auto& l : labels_)
    if (l.size() != label_len) throw PreconditionViolation("encoding needs equal-length labels");
  // position i of the code reads x[i*step, i*step + label_len); the readout
  // is periodic from the first position past the preperiod.
  const std::size_t u = x.preperiod().size();
  const std::size_t pre = (u + step_ - 1) / step_;
  const std::size_t cyc = x.cycle().size() / std::gcd(x.cycle().size(), step_);
  Word code;
  code.reserve(pre + cyc);
  for (std::size_t i = 0; i < pre + cyc; ++i) {
    Word block(label_len);
    for (std::size_t r = 0; r < label_len; ++r) block[r] = x.symbol_at(i * step_ + r);
    const auto it = std::find(labels_.begin(), labels_.end(), block);
    if (it == labels_.end())
      throw NotAdmissible("point " + format_point(x) + " has a block outside the presentation");
    code.push_back(static_cast<Symbol>(it - labels_.begin()));
  }
  EpPoint y(alphabet(), Word(code.begin(), code.begin() + pre), Word(code.begin() + pre, code.end()));
  if (!admissible(y)) throw NotAdmissible("point " + format_point(x) + " is not admissible");
  return y;
}

EpPoint Sft::encode(const EpPoint& source_point) const {
  if (!parent_) return encode_one(source_point);
  return encode_one(parent_->encode(source_point));
}

EpPoint Sft::decode_one(const EpPoint& p) const {
  if (p.alphabet().size != size_) throw AlphabetMismatch("point is not over this system");
  auto expand = [&](const Word& w) {
    Word out;
    out.reserve(w.size() * step_);
    for (Symbol s : w) out.insert(out.end(), labels_[s].begin(), labels_[s].begin() + step_);
    return out;
  };
  const Alphabet to = parent_ ? parent_->alphabet() : source_alphabet_;
  return EpPoint(to, expand(p.preperiod()), expand(p.cycle()));
}

EpPoint Sft::decode(const EpPoint& p) const {
  EpPoint q = decode_one(p);
  return parent_ ? parent_->decode(q) : q;
}

namespace {

class DecodedRule : public BlockRule {
 public:
  DecodedRule(const Sft* system, std::shared_ptr<const BlockRule> inner, Alphabet to)
      : system_(system), inner_(std::move(inner)), to_(to) {}
  Alphabet alphabet() const override { return to_; }
  PlanBlock block(std::size_t k) const override {
    PlanBlock b = inner_->block(k);
    const Index step = system_->step();
    Word pre, cyc;
    for (Symbol s : b.source.preperiod())
      pre.insert(pre.end(), system_->labels()[s].begin(), system_->labels()[s].begin() + step);
    for (Symbol s : b.source.cycle())
      cyc.insert(cyc.end(), system_->labels()[s].begin(), system_->labels()[s].begin() + step);
    return {EpPoint(to_, std::move(pre), std::move(cyc)), b.offset * step, b.length * step};
  }
  nlohmann::json describe() const override {
    return {{"decoded", inner_->describe()}, {"step", system_->step()}};
  }

 private:
  const Sft* system_;
  std::shared_ptr<const BlockRule> inner_;
  Alphabet to_;
};

}  // namespace

ScheduledPoint Sft::lift(const ScheduledPoint& p) const {
  if (p.alphabet().size != size_) throw AlphabetMismatch("point is not over this system");
  const Alphabet to = parent_ ? parent_->alphabet() : source_alphabet_;
  // The rule reads the labels through a pointer, so it keeps its own copy of the system.
  class Owning : public DecodedRule {
   public:
    Owning(std::shared_ptr<const Sft> s, std::shared_ptr<const BlockRule> inner, Alphabet to)
        : DecodedRule(s.get(), std::move(inner), to), keep_(std::move(s)) {}

   private:
    std::shared_ptr<const Sft> keep_;
  };
  return ScheduledPoint(std::make_shared<Owning>(std::make_shared<const Sft>(*this), p.rule_ptr(), to));
}

ScheduledPoint Sft::decode(const ScheduledPoint& p) const {
  ScheduledPoint q = lift(p);
  return parent_ ? parent_->decode(q) : q;
}

Point Sft::lift(const Point& p) const {
  return std::visit([&](const auto& v) -> Point { return lift(v); }, p);
}

Point Sft::decode(const Point& p) const {
  return std::visit([&](const auto& v) -> Point { return decode(v); }, p);
}

nlohmann::json Sft::summary() const {
  nlohmann::json j;
  j["symbols"] = size_;
  j["source_alphabet"] = source_alphabet_.size;
  j["provenance"] = provenance_;
  if (size_ <= 32) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < size_; ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t k = 0; k < size_; ++k) row.push_back(allowed(i, k) ? 1 : 0);
      rows.push_back(row);
    }
    j["matrix"] = rows;
  }
  bool identity = !parent_ && step_ == 1 && size_ == source_alphabet_.size;
  for (std::size_t i = 0; identity && i < size_; ++i)
    identity = labels_[i] == Word{static_cast<Symbol>(i)};
  if (!identity) {
    nlohmann::json ls = nlohmann::json::array();
    for (const auto& l : labels_) ls.push_back(format_word(l));
    j["labels"] = ls;
    j["decode_step"] = step_;
  }
  return j;
}

Sft essentialize(const BoolMatrix& allowed) {
  std::vector<Word> labels;
  for (std::size_t i = 0; i < allowed.size(); ++i) labels.push_back({static_cast<Symbol>(i)});
  if (allowed.empty()) throw EmptySubshift();
  return Sft::build(allowed, std::move(labels), 1, nullptr, Alphabet(allowed.size()),
                    "transition matrix on " + std::to_string(allowed.size()) + " symbols");
}

Sft higher_block_recode(Alphabet alphabet, const std::vector<Word>& forbidden) {
  std::size_t m = 2;
  for (const auto& f : forbidden) {
    check_word(f, alphabet);
    if (f.empty()) throw PreconditionViolation("forbidden words must be nonempty");
    m = std::max(m, f.size());
  }
  auto clean = [&](const Word& w) {
    for (const auto& f : forbidden)
      if (std::search(w.begin(), w.end(), f.begin(), f.end()) != w.end()) return false;
    return true;
  };
  const std::size_t len = m - 1;
  std::vector<Word> blocks;
  Word cur(len, 0);
  std::function<void(std::size_t)> gen = [&](std::size_t i) {
    if (i == len) {
      if (clean(cur)) blocks.push_back(cur);
      return;
    }
    for (Symbol s = 0; s < alphabet.size; ++s) {
      cur[i] = s;
      gen(i + 1);
    }
  };
  gen(0);
  if (blocks.empty()) throw EmptySubshift();
  BoolMatrix a(blocks.size(), std::vector<bool>(blocks.size(), false));
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      if (!std::equal(blocks[i].begin() + 1, blocks[i].end(), blocks[j].begin())) continue;
      Word w = blocks[i];
      w.push_back(blocks[j].back());
      a[i][j] = clean(w);
    }
  std::string note = forbidden.empty() ? "full shift on " + std::to_string(alphabet.size) +
                                             " symbols (no forbidden words)"
                                       : std::to_string(len) + "-block recoding of " +
                                             std::to_string(forbidden.size()) +
                                             " forbidden words";
  return Sft::build(std::move(a), std::move(blocks), 1, nullptr, alphabet, note);
}

bool is_transitive(const Sft& s) { return s.analysis().irreducible; }

bool is_single_cycle(const Sft& s) { return s.analysis().irreducible && s.analysis().single_cycle; }

PeriodInfo graph_period(const Sft& s) {
  if (!s.analysis().irreducible) throw NotIrreducible();
  return {s.analysis().period, s.analysis().classes};
}

bool is_mixing(const Sft& s) { return s.analysis().irreducible && s.analysis().period == 1; }

bool is_weakly_mixing(const Sft& s) { return is_mixing(s); }

std::uint64_t trace_of_power(const Sft& s, std::size_t p) {
  if (p == 0) throw PreconditionViolation("period must be positive");
  const std::size_t n = s.size();
  using Big = unsigned __int128;
  const Big limit = std::numeric_limits<std::uint64_t>::max();
  std::vector<Big> power(n * n, 0), next(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) power[i * n + j] = s.allowed(i, j) ? 1 : 0;
  for (std::size_t step = 1; step < p; ++step) {
    std::fill(next.begin(), next.end(), 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        if (power[i * n + k] == 0) continue;
        for (Symbol j : s.successors(k)) {
          next[i * n + j] += power[i * n + k];
          if (next[i * n + j] > limit) throw PreconditionViolation("periodic point count overflows 64 bits");
        }
      }
    std::swap(power, next);
  }
  Big t = 0;
  for (std::size_t i = 0; i < n; ++i) t += power[i * n + i];
  if (t > limit) throw PreconditionViolation("periodic point count overflows 64 bits");
  return static_cast<std::uint64_t>(t);
}

PeriodicPoints periodic_points(const Sft& s, std::size_t p, std::size_t enumerate_limit) {
  PeriodicPoints out;
  out.count = trace_of_power(s, p);
  out.dense = s.analysis().irreducible;
  Word walk(p);
  std::function<bool(std::size_t)> extend = [&](std::size_t i) {
    if (i == p) {
      if (!s.allowed(walk[p - 1], walk[0])) return true;
      if (out.points.size() >= enumerate_limit) {
        out.truncated = true;
        return false;
      }
      out.points.push_back(EpPoint::periodic(s.alphabet(), walk));
      return true;
    }
    for (Symbol next : s.successors(walk[i - 1])) {
      walk[i] = next;
      if (!extend(i + 1)) return false;
    }
    return true;
  };
  for (Symbol a = 0; a < s.size(); ++a) {
    walk[0] = a;
    if (!extend(1)) break;
  }
  return out;
}

Sft power_system(const Sft& s, std::size_t p, std::optional<std::size_t> cyclic_class) {
  if (p == 0) throw PreconditionViolation("power must be positive");
  if (cyclic_class) {
    if (!s.analysis().irreducible) throw NotIrreducible();
    if (*cyclic_class >= s.analysis().period)
      throw PreconditionViolation("cyclic class index out of range");
  }
  std::vector<Word> blocks;
  Word cur(p);
  std::function<void(std::size_t)> gen = [&](std::size_t i) {
    if (i == p) {
      blocks.push_back(cur);
      return;
    }
    for (Symbol b : s.successors(cur[i - 1])) {
      cur[i] = b;
      gen(i + 1);
    }
  };
  for (Symbol a = 0; a < s.size(); ++a) {
    if (cyclic_class && s.analysis().class_of[a] != *cyclic_class) continue;
    cur[0] = a;
    gen(1);
  }
  if (blocks.empty()) throw EmptySubshift();
  BoolMatrix m(blocks.size(), std::vector<bool>(blocks.size(), false));
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (std::size_t j = 0; j < blocks.size(); ++j) m[i][j] = s.allowed(blocks[i].back(), blocks[j].front());
  std::string note = std::to_string(p) + "-th power";
  if (cyclic_class) note += " restricted to cyclic class " + std::to_string(*cyclic_class);
  note += " of: " + s.provenance();
  return Sft::build(std::move(m), std::move(blocks), p, std::make_shared<const Sft>(s),
                    s.source_alphabet(), note);
}

EpPoint common_tail(const Sft& s) {
  for (Symbol a = 0; a < s.size(); ++a)
    if (s.allowed(a, a)) return EpPoint::constant(s.alphabet(), a);
  for (std::size_t p = 2; p <= s.size(); ++p) {
    auto pts = periodic_points(s, p, 1);
    if (!pts.points.empty()) return pts.points.front();
  }
  throw EmptySubshift();
}

Word connecting_word(const Sft& s, Symbol from, Symbol to) {
  if (!s.analysis().irreducible) throw NotIrreducible();
  if (s.allowed(from, to)) return {};
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> parent(s.size(), unset);
  std::deque<Symbol> queue;
  for (Symbol w : s.successors(from))
    if (parent[w] == unset) {
      parent[w] = from;
      queue.push_back(w);
    }
  while (!queue.empty()) {
    const Symbol v = queue.front();
    queue.pop_front();
    if (s.allowed(v, to)) {
      // BFS-tree paths are shortest, so they never revisit `from`.
      Word w;
      for (Symbol c = v; c != from; c = static_cast<Symbol>(parent[c])) w.push_back(c);
      std::reverse(w.begin(), w.end());
      return w;
    }
    for (Symbol w : s.successors(v))
      if (parent[w] == unset) {
        parent[w] = v;
        queue.push_back(w);
      }
  }
  throw NotIrreducible("no path from " + std::to_string(from) + " to " + std::to_string(to));
}

std::optional<AlignedWalks> aligned_walks(const Sft& s, const std::vector<Symbol>& from,
                                          const std::vector<Symbol>& to,
                                          std::optional<std::size_t> max_length) {
  if (from.size() != to.size()) throw PreconditionViolation("endpoint lists differ in size");
  const std::size_t n = s.size();
  const std::size_t k = from.size();
  AlignedWalks out;
  if (k == 0) return out;
  const std::size_t cap = max_length.value_or(2 * n * n + 2 * n + 2);
  const auto& g = s.analysis();
  if (g.irreducible && g.period > 1) {
    const std::size_t q = g.period;
    auto residue = [&](std::size_t i) { return (g.class_of[to[i]] + 2 * q - g.class_of[from[i]] - 1) % q; };
    for (std::size_t i = 1; i < k; ++i)
      if (residue(i) != residue(0)) return std::nullopt;
  }
  // history[j][i]: vertices reachable from from[i] in exactly j edges
  std::vector<std::vector<std::vector<bool>>> history;
  std::vector<std::vector<bool>> cur(k, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < k; ++i) cur[i][from[i]] = true;
  history.push_back(cur);
  for (std::size_t j = 1; j <= cap + 1; ++j) {
    std::vector<std::vector<bool>> next(k, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t v = 0; v < n; ++v)
        if (cur[i][v])
          for (Symbol w : s.successors(v)) next[i][w] = true;
    history.push_back(next);
    cur = std::move(next);
    bool all = true;
    for (std::size_t i = 0; i < k && all; ++i) all = cur[i][to[i]];
    if (!all) continue;
    out.length = j - 1;
    out.words.assign(k, Word(out.length));
    for (std::size_t i = 0; i < k; ++i) {
      Symbol target = to[i];
      for (std::size_t level = j - 1; level >= 1; --level) {
        Symbol pick = 0;
        bool found = false;
        for (Symbol v : s.predecessors(target))
          if (history[level][i][v]) {
            pick = v;
            found = true;
            break;
          }
        if (!found) throw PreconditionViolation("aligned walk reconstruction failed");
        out.words[i][level - 1] = pick;
        target = pick;
      }
    }
    return out;
  }
  return std::nullopt;
}

}  // namespace chaoskit
