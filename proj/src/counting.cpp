#include "chaoskit/counting.hpp"

#include <algorithm>
#include <limits>

#include "chaoskit/errors.hpp"

namespace chaoskit {

namespace {

constexpr Index kUnbounded = std::numeric_limits<Index>::max();

void check_points(std::span<const Point> points) {
  if (points.size() < 2) throw PreconditionViolation("need at least two points");
  for (const auto& p : points)
    if (!(alphabet_of(p) == alphabet_of(points[0])))
      throw AlphabetMismatch("points over different alphabets");
}

// Thresholds above 1: every distance is below them.
bool trivially_true(Condition c) { return c.relation == Relation::all_close && c.depth == 0; }

// Counts positions 0..len-1 of the buffers (each of length len + W - 1)
// where the condition holds.
Index count_in_buffers(const std::vector<Word>& bufs, Index len, Condition c) {
  if (len == 0) return 0;
  const std::size_t n = bufs.size();
  const Index w = c.window();
  const Index total = len + w - 1;
  std::vector<Index> acc(len, c.relation == Relation::all_close ? kUnbounded : 0);
  std::vector<Index> run(total + 1, 0);
  auto fold = [&](const Word& a, const Word& b) {
    run[total] = 0;
    for (Index t = total; t-- > 0;) run[t] = a[t] == b[t] ? std::min<Index>(run[t + 1] + 1, w) : 0;
    for (Index t = 0; t < len; ++t)
      acc[t] = c.relation == Relation::all_close ? std::min(acc[t], run[t]) : std::max(acc[t], run[t]);
  };
  if (c.relation == Relation::all_close) {
    for (std::size_t i = 1; i < n; ++i) fold(bufs[0], bufs[i]);
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) fold(bufs[i], bufs[j]);
  }
  Index count = 0;
  for (Index t = 0; t < len; ++t)
    count += c.relation == Relation::all_close ? acc[t] >= c.depth : acc[t] <= c.depth;
  return count;
}

struct Cursor {
  const Point* point = nullptr;
  std::size_t block = 0;
  Index start = 0;
  Index end = kUnbounded;
  const EpPoint* source = nullptr;
  PlanBlock current{EpPoint::constant(Alphabet(1), 0), 0, 1};
  Index offset = 0;

  void load() {
    const auto& s = std::get<ScheduledPoint>(*point);
    current = s.block(block);
    start = s.block_start(block);
    end = s.block_end(block);
    source = &current.source;
    offset = current.offset;
  }

  void init(const Point& p, Index t) {
    point = &p;
    if (const auto* e = std::get_if<EpPoint>(&p)) {
      source = e;
      start = 0;
      end = kUnbounded;
      offset = 0;
      return;
    }
    block = std::get<ScheduledPoint>(p).block_of(t);
    load();
  }

  void advance() {
    ++block;
    load();
  }

  // Symbols of this block's source continued past the block end.
  Word local_window(Index from, Index n) const {
    Word out(n);
    const Index base = offset + (from - start);
    for (Index j = 0; j < n; ++j) out[j] = source->symbol_at(base + j);
    return out;
  }

  // First time from which the local sequence is periodic.
  Index periodic_from() const {
    const Index u = source->preperiod().size();
    return start + (u > offset ? u - offset : 0);
  }
};

}  // namespace

Condition Condition::separated_above(double delta) {
  const auto a = separation_depth(delta);
  if (!a) throw PreconditionViolation("no distance exceeds delta >= 1");
  return {Relation::all_separated, *a};
}

bool holds_at(std::span<const Point> points, Index t, Condition c) {
  check_points(points);
  if (trivially_true(c)) return true;
  std::vector<Word> bufs;
  for (const auto& p : points) bufs.push_back(window_of(p, t, c.window()));
  return count_in_buffers(bufs, 1, c) == 1;
}

Index count_exact(std::span<const Point> points, Index lo, Index hi, Condition c) {
  check_points(points);
  if (hi <= lo) return 0;
  if (trivially_true(c)) return hi - lo;
  const Index w = c.window();
  std::vector<Cursor> cur(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) cur[i].init(points[i], lo);
  Index count = 0;
  Index t = lo;
  while (t < hi) {
    Index e = kUnbounded, t0 = t, period = 1;
    for (const auto& c0 : cur) {
      e = std::min(e, c0.end);
      t0 = std::max(t0, c0.periodic_from());
      period = lcm_checked(period, c0.source->cycle().size());
    }
    const Index stop = std::min(e, hi);
    // Positions with t + w <= e read only this segment's sources.
    Index inner_end = e == kUnbounded ? stop : (e >= w - 1 ? std::min(stop, e - w + 1) : t);
    inner_end = std::max(inner_end, t);

    auto local_count = [&](Index from, Index to) -> Index {
      if (to <= from) return 0;
      std::vector<Word> bufs;
      for (const auto& c0 : cur) bufs.push_back(c0.local_window(from, to - from + w - 1));
      return count_in_buffers(bufs, to - from, c);
    };

    const Index a_end = std::min(t0, inner_end);
    count += local_count(t, a_end);
    const Index b_start = std::max(t0, t);
    if (b_start < inner_end) {
      const Index len = inner_end - b_start;
      if (len <= 2 * period || period > (Index{1} << 20)) {
        count += local_count(b_start, inner_end);
      } else {
        const Index full = local_count(b_start, b_start + period);
        count += (len / period) * full + local_count(b_start, b_start + len % period);
      }
    }
    const Index c_start = std::max(inner_end, t);
    if (c_start < stop) {
      std::vector<Word> bufs;
      for (const auto& p : points) bufs.push_back(window_of(p, c_start, stop - c_start + w - 1));
      count += count_in_buffers(bufs, stop - c_start, c);
    }
    if (stop == hi) break;
    t = e;
    for (auto& c0 : cur)
      if (c0.end == e) c0.advance();
  }
  return count;
}

std::vector<Index> count_exact_at(std::span<const Point> points, std::span<const Index> checkpoints,
                                  Condition c) {
  std::vector<Index> out;
  Index prev = 0, acc = 0;
  for (Index n : checkpoints) {
    if (n < prev) throw PreconditionViolation("checkpoints must increase");
    acc += count_exact(points, prev, n, c);
    out.push_back(acc);
    prev = n;
  }
  return out;
}

std::vector<Index> count_horizon_at(std::span<const Point> points,
                                    std::span<const Index> checkpoints, Condition c,
                                    const kernels::Table& table) {
  check_points(points);
  std::vector<Index> out;
  if (checkpoints.empty()) return out;
  for (std::size_t i = 1; i < checkpoints.size(); ++i)
    if (checkpoints[i] < checkpoints[i - 1]) throw PreconditionViolation("checkpoints must increase");
  if (trivially_true(c)) return {checkpoints.begin(), checkpoints.end()};
  const Index w = c.window();
  if (w > (Index{1} << 31)) throw PreconditionViolation("condition window too deep");
  const Index need = checkpoints.back() + w - 1;
  if (need > max_horizon())
    throw HorizonExceeded("counting to " + std::to_string(checkpoints.back()) + " needs " + std::to_string(need) +
                          " symbols, above CHAOSKIT_MAX_HORIZON=" + std::to_string(max_horizon()));
  std::vector<Word> prefixes;
  for (const auto& p : points) {
    if (const auto* s = std::get_if<ScheduledPoint>(&p))
      prefixes.push_back(s->realize(need));
    else
      prefixes.push_back(prefix_of(p, need));
  }
  const std::uint32_t cap = static_cast<std::uint32_t>(w);
  constexpr Index chunk = Index{1} << 16;
  std::vector<std::uint32_t> acc, runs;
  Index total = 0, pos = 0;
  for (Index n : checkpoints) {
    while (pos < n) {
      const Index len = std::min(chunk, n - pos);
      const Index span_len = len + w - 1;
      acc.assign(len, c.relation == Relation::all_close ? cap : 0);
      runs.resize(span_len);
      auto fold = [&](const Word& a, const Word& b) {
        kernels::agreement_runs(std::span<const Symbol>(a.data() + pos, span_len),
                                std::span<const Symbol>(b.data() + pos, span_len), runs, cap, table);
        if (c.relation == Relation::all_close)
          table.min_into(acc.data(), runs.data(), len);
        else
          table.max_into(acc.data(), runs.data(), len);
      };
      if (c.relation == Relation::all_close) {
        for (std::size_t i = 1; i < prefixes.size(); ++i) fold(prefixes[0], prefixes[i]);
        total += table.count_at_least(acc.data(), len, static_cast<std::uint32_t>(c.depth));
      } else {
        for (std::size_t i = 0; i < prefixes.size(); ++i)
          for (std::size_t j = i + 1; j < prefixes.size(); ++j) fold(prefixes[i], prefixes[j]);
        total += table.count_at_most(acc.data(), len, static_cast<std::uint32_t>(c.depth));
      }
      pos += len;
    }
    out.push_back(total);
  }
  return out;
}

}  // namespace chaoskit
