#include "chaoskit/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "chaoskit/errors.hpp"

namespace chaoskit {

Alphabet::Alphabet(std::size_t k) : size(k) {
  if (k == 0) throw PreconditionViolation("alphabet must have at least one symbol");
}

void check_word(const Word& w, Alphabet a) {
  for (Symbol s : w)
    if (!a.contains(s))
      throw AlphabetMismatch("symbol " + std::to_string(s) + " outside alphabet of size " +
                             std::to_string(a.size));
}

Index closeness_depth(double t) {
  if (!(t > 0)) throw PreconditionViolation("threshold must be positive");
  Index k = 0;
  while (!(std::ldexp(1.0, -static_cast<int>(k)) < t)) ++k;
  return k;
}

std::optional<Index> separation_depth(double delta) {
  if (delta >= 1.0) return std::nullopt;
  if (delta <= 0.0) return std::numeric_limits<Index>::max();
  Index a = 0;
  while (std::ldexp(1.0, -static_cast<int>(a + 1)) > delta) ++a;
  return a;
}

double Distance::value() const noexcept {
  if (zero_) return 0.0;
  if (agreement_ > 2000) return 0.0;
  return std::ldexp(1.0, -static_cast<int>(agreement_));
}

bool Distance::less_than(double t) const {
  if (zero_) return t > 0;
  return agreement_ >= closeness_depth(t);
}

bool Distance::greater_than(double t) const {
  if (zero_) return t < 0;
  const auto a = separation_depth(t);
  return a && agreement_ <= *a;
}

std::strong_ordering operator<=>(const Distance& a, const Distance& b) noexcept {
  if (a.zero_ && b.zero_) return std::strong_ordering::equal;
  if (a.zero_) return std::strong_ordering::less;
  if (b.zero_) return std::strong_ordering::greater;
  return b.agreement_ <=> a.agreement_;
}

std::string Distance::to_string() const {
  if (zero_) return "0";
  if (agreement_ == 0) return "1";
  return "2^-" + std::to_string(agreement_);
}

std::pair<Word, Word> canonical_form(Word preperiod, Word cycle) {
  if (cycle.empty()) throw PreconditionViolation("cycle of an eventually periodic point is empty");
  const std::size_t n = cycle.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = d; i < n && periodic; ++i) periodic = cycle[i] == cycle[i - d];
    if (periodic) {
      cycle.resize(d);
      break;
    }
  }
  while (!preperiod.empty() && preperiod.back() == cycle.back()) {
    preperiod.pop_back();
    std::rotate(cycle.begin(), cycle.end() - 1, cycle.end());
  }
  return {std::move(preperiod), std::move(cycle)};
}

EpPoint::EpPoint(Alphabet alphabet, Word preperiod, Word cycle) : alphabet_(alphabet) {
  check_word(preperiod, alphabet);
  check_word(cycle, alphabet);
  auto [u, w] = canonical_form(std::move(preperiod), std::move(cycle));
  preperiod_ = std::move(u);
  cycle_ = std::move(w);
}

EpPoint EpPoint::constant(Alphabet alphabet, Symbol s) { return EpPoint(alphabet, {}, {s}); }

EpPoint EpPoint::periodic(Alphabet alphabet, Word cycle) {
  return EpPoint(alphabet, {}, std::move(cycle));
}

Symbol EpPoint::symbol_at(Index i) const noexcept {
  if (i < preperiod_.size()) return preperiod_[i];
  return cycle_[(i - preperiod_.size()) % cycle_.size()];
}

Word EpPoint::prefix(std::size_t n) const {
  Word out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = symbol_at(i);
  return out;
}

EpPoint EpPoint::shifted(Index k) const {
  if (k <= preperiod_.size())
    return EpPoint(alphabet_, Word(preperiod_.begin() + static_cast<std::ptrdiff_t>(k),
                                   preperiod_.end()),
                   cycle_);
  const Index r = (k - preperiod_.size()) % cycle_.size();
  Word w = cycle_;
  std::rotate(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(r), w.end());
  return EpPoint(alphabet_, {}, std::move(w));
}

EpPoint shift(const EpPoint& p, Index k) { return p.shifted(k); }

Index lcm_checked(Index a, Index b) {
  const Index g = std::gcd(a, b);
  const Index q = a / g;
  if (q != 0 && b > std::numeric_limits<Index>::max() / q)
    throw Error("joint period overflows 64 bits");
  return q * b;
}

Distance dist(const EpPoint& x, const EpPoint& y) {
  if (!(x.alphabet() == y.alphabet()))
    throw AlphabetMismatch("points over different alphabets");
  const Index limit = std::max(x.preperiod().size(), y.preperiod().size()) +
                      lcm_checked(x.cycle().size(), y.cycle().size());
  for (Index i = 0; i < limit; ++i)
    if (x.symbol_at(i) != y.symbol_at(i)) return Distance::from_agreement(i);
  return Distance::zero();
}

Alphabet alphabet_of(const Point& p) {
  return std::visit([](const auto& q) { return q.alphabet(); }, p);
}

Symbol symbol_at(const Point& p, Index i) {
  return std::visit([i](const auto& q) { return q.symbol_at(i); }, p);
}

Word window_of(const Point& p, Index from, Index n) {
  if (const auto* e = std::get_if<EpPoint>(&p)) {
    Word out(n);
    for (Index i = 0; i < n; ++i) out[i] = e->symbol_at(from + i);
    return out;
  }
  Word out(n);
  std::get<ScheduledPoint>(p).read(from, out);
  return out;
}

Word prefix_of(const Point& p, Index n) { return window_of(p, 0, n); }

namespace {

// Index of the first disagreement of sigma^k x and sigma^k y within depth
// symbols, or depth if none.
Index first_disagreement(const Point& x, const Point& y, Index k, Index depth) {
  constexpr Index chunk = 4096;
  const auto& t = kernels::dispatch();
  for (Index done = 0; done < depth;) {
    const Index n = std::min(chunk, depth - done);
    const Word a = window_of(x, k + done, n);
    const Word b = window_of(y, k + done, n);
    const std::size_t m = t.first_mismatch(a.data(), b.data(), n);
    if (m < n) return done + m;
    done += n;
  }
  return depth;
}

}  // namespace

std::optional<Distance> dist(const Point& x, const Point& y, Index max_depth) {
  if (!(alphabet_of(x) == alphabet_of(y)))
    throw AlphabetMismatch("points over different alphabets");
  const auto* ex = std::get_if<EpPoint>(&x);
  const auto* ey = std::get_if<EpPoint>(&y);
  if (ex && ey) return dist(*ex, *ey);
  const Index a = first_disagreement(x, y, 0, max_depth);
  if (a < max_depth) return Distance::from_agreement(a);
  return std::nullopt;
}

bool agree_at_least(const Point& x, const Point& y, Index k, Index depth) {
  const auto* ex = std::get_if<EpPoint>(&x);
  const auto* ey = std::get_if<EpPoint>(&y);
  if (ex && ey) {
    const Distance d = dist(ex->shifted(k), ey->shifted(k));
    return d.is_zero() || d.agreement() >= depth;
  }
  return first_disagreement(x, y, k, depth) >= depth;
}

bool close_at(const Point& x, const Point& y, Index k, double t) {
  return agree_at_least(x, y, k, closeness_depth(t));
}

Distance tuple_diameter(std::span<const EpPoint> points, Index k) {
  Distance best = Distance::zero();
  std::vector<EpPoint> shifted;
  shifted.reserve(points.size());
  for (const auto& p : points) shifted.push_back(p.shifted(k));
  for (std::size_t i = 0; i < shifted.size(); ++i)
    for (std::size_t j = i + 1; j < shifted.size(); ++j)
      best = std::max(best, dist(shifted[i], shifted[j]));
  return best;
}

Distance TailStats::diameter_at(std::size_t t) const {
  Distance d = Distance::zero();
  for (const auto& v : distances[t]) d = std::max(d, v);
  return d;
}

Distance TailStats::min_pair_at(std::size_t t) const {
  if (pairs.empty()) return Distance::zero();
  Distance d = distances[t][0];
  for (const auto& v : distances[t]) d = std::min(d, v);
  return d;
}

Distance TailStats::max_distance() const {
  Distance d = Distance::zero();
  for (std::size_t t = 0; t < distances.size(); ++t) d = std::max(d, diameter_at(t));
  return d;
}

Distance TailStats::min_distance() const {
  if (pairs.empty()) return Distance::zero();
  Distance d = min_pair_at(0);
  for (std::size_t t = 1; t < distances.size(); ++t) d = std::min(d, min_pair_at(t));
  return d;
}

Distance TailStats::pair_max(std::size_t p) const {
  Distance d = Distance::zero();
  for (const auto& row : distances) d = std::max(d, row[p]);
  return d;
}

Distance TailStats::pair_min(std::size_t p) const {
  Distance d = distances.front()[p];
  for (const auto& row : distances) d = std::min(d, row[p]);
  return d;
}

Index TailStats::count_all_closer(double t) const {
  Index c = 0;
  for (const auto& row : distances)
    c += std::all_of(row.begin(), row.end(), [t](const Distance& d) { return d.less_than(t); });
  return c;
}

Index TailStats::count_all_farther(double delta) const {
  Index c = 0;
  for (const auto& row : distances)
    c += std::all_of(row.begin(), row.end(),
                     [delta](const Distance& d) { return d.greater_than(delta); });
  return c;
}

TailStats joint_tail_stats(std::span<const EpPoint> points) {
  TailStats s;
  if (points.empty()) return s;
  for (const auto& p : points) {
    if (!(p.alphabet() == points.front().alphabet()))
      throw AlphabetMismatch("tuple mixes alphabets");
    s.tail_start = std::max<Index>(s.tail_start, p.preperiod().size());
    s.period = lcm_checked(s.period, p.cycle().size());
  }
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) s.pairs.emplace_back(i, j);

  const Index L = s.period;
  s.distances.assign(L, std::vector<Distance>(s.pairs.size(), Distance::zero()));
  std::vector<std::uint8_t> eq(L);
  std::vector<Index> run(L);
  for (std::size_t p = 0; p < s.pairs.size(); ++p) {
    const auto& x = points[s.pairs[p].first];
    const auto& y = points[s.pairs[p].second];
    std::optional<Index> mismatch;
    for (Index t = 0; t < L; ++t) {
      eq[t] = x.symbol_at(s.tail_start + t) == y.symbol_at(s.tail_start + t);
      if (!eq[t]) mismatch = t;
    }
    if (!mismatch) continue;  // equal tails: distance 0 throughout
    // Cyclic run lengths, walking backwards from a known mismatch.
    const Index j = *mismatch;
    run[j] = 0;
    for (Index step = 1; step < L; ++step) {
      const Index t = (j + L - step) % L;
      run[t] = eq[t] ? run[(t + 1) % L] + 1 : 0;
    }
    for (Index t = 0; t < L; ++t) s.distances[t][p] = Distance::from_agreement(run[t]);
  }
  return s;
}

namespace {

Symbol parse_symbol(std::string_view text, std::size_t& pos) {
  const char c = text[pos];
  if (c >= '0' && c <= '9') {
    ++pos;
    return static_cast<Symbol>(c - '0');
  }
  if (c >= 'a' && c <= 'z') {
    ++pos;
    return static_cast<Symbol>(10 + (c - 'a'));
  }
  if (c == '[') {
    const auto close = text.find(']', pos);
    if (close == std::string_view::npos) throw ParseError("unterminated [n] symbol");
    const std::string digits(text.substr(pos + 1, close - pos - 1));
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("bad [n] symbol: " + digits);
    pos = close + 1;
    return static_cast<Symbol>(std::stoul(digits));
  }
  throw ParseError(std::string("unexpected character '") + c + "' in point literal");
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

Word parse_word(std::string_view text, Alphabet alphabet) {
  text = trim(text);
  Word w;
  for (std::size_t pos = 0; pos < text.size();) w.push_back(parse_symbol(text, pos));
  check_word(w, alphabet);
  return w;
}

EpPoint parse_point(std::string_view literal, Alphabet alphabet) {
  literal = trim(literal);
  const auto open = literal.find('(');
  if (open == std::string_view::npos || literal.empty() || literal.back() != ')')
    throw ParseError("point literal must look like u(w): '" + std::string(literal) + "'");
  const Word u = parse_word(literal.substr(0, open), alphabet);
  const Word w = parse_word(literal.substr(open + 1, literal.size() - open - 2), alphabet);
  if (w.empty()) throw ParseError("empty cycle in point literal");
  return EpPoint(alphabet, u, w);
}

std::string format_word(const Word& w) {
  std::string out;
  for (Symbol s : w) {
    if (s < 10)
      out.push_back(static_cast<char>('0' + s));
    else if (s < 36)
      out.push_back(static_cast<char>('a' + (s - 10)));
    else
      out += "[" + std::to_string(s) + "]";
  }
  return out;
}

std::string format_point(const EpPoint& p) {
  return format_word(p.preperiod()) + "(" + format_word(p.cycle()) + ")";
}

nlohmann::json to_json(const EpPoint& p) {
  return {{"literal", format_point(p)},
          {"preperiod", p.preperiod().size()},
          {"period", p.cycle().size()}};
}

nlohmann::json to_json(const ScheduledPoint& p) { return {{"plan", p.rule().describe()}}; }

nlohmann::json to_json(const Point& p) {
  return std::visit([](const auto& q) { return to_json(q); }, p);
}

}  // namespace chaoskit
