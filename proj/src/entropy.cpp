#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include <Eigen/Dense>

#include "chaoskit/errors.hpp"
#include "chaoskit/sft.hpp"

namespace chaoskit {

namespace {

constexpr double kTolerance = 1e-12;
constexpr std::size_t kMaxIterations = 1000000;

struct Radius {
  double value = 0;
  std::size_t iterations = 0;
  bool converged = true;
};

// Perron root of an irreducible block via power iteration on B + I, which is
// primitive; Collatz-Wielandt quotients bracket the root from both sides.
Radius perron_root(const std::vector<std::vector<std::size_t>>& succ) {
  const std::size_t n = succ.size();
  std::vector<double> v(n, 1.0), w(n);
  Radius r;
  for (std::size_t it = 1; it <= kMaxIterations; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double acc = v[i];
      for (std::size_t j : succ[i]) acc += v[j];
      w[i] = acc;
    }
    double lo = std::numeric_limits<double>::infinity(), hi = 0, top = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(v[i] > 0)) throw PreconditionViolation("Perron vector lost positivity");
      const double q = w[i] / v[i];
      lo = std::min(lo, q);
      hi = std::max(hi, q);
      top = std::max(top, w[i]);
    }
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / top;
    r.iterations = it;
    r.value = 0.5 * (lo + hi) - 1.0;
    if (hi - lo <= kTolerance * hi) return r;
  }
  r.converged = false;
  return r;
}

}  // namespace

std::vector<long long> characteristic_polynomial(const Sft& s) {
  // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k.
  const std::size_t n = s.size();
  using Big = __int128;
  const Big bound = std::numeric_limits<long long>::max();
  std::vector<Big> a(n * n), m(n * n, 0), am(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = s.allowed(i, j) ? 1 : 0;
  std::vector<long long> c(n + 1, 0);
  c[n] = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    // m <- A m + c_{n-k+1} I
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Big acc = 0;
        for (std::size_t l = 0; l < n; ++l) acc += a[i * n + l] * m[l * n + j];
        am[i * n + j] = acc;
      }
    for (std::size_t i = 0; i < n; ++i) am[i * n + i] += c[n - k + 1];
    m = am;
    Big trace = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) trace += a[i * n + l] * m[l * n + i];
    const Big ck = -trace / static_cast<Big>(k);
    for (Big x : m)
      if (x > bound || x < -bound) throw PreconditionViolation("characteristic polynomial overflows");
    if (ck > bound || ck < -bound) throw PreconditionViolation("characteristic polynomial overflows");
    c[n - k] = static_cast<long long>(ck);
  }
  return c;
}

EntropyResult entropy(const Sft& s) {
  const auto& g = s.analysis();
  EntropyResult out;
  double radius = 0;
  for (std::size_t c = 0; c < g.component_count; ++c) {
    std::vector<std::size_t> members, local(s.size(), static_cast<std::size_t>(-1));
    for (std::size_t v = 0; v < s.size(); ++v)
      if (g.component[v] == c) {
        local[v] = members.size();
        members.push_back(v);
      }
    std::vector<std::vector<std::size_t>> succ(members.size());
    bool has_edge = false;
    for (std::size_t i = 0; i < members.size(); ++i)
      for (Symbol w : s.successors(members[i]))
        if (g.component[w] == c) {
          succ[i].push_back(local[w]);
          has_edge = true;
        }
    if (!has_edge) continue;
    const Radius r = perron_root(succ);
    out.iterations += r.iterations;
    out.converged = out.converged && r.converged;
    radius = std::max(radius, r.value);
  }
  out.spectral_radius = radius;
  out.value = radius > 0 ? std::log(radius) : 0.0;

  if (s.size() <= 4) {
    const auto c = characteristic_polynomial(s);
    const std::size_t n = s.size();
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (std::size_t i = 0; i < n; ++i) companion(i, n - 1) = -static_cast<double>(c[i]);
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    double best = 0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
      best = std::max(best, std::abs(solver.eigenvalues()[i]));
    out.charpoly_radius = best;
  }
  return out;
}

}  // namespace chaoskit
