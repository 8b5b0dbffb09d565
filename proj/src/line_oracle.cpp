#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qho/nodal.hpp"
#include "qho/roots.hpp"

namespace qho {

namespace {

using Poly = std::vector<double>;  // coefficient of x^k at index k

// H_n / 2^n, a monic polynomial: p_k = x p_{k-1} - (k-1)/2 p_{k-2}.
Poly monic_hermite(int n) {
  Poly prev{1.0};
  if (n == 0) return prev;
  Poly cur{0.0, 1.0};
  for (int k = 2; k <= n; ++k) {
    Poly next(static_cast<std::size_t>(k) + 1, 0.0);
    for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += cur[i];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= 0.5 * (k - 1) * prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

double eval(const Poly& p, double x) {
  double acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double magnitude(const Poly& p, double x) {
  double acc = 0.0;
  const double ax = std::abs(x);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * ax + std::abs(*it);
  return acc;
}

Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(static_cast<double>(k) * p[k]);
  return d;
}

void trim(Poly& p) {
  double big = 0.0;
  for (double c : p) big = std::max(big, std::abs(c));
  while (p.size() > 1 && std::abs(p.back()) <= 1e-13 * big) p.pop_back();
}

// Real roots of p: between consecutive critical points p is monotone, so each
// such interval holds at most one simple root.
std::vector<double> real_roots(Poly p) {
  trim(p);
  const std::size_t d = p.size() - 1;
  if (d == 0) return {};
  if (d == 1) return {-p[0] / p[1]};
  double bound = 0.0;
  for (std::size_t k = 0; k < d; ++k) bound = std::max(bound, std::abs(p[k] / p[d]));
  bound += 1.0;

  std::vector<double> marks{-bound};
  for (double c : real_roots(derivative(p)))
    if (c > -bound && c < bound) marks.push_back(c);
  marks.push_back(bound);
  std::sort(marks.begin(), marks.end());

  std::vector<double> out;
  auto f = [&](double x) { return eval(p, x); };
  for (std::size_t k = 1; k < marks.size(); ++k) {
    const double a = marks[k - 1];
    const double b = marks[k];
    const double fa = f(a);
    const double fb = f(b);
    if (k > 1 && std::abs(fa) <= 1e-12 * magnitude(p, a)) {
      out.push_back(a);
      continue;
    }
    if ((fa < 0.0) != (fb < 0.0) && fb != 0.0 && std::abs(fb) > 1e-12 * magnitude(p, b))
      out.push_back(roots::bisect(f, a, b, 1e-15));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(), [](double a, double b) { return std::abs(a - b) <= 1e-9; }),
            out.end());
  return out;
}

}  // namespace

LineOracleResult line_intersection_oracle(int n, double theta, double alpha) {
  if (n < 1) throw std::invalid_argument("line_intersection_oracle: n must be positive");
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const Poly h = monic_hermite(n);
  Poly p(h.size(), 0.0);
  double big = 0.0;
  for (std::size_t k = 0; k < h.size(); ++k) {
    p[k] = h[k] * (c + s * std::pow(alpha, static_cast<double>(k)));
    big = std::max(big, std::abs(h[k]) * (std::abs(c) + std::abs(s * std::pow(alpha, static_cast<double>(k)))));
  }
  bool zero = true;
  for (double v : p) zero = zero && std::abs(v) <= 1e-14 * big;
  if (zero) {
    if (std::abs(theta - 0.75 * std::numbers::pi) < 1e-12 && alpha == 1.0)
      throw std::invalid_argument("line_intersection_oracle: theta = 3pi/4 with alpha = 1 vanishes on the diagonal");
    throw std::invalid_argument(fmt::format("line_intersection_oracle: Phi vanishes on y = {} x", alpha));
  }
  for (double& v : p)
    if (std::abs(v) <= 1e-14 * big) v = 0.0;
  LineOracleResult r;
  r.roots = real_roots(p);
  r.count = static_cast<int>(r.roots.size());
  return r;
}

}  // namespace qho
