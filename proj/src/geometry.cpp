#include "qho/geometry.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "qho/hermite.hpp"
#include "qho/roots.hpp"

namespace qho {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_odd(int n) {
  if (n < 3 || n % 2 == 0)
    throw std::invalid_argument(fmt::format("barrier lemmas need odd n >= 3, got {}", n));
}

void require_first_octant(double theta) {
  if (!(theta > 0.0 && theta <= 0.25 * kPi + 1e-15))
    throw std::invalid_argument(fmt::format("theta={} outside (0, pi/4]", theta));
}

double q(int n, double t) { return normalized_hermite(n, t); }
double dq(int n, double t) { return std::sqrt(2.0 * n) * normalized_hermite(n - 1, t); }

// q_n(t), with rounding noise at a zero of H_n flushed to 0.
double q_line(int n, double t) {
  const double v = q(n, t);
  return std::abs(v) <= 1e-13 * std::abs(dq(n, t)) * std::max(1.0, std::abs(t)) ? 0.0 : v;
}

// Root of q_n(t) = target on a ray where q_n is increasing, starting from
// `edge` and walking in direction `dir` (+1 or -1) until bracketed.
double solve_on_monotone_ray(int n, double target, double edge, int dir) {
  auto f = [&](double t) { return q(n, t) - target; };
  auto df = [&](double t) { return dq(n, t); };
  double step = 1.0;
  double far = edge + dir * step;
  int guard = 0;
  while ((dir > 0 ? f(far) < 0.0 : f(far) > 0.0)) {
    step *= 2.0;
    far = edge + dir * step;
    if (++guard > 200) throw std::runtime_error("barrier: bracket growth failed");
  }
  const double lo = dir > 0 ? edge : far;
  const double hi = dir > 0 ? far : edge;
  return roots::bracketed_newton(f, df, lo, hi);
}

// Cut a ray of y -> a + b q_n(y) at the point where |b q_n| > 2|a| beyond the
// last zero of H_n, after which no zero can exist.
double cut_ray(int n, double a, double b, double last_zero, int dir) {
  double step = 0.5;
  double t = dir * (last_zero + step);
  while (std::abs(b * q(n, t)) <= 2.0 * std::abs(a)) {
    step *= 2.0;
    t = dir * (last_zero + step);
    if (step > 1e6) break;
  }
  return t;
}

int count_zeros_1d(int n, double a, double b, double lo, double hi) {
  // zeros of y -> a + b q_n(y)
  const double last = hermite_zeros(n).zeros.back() + 1.0;
  if (std::isinf(hi)) hi = cut_ray(n, a, b, std::max(last, lo), +1);
  if (std::isinf(lo)) lo = cut_ray(n, a, b, std::max(last, -hi), -1);
  auto f = [&](double y) {
    const double qy = q(n, y);
    const double v = a + b * qy;
    const double noise = std::abs(a) + std::abs(b) * (std::abs(qy) + std::abs(dq(n, y)) * std::max(1.0, std::abs(y)));
    return std::abs(v) <= 1e-13 * noise ? 0.0 : v;
  };
  return static_cast<int>(roots::sign_change_roots(f, lo, hi, 4096).size());
}

}  // namespace

double barrier_left(int n) {
  require_odd(n);
  const double peak = q(n, hermite_zeros(n - 1).zeros.front());
  const double first_zero = hermite_zeros(n).zeros.front();
  return solve_on_monotone_ray(n, -peak, first_zero, -1);
}

double barrier_top(int n, double theta) {
  require_odd(n);
  require_first_octant(theta);
  const double peak = q(n, hermite_zeros(n - 1).zeros.front());
  const double last_zero = hermite_zeros(n).zeros.back();
  return solve_on_monotone_ray(n, peak / std::tan(theta), last_zero, +1);
}

BarrierData barrier_data(int n, double theta, double margin) {
  BarrierData b;
  b.n = n;
  b.theta = theta;
  b.t_left = barrier_left(n);
  b.t_top = barrier_top(n, theta);
  b.margin = margin;
  return b;
}

double asymptote_slope(int n, double theta) {
  require_first_octant(theta);
  return -std::pow(1.0 / std::tan(theta), 1.0 / n);
}

double asymptote_probe(int n, double theta, double x) {
  require_odd(n);
  require_first_octant(theta);
  const double target = -q(n, x) / std::tan(theta);
  const double last_zero = hermite_zeros(n).zeros.back();
  if (target <= 0.0) throw std::invalid_argument("asymptote_probe: x must lie left of t_left");
  return solve_on_monotone_ray(n, target, last_zero, +1) / x;
}

ReducedAngle reduce_to_first_octant(double theta) {
  const double quarter = 0.25 * kPi;
  if (theta <= quarter) return {theta, false};
  if (theta <= 2.0 * quarter) return {0.5 * kPi - theta, true};
  if (theta <= 3.0 * quarter) return {theta - 0.5 * kPi, true};
  return {kPi - theta, false};
}

Box enclosing_box(int n, const Angle& theta, double margin) {
  const double th = theta.reduced_mod_pi().first.value();
  const ReducedAngle r = reduce_to_first_octant(th);
  if (r.theta < 1e-9) {
    const double extent = hermite_zeros(n).zeros.back() + 1.5;
    return Box::square(margin * extent);
  }
  const Box b = barrier_data(n, r.theta, margin).box();
  return r.transposed ? b.transposed() : b;
}

int count_zeros_vertical(int n, double theta, double x, double lo, double hi) {
  return count_zeros_1d(n, std::cos(theta) * q_line(n, x), std::sin(theta), lo, hi);
}

int count_zeros_horizontal(int n, double theta, double y, double lo, double hi) {
  return count_zeros_1d(n, std::sin(theta) * q_line(n, y), std::cos(theta), lo, hi);
}

BarrierVerdict barrier_crossing_counts(int n, double theta) {
  require_odd(n);
  require_first_octant(theta);
  const BarrierData b = barrier_data(n, theta, 1.0);
  const ZeroTable zn = hermite_zeros(n);
  const double first = zn.zeros.front();
  const double last = zn.zeros.back();

  BarrierVerdict v;
  auto check = [&](const std::string& what, double t, int count) {
    ++v.samples_checked;
    if (count != 1) {
      v.holds = false;
      v.failures.push_back({what, t, count});
    }
  };
  for (int k = 0; k < 5; ++k) {
    const double ta = first - k * (first - b.t_left + 1.0) / 4.0;
    check("t <= t_{n,1}: one zero of y -> Phi(t,y) in [t_{n,n}, inf)", ta,
          count_zeros_vertical(n, theta, ta, last, kInf));
    const double tb = b.t_left - 0.05 - 0.5 * k;
    check("t < t_left: one zero of y -> Phi(t,y) on R", tb,
          count_zeros_vertical(n, theta, tb, -kInf, kInf));
    const double tc = last + k * (b.t_top - last + 1.0) / 4.0;
    check("t >= t_{n,n}: one zero of x -> Phi(x,t) in (-inf, t_{n,1}]", tc,
          count_zeros_horizontal(n, theta, tc, -kInf, first));
    const double td = b.t_top + 0.05 + 0.5 * k;
    check("t > t_top: one zero of x -> Phi(x,t) on R", td,
          count_zeros_horizontal(n, theta, td, -kInf, kInf));
  }
  return v;
}

}  // namespace qho
