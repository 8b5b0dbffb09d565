#include "qho/critical.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qho/oscillator.hpp"

namespace qho {

namespace {

constexpr double kPi = std::numbers::pi;

void require_odd(int n, int min_n, const char* what) {
  if (n < min_n || n % 2 == 0)
    throw std::invalid_argument(
        fmt::format("{}: n must be odd and >= {} (theorems cover odd n), got {}", what, min_n, n));
}

// (a, b) = (H_n(u), H_n(v)) / max(|H_n(u)|, |H_n(v)|) from the log form.
std::pair<double, double> balanced_pair(int n, double u, double v) {
  const HermiteEval eu = eval_hermite(n, u);
  const HermiteEval ev = eval_hermite(n, v);
  assert(eu.sign != 0 || ev.sign != 0);
  const double m = std::max(eu.sign != 0 ? eu.log_abs : -INFINITY, ev.sign != 0 ? ev.log_abs : -INFINITY);
  const double a = eu.sign == 0 ? 0.0 : eu.sign * std::exp(eu.log_abs - m);
  const double b = ev.sign == 0 ? 0.0 : ev.sign * std::exp(ev.log_abs - m);
  return {a, b};
}

double solve_critical_angle(double a, double b) {
  // cos(t) a + sin(t) b = 0 with sin(t) > 0.
  double c = b;
  double s = -a;
  if (s < 0.0 || (s == 0.0 && c < 0.0)) {
    c = -c;
    s = -s;
  }
  return std::atan2(s, c);
}

}  // namespace

const CriticalAngleEntry& CriticalAngleTable::at(int i, int j) const {
  const int m = n - 1;
  return entries.at(static_cast<std::size_t>((i - 1) * m + (j - 1)));
}

std::optional<ThetaInterval> CriticalAngleTable::interval_containing(double theta) const {
  for (const auto& iv : regular_intervals)
    if (iv.contains(theta)) return iv;
  return std::nullopt;
}

std::pair<ThetaInterval, ThetaInterval> CriticalAngleTable::neighbours_of(double theta0) const {
  std::optional<ThetaInterval> below;
  std::optional<ThetaInterval> above;
  for (const auto& iv : regular_intervals) {
    if (std::abs(iv.hi - theta0) <= kCriticalValueDedup) below = iv;
    if (std::abs(iv.lo - theta0) <= kCriticalValueDedup) above = iv;
  }
  if (!below || !above)
    throw std::invalid_argument(fmt::format("{} is not an interior breakpoint", theta0));
  return {*below, *above};
}

double critical_residual(int n, double theta, double a, double b) {
  const auto [ha, hb] = balanced_pair(n, a, b);
  return std::abs(std::cos(theta) * ha + std::sin(theta) * hb);
}

CriticalAngleTable critical_angles(int n) {
  require_odd(n, 3, "critical_angles");
  CriticalAngleTable table;
  table.n = n;
  table.derivative_zeros = hermite_zeros(n - 1);
  const int m = n - 1;
  const auto& t = table.derivative_zeros.zeros;

  table.entries.resize(static_cast<std::size_t>(m * m));
#pragma omp parallel for collapse(2) schedule(static)
  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j <= m; ++j) {
      const auto [a, b] = balanced_pair(n, t[static_cast<std::size_t>(i - 1)], t[static_cast<std::size_t>(j - 1)]);
      const double theta = (i == j) ? 0.75 * kPi : solve_critical_angle(a, b);
      table.entries[static_cast<std::size_t>((i - 1) * m + (j - 1))] = {i, j, theta};
    }
  }

  std::vector<double> values;
  values.reserve(table.entries.size());
  for (const auto& e : table.entries) values.push_back(e.theta);
  std::sort(values.begin(), values.end());
  for (double v : values)
    if (table.distinct_values.empty() || v - table.distinct_values.back() > kCriticalValueDedup)
      table.distinct_values.push_back(v);
  table.theta_c = table.distinct_values.front();

  std::vector<double> breaks{0.0, 0.5 * kPi, kPi};
  breaks.insert(breaks.end(), table.distinct_values.begin(), table.distinct_values.end());
  std::sort(breaks.begin(), breaks.end());
  for (std::size_t k = 1; k < breaks.size(); ++k)
    if (breaks[k] - breaks[k - 1] > kCriticalValueDedup)
      table.regular_intervals.push_back({breaks[k - 1], breaks[k]});
  return table;
}

std::vector<CriticalZero> critical_zeros_at(const CriticalAngleTable& table, const Angle& theta,
                                            double tol) {
  std::vector<CriticalZero> out;
  const Superposition s(table.n, theta);
  const double th = s.theta().value();
  const auto& t = table.derivative_zeros.zeros;
  for (const auto& e : table.entries) {
    if (std::abs(e.theta - th) > tol) continue;
    CriticalZero z;
    z.i = e.i;
    z.j = e.j;
    z.location = {t[static_cast<std::size_t>(e.i - 1)], t[static_cast<std::size_t>(e.j - 1)]};
    const auto [hxx, hyy] = s.reduced_hessian_diagonal(z.location.x, z.location.y);
    z.hxx = hxx;
    z.hyy = hyy;
    z.sign_x = hxx > 0.0 ? HessianSign::Positive : HessianSign::Negative;
    z.sign_y = hyy > 0.0 ? HessianSign::Positive : HessianSign::Negative;
    out.push_back(z);
  }
  return out;
}

std::vector<CriticalZero> critical_zeros_at(int n, const Angle& theta, double tol) {
  return critical_zeros_at(critical_angles(n), theta, tol);
}

double desingularization_angle(double epsilon) { return kPi - std::atan(1.0 + epsilon); }

DesingularizationVerdict desingularization_signs(int n, int i, double epsilon) {
  require_odd(n, 3, "desingularization_signs");
  if (i < 1 || i > n - 1) throw std::invalid_argument(fmt::format("index i={} outside 1..{}", i, n - 1));
  if (!(epsilon >= 0.0 && epsilon <= 0.05))
    throw std::invalid_argument(fmt::format("epsilon={} outside [0, 0.05]", epsilon));

  DesingularizationVerdict v;
  v.n = n;
  v.i = i;
  v.epsilon = epsilon;
  v.sign_case = (i % 2 == 0) ? "i" : "ii";

  const ZeroTable zn = hermite_zeros(n);
  const ZeroTable zd = hermite_zeros(n - 1);
  const double peak = normalized_hermite(n, zd[static_cast<std::size_t>(i - 1)]);
  const double lo = zn[static_cast<std::size_t>(i - 1)];
  const double hi = zn[static_cast<std::size_t>(i)];
  const double parity = (i % 2 == 0) ? 1.0 : -1.0;
  const double slack = 1e-12 * std::abs(peak);

  constexpr int kPoints = 1000;
  for (int k = 1; k <= kPoints; ++k) {
    const double t = lo + (hi - lo) * static_cast<double>(k) / (kPoints + 1);
    const double h = normalized_hermite(n, t);
    const double vertical = parity * (h - (1.0 + epsilon) * peak);
    const double horizontal = parity * ((1.0 - epsilon) * h - peak);
    if (vertical < -slack || horizontal < -slack) {
      v.holds = false;
      v.counterexample_t = t;
      v.failed_inequality = vertical < -slack ? "line y = t_{n-1,i}, +eps" : "line x = t_{n-1,i}, -eps";
      break;
    }
  }
  return v;
}

VjVerdict vj_sign_check(const CriticalAngleTable& table, double theta) {
  VjVerdict out;
  out.n = table.n;
  out.theta = theta;
  const int m = table.n - 1;
  const auto& t = table.derivative_zeros.zeros;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  for (int j = 1; j <= m; ++j) {
    for (int i = 1; i <= m; ++i) {
      const auto [hj, hi] = balanced_pair(table.n, t[static_cast<std::size_t>(j - 1)], t[static_cast<std::size_t>(i - 1)]);
      const double v = c * hj + s * hi;
      const double expected_sign = (j % 2 == 1) ? 1.0 : -1.0;
      ++out.checked;
      if (!(expected_sign * v > 0.0)) {
        out.holds = false;
        out.violations.push_back({i, j, v});
      }
      const double tji = table.at(j, i).theta;
      const double via_angle = hj * std::sin(tji - theta) / std::sin(tji);
      const double scale = std::max({std::abs(v), std::abs(via_angle), 1e-300});
      out.identity_residual = std::max(out.identity_residual, std::abs(v - via_angle) / std::max(scale, std::abs(hj)));
    }
  }
  return out;
}

VjVerdict vj_sign_check(int n, double theta) { return vj_sign_check(critical_angles(n), theta); }

void write_critical_table_csv(std::ostream& out, const CriticalAngleTable& table) {
  out << fmt::format("# n={} theta_c={:.17g}\n", table.n, table.theta_c);
  out << "i,j,theta_ij\n";
  for (const auto& e : table.entries) out << fmt::format("{},{},{:.17g}\n", e.i, e.j, e.theta);
}

}  // namespace qho
