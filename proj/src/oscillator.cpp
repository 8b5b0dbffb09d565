#include "qho/oscillator.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qho/hermite.hpp"

namespace qho {

namespace {

const double kInvSqrtPi = 1.0 / std::sqrt(std::numbers::pi);

// h_k(t) and h_k'(t) for the unit-norm Hermite function.
std::pair<double, double> hermite_function_and_slope(int k, double t) {
  const double gauss = std::exp(-0.5 * t * t) * std::pow(std::numbers::pi, -0.25);
  const auto [q, q_prev] = normalized_hermite_pair(k, t);
  const double dq = k > 0 ? std::sqrt(2.0 * k) * q_prev : 0.0;
  return {q * gauss, (dq - t * q) * gauss};
}

}  // namespace

double ProductEigenfunction::value(double x, double y) const {
  return hermite_function_and_slope(m, x).first * hermite_function_and_slope(n, y).first;
}

Superposition::Superposition(int n, Angle theta) : n_(n) {
  if (n < 1 || n % 2 == 0)
    throw std::invalid_argument(fmt::format(
        "superposition degree must be odd (the two-domain theorems cover odd n only), got {}", n));
  auto [reduced, flip] = theta.reduced_mod_pi();
  theta_ = reduced;
  orientation_ = flip;
  cos_ = flip * theta_.cos();
  sin_ = flip * theta_.sin();
}

double Superposition::value(double x, double y) const {
  const double hx = hermite_function_and_slope(n_, x).first;
  const double hy = hermite_function_and_slope(n_, y).first;
  const double gx = hermite_function_and_slope(0, x).first;
  const double gy = hermite_function_and_slope(0, y).first;
  return cos_ * hx * gy + sin_ * gx * hy;
}

std::array<double, 2> Superposition::gradient(double x, double y) const {
  const auto [hx, dhx] = hermite_function_and_slope(n_, x);
  const auto [hy, dhy] = hermite_function_and_slope(n_, y);
  const auto [gx, dgx] = hermite_function_and_slope(0, x);
  const auto [gy, dgy] = hermite_function_and_slope(0, y);
  return {cos_ * dhx * gy + sin_ * dgx * hy, cos_ * hx * dgy + sin_ * gx * dhy};
}

double Superposition::reduced(double x, double y) const {
  return cos_ * normalized_hermite(n_, x) + sin_ * normalized_hermite(n_, y);
}

std::array<double, 2> Superposition::reduced_gradient(double x, double y) const {
  const double c = std::sqrt(2.0 * n_);
  return {cos_ * c * normalized_hermite(n_ - 1, x), sin_ * c * normalized_hermite(n_ - 1, y)};
}

std::array<double, 2> Superposition::reduced_hessian_diagonal(double x, double y) const {
  // q_n'' = sqrt(2n) sqrt(2(n-1)) q_{n-2}
  const double c = std::sqrt(2.0 * n_) * std::sqrt(2.0 * (n_ - 1));
  return {cos_ * c * normalized_hermite(n_ - 2, x), sin_ * c * normalized_hermite(n_ - 2, y)};
}

double eval_superposition(const Superposition& s, double x, double y) { return s.value(x, y); }

std::array<double, 2> grad_superposition(const Superposition& s, double x, double y) {
  return s.gradient(x, y);
}

std::array<double, 3> symmetry_check(const Superposition& s, double x, double y) {
  const int n = s.degree();
  // Superposition::value equals Phi at the angle it was built from, so the
  // identities are checked on the reduced angle directly.
  const Superposition base(n, s.theta());
  const Superposition sup(n, s.theta().supplement());
  const Superposition comp(n, s.theta().complement());
  auto rel = [](double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale < 1e-300 ? std::abs(a - b) : std::abs(a - b) / scale;
  };
  return {
      rel(base.value(-x, y), sup.value(x, y)),
      rel(base.value(x, -y), -sup.value(x, y)),
      rel(base.value(y, x), comp.value(x, y)),
  };
}

EigenspaceInfo eigenspace_info(int ell) {
  if (ell < 0) throw std::invalid_argument("eigenspace index must be non-negative");
  return {ell, ell + 1, 2L * (ell + 1), ell % 2 == 0 ? Parity::Even : Parity::Odd};
}

}  // namespace qho
