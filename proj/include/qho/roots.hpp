#pragma once

#include <cmath>
#include <limits>
#include <vector>

namespace qho::roots {

/// Plain bisection on [lo, hi] where f(lo) and f(hi) have opposite signs.
template <class F>
double bisect(F&& f, double lo, double hi, double xtol = 1e-15, int max_iter = 200) {
  double flo = f(lo);
  for (int it = 0; it < max_iter && hi - lo > xtol * std::max(1.0, std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Locations of sign changes of f on a uniform sample of [lo, hi], each
/// refined by bisection.  Exact zeros at sample points are reported once.
template <class F>
std::vector<double> sign_change_roots(F&& f, double lo, double hi, int samples = 4096) {
  std::vector<double> out;
  double x_prev = lo;
  double f_prev = f(lo);
  if (f_prev == 0.0) out.push_back(lo);
  for (int k = 1; k <= samples; ++k) {
    const double x = lo + (hi - lo) * static_cast<double>(k) / samples;
    const double fx = f(x);
    if (fx == 0.0) {
      out.push_back(x);
    } else if (f_prev != 0.0 && (fx < 0.0) != (f_prev < 0.0)) {
      out.push_back(bisect(f, x_prev, x));
    }
    x_prev = x;
    f_prev = fx;
  }
  return out;
}

/// Root of a function that is monotone on [lo, hi] with f(lo), f(hi) of
/// opposite signs: bisection to a narrow bracket, then Newton polish clamped
/// to the bracket.
template <class F, class DF>
double bracketed_newton(F&& f, DF&& df, double lo, double hi, double xtol = 1e-15) {
  double flo = f(lo);
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 300; ++it) {
    const double fx = f(x);
    if (fx == 0.0) return x;
    if ((fx < 0.0) == (flo < 0.0)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
    }
    const double d = df(x);
    double next = (d != 0.0) ? x - fx / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= xtol * std::max(1.0, std::abs(x))) return next;
    x = next;
  }
  return x;
}

}  // namespace qho::roots
