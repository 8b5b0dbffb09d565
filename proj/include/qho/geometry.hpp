#pragma once

#include <string>
#include <vector>

#include "qho/angle.hpp"
#include "qho/types.hpp"

namespace qho {

inline constexpr double kDefaultMargin = 1.25;

/// Barrier constants confining the nodal set of Phi^theta_n for theta in (0, pi/4].
///
/// Outside [t_left, -t_left] x [-t_top, t_top] the nodal set consists of two
/// arcs asymptotic to y = slope * x: vertical lines left of t_left and
/// horizontal lines above t_top each meet the nodal set exactly once.
struct BarrierData {
  int n = 0;
  double theta = 0.0;
  double t_left = 0.0;  // root of H_n(t) = -H_n(t_{n-1,1}) left of t_{n,1}
  double t_top = 0.0;   // root of tan(theta) H_n(t) = H_n(t_{n-1,1}) right of t_{n,n}
  double margin = kDefaultMargin;

  /// Exact barrier rectangle (margin 1).
  Box core_box() const { return {t_left, -t_left, -t_top, t_top}; }
  Box box() const { return core_box().scaled(margin); }
};

/// Throws std::invalid_argument unless n is odd and >= 3.
double barrier_left(int n);

/// Throws std::invalid_argument unless theta lies in (0, pi/4].
double barrier_top(int n, double theta);

BarrierData barrier_data(int n, double theta, double margin = kDefaultMargin);

/// -(cot theta)^{1/n}.
double asymptote_slope(int n, double theta);

/// y/x for the nodal point (x, y) on the vertical line through x < t_left:
/// y is the unique zero of y -> Phi(x, y).
double asymptote_probe(int n, double theta, double x);

/// Rectangle that contains the interesting part of the nodal set for any
/// theta in [0, pi).  Angles outside (0, pi/4] are mapped there through the
/// symmetries x -> -x (theta -> pi - theta) and (x,y) -> (y,x)
/// (theta -> pi/2 - theta); for the product cases theta in {0, pi/2} the
/// box is a square around the zeros of H_n.
Box enclosing_box(int n, const Angle& theta, double margin = kDefaultMargin);

/// The angle in (0, pi/4] equivalent to theta under the symmetries, and
/// whether the equivalence transposes x and y.  Returns theta' = 0 for the
/// product angles.
struct ReducedAngle {
  double theta = 0.0;
  bool transposed = false;
};
ReducedAngle reduce_to_first_octant(double theta);

struct BarrierFailure {
  std::string statement;
  double t = 0.0;
  int count = 0;
};

struct BarrierVerdict {
  bool holds = true;
  int samples_checked = 0;
  std::vector<BarrierFailure> failures;
};

/// Zero counts of the one-dimensional restrictions of Phi along lines that
/// the barrier lemmas constrain:
///   (a) t <= t_{n,1}: y -> Phi(t,y) has one zero in [t_{n,n}, inf);
///   (b) t <  t_left : y -> Phi(t,y) has one zero on R;
///   (c) t >= t_{n,n}: x -> Phi(x,t) has one zero in (-inf, t_{n,1}];
///   (d) t >  t_top  : x -> Phi(x,t) has one zero on R.
/// Five samples per statement; the half-lines are cut where the dominant
/// term provably excludes further zeros.
BarrierVerdict barrier_crossing_counts(int n, double theta);

/// Number of zeros of y -> Phi(x, y) on [lo, hi] (dense sampling plus
/// bisection).  hi may be +inf, lo may be -inf: the ray is cut where
/// |sin q_n(y)| exceeds |cos q_n(x)|.
int count_zeros_vertical(int n, double theta, double x, double lo, double hi);
int count_zeros_horizontal(int n, double theta, double y, double lo, double hi);

}  // namespace qho
