#pragma once

#include <array>

#include "qho/angle.hpp"

namespace qho {

/// phi_{m,n}(x,y) = H_m(x) H_n(y) exp(-(x^2+y^2)/2), evaluated with unit
/// L2 normalization.
struct ProductEigenfunction {
  int m = 0;
  int n = 0;

  long eigenvalue() const { return 2L * (m + n + 1); }
  double value(double x, double y) const;
};

/// Phi^theta_n = cos(theta) phi_{n,0} + sin(theta) phi_{0,n} for odd n.
///
/// The angle is reduced into [0, pi) on construction; when the reduction
/// crosses an odd multiple of pi the orientation is -1 so that values still
/// match the unreduced angle.
///
/// Two evaluations are offered.  `value` is the unit-normalized eigenfunction
/// (with the Gaussian factor).  `reduced` divides out the positive factor
/// exp(-(x^2+y^2)/2)/sqrt(pi): cos*q_n(x) + sin*q_n(y) with q_n = H_n/sqrt(2^n n!).
/// Both have the same zero set and signs; `reduced` is what grids use since it
/// neither underflows nor overflows for |x|,|y| <= 40 at desk-scale n.
class Superposition {
 public:
  Superposition(int n, Angle theta);

  int degree() const { return n_; }
  const Angle& theta() const { return theta_; }
  int orientation() const { return orientation_; }
  double cos_coeff() const { return cos_; }
  double sin_coeff() const { return sin_; }

  double value(double x, double y) const;
  std::array<double, 2> gradient(double x, double y) const;

  double reduced(double x, double y) const;
  std::array<double, 2> reduced_gradient(double x, double y) const;
  /// The reduced Hessian is diagonal: (cos q_n''(x), sin q_n''(y)).
  std::array<double, 2> reduced_hessian_diagonal(double x, double y) const;

 private:
  int n_;
  Angle theta_;
  int orientation_ = 1;
  double cos_ = 1.0;
  double sin_ = 0.0;
};

double eval_superposition(const Superposition& s, double x, double y);
std::array<double, 2> grad_superposition(const Superposition& s, double x, double y);

/// Residuals of
///   Phi^t(-x,y) = Phi^{pi-t}(x,y),  Phi^t(x,-y) = -Phi^{pi-t}(x,y),
///   Phi^t(y,x) = Phi^{pi/2-t}(x,y),
/// each divided by the largest magnitude involved (or 1 when that is below 1e-300).
std::array<double, 3> symmetry_check(const Superposition& s, double x, double y);

enum class Parity { Even, Odd };

struct EigenspaceInfo {
  int ell = 0;
  int dimension = 1;
  long eigenvalue = 2;
  Parity parity = Parity::Even;
};

EigenspaceInfo eigenspace_info(int ell);

}  // namespace qho
