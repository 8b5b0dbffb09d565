#pragma once

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qho {

/// Value of a physicists' Hermite polynomial H_n(t) held in two forms.
///
/// `sign`/`log_abs` carry the true polynomial value without overflow; the
/// `scaled` member is the unit-norm Hermite function
///   h_n(t) = H_n(t) exp(-t^2/2) / (pi^{1/4} 2^{n/2} sqrt(n!)),
/// which stays bounded for every n and t.
struct HermiteEval {
  int degree = 0;
  int sign = 0;          // -1, 0 or +1
  double log_abs = 0.0;  // log|H_n(t)|, -inf when sign == 0
  double scaled = 0.0;

  /// sign * exp(log_abs); overflows to +-inf for large n.
  double value() const;
};

/// Ordered zeros t_{n,1} < ... < t_{n,n} of H_n.
struct ZeroTable {
  int degree = 0;
  std::vector<double> zeros;

  double operator[](std::size_t i) const { return zeros[i]; }
  std::size_t size() const { return zeros.size(); }
  /// Smallest distance between consecutive zeros (infinity when n < 2).
  double min_gap() const;
};

/// Theta_n(t) = 2n H_n(t)^2 + H_n'(t)^2, as log value and Gaussian-scaled value
/// exp(-t^2) Theta_n(t) / (2^n n! sqrt(pi)) = 2n (h_n^2 + h_{n-1}^2).
struct ThetaValue {
  double log_value = 0.0;
  double scaled = 0.0;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

HermiteEval eval_hermite(int n, double t);

/// H_n'(t) = 2n H_{n-1}(t).  `degree` of the result is n; `scaled` is
/// H_n'(t) exp(-t^2/2) / (pi^{1/4} 2^{n/2} sqrt(n!)) = sqrt(2n) h_{n-1}(t).
HermiteEval eval_hermite_derivative(int n, double t);

/// q_n(t) = H_n(t) / sqrt(2^n n!), the Gaussian-free part of h_n up to the
/// constant pi^{-1/4}.  No renormalization; intended for moderate n and |t|
/// (grid evaluation), where it is cheap and exact in sign.
double normalized_hermite(int n, double t);

/// (q_n(t), q_{n-1}(t)) from one pass of the recurrence.  q_{-1} := 0.
std::pair<double, double> normalized_hermite_pair(int n, double t);

/// Zeros of H_n by induction on degree with interlacing brackets.
/// Throws std::invalid_argument for n < 1 and ConvergenceError when a root
/// does not converge in 100 iterations.
ZeroTable hermite_zeros(int n);

/// All tables for degrees 1..n; element k-1 holds degree k.
std::vector<ZeroTable> hermite_zero_tables(int n);

/// log(sqrt(pi) 2^n n!), the log of the squared weighted L2 norm of H_n.
double hermite_log_norm_sq(int n);

ThetaValue theta_functional(int n, double t);

/// (sqrt(2n+1) - t_{n,n}) * sqrt(6) * (2n+1)^{1/6}.  Tends to the Airy-type
/// constant in the large-n expansion of the extreme Hermite zero.
double first_zero_asymptotic_residual(int n);

/// m-point Gauss-Hermite rule for the weight exp(-t^2): nodes are the zeros
/// of H_m, weights sqrt(pi) / (m q_{m-1}(t_i)^2).  Exact for degree <= 2m-1.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussHermiteRule gauss_hermite_rule(int m);

struct IdentityCheck {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool passed() const { return max_residual <= tolerance; }
};

/// Relative residuals, on 241 points of [-6, 6], of
///   H_n = 2t H_{n-1} - 2(n-1) H_{n-2},  H_n' = 2n H_{n-1},
///   H_n = 2t H_{n-1} - H_{n-1}',
/// plus |h_n| at the computed zeros and the Gauss-Hermite norm of H_n.
/// The derivative reference is forward-mode differentiation of the plain
/// recurrence.  Requires 1 <= n <= 100.
std::vector<IdentityCheck> hermite_identity_checks(int n);

/// Rows "i,t_{n,i}" with 17 significant digits and a header line.
void write_zero_table_csv(std::ostream& out, const ZeroTable& table);

}  // namespace qho
