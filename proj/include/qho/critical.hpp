#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qho/angle.hpp"
#include "qho/hermite.hpp"
#include "qho/types.hpp"

namespace qho {

/// Tolerance for "theta equals a critical angle".
inline constexpr double kCriticalAngleTolerance = 1e-12;
/// Tolerance for merging equal critical values.
inline constexpr double kCriticalValueDedup = 1e-10;

struct CriticalAngleEntry {
  int i = 0;  // 1-based index into the zeros of H_{n-1}
  int j = 0;
  double theta = 0.0;
};

/// Open interval (lo, hi) of theta values free of critical angles.
struct ThetaInterval {
  double lo = 0.0;
  double hi = 0.0;
  double midpoint() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
  bool contains(double t) const { return t > lo && t < hi; }
};

struct CriticalAngleTable {
  int n = 0;
  ZeroTable derivative_zeros;  // zeros of H_{n-1}
  std::vector<CriticalAngleEntry> entries;
  std::vector<double> distinct_values;  // sorted, deduplicated
  double theta_c = 0.0;
  /// Sorted regular intervals covering (0, pi) minus the critical values and
  /// pi/2 (where Phi is the product phi_{0,n} and the ends at infinity change).
  std::vector<ThetaInterval> regular_intervals;

  const CriticalAngleEntry& at(int i, int j) const;
  /// Regular interval containing theta, if any.
  std::optional<ThetaInterval> interval_containing(double theta) const;
  /// Largest open interval around theta0 (a critical value) on each side,
  /// i.e. the two regular intervals adjacent to it.
  std::pair<ThetaInterval, ThetaInterval> neighbours_of(double theta0) const;
};

/// Relative residual of cos(theta) H_n(a) + sin(theta) H_n(b), computed from
/// the log representation and scaled by max(|H_n(a)|, |H_n(b)|).
double critical_residual(int n, double theta, double a, double b);

/// Throws std::invalid_argument unless n is odd and >= 3.
CriticalAngleTable critical_angles(int n);

enum class HessianSign { Positive, Negative };

struct CriticalZero {
  int i = 0;
  int j = 0;
  Point location;
  /// Diagonal of the reduced Hessian: (cos q_n''(x), sin q_n''(y)).
  double hxx = 0.0;
  double hyy = 0.0;
  HessianSign sign_x = HessianSign::Positive;
  HessianSign sign_y = HessianSign::Positive;

  /// True for a (+,-) or (-,+) signature, i.e. a nodal double crossing.
  bool is_double_crossing() const { return sign_x != sign_y; }
};

std::vector<CriticalZero> critical_zeros_at(const CriticalAngleTable& table, const Angle& theta,
                                            double tol = kCriticalAngleTolerance);
std::vector<CriticalZero> critical_zeros_at(int n, const Angle& theta,
                                            double tol = kCriticalAngleTolerance);

enum class Opening { Vertical, Horizontal };

struct DesingularizationVerdict {
  int n = 0;
  int i = 0;
  double epsilon = 0.0;
  bool holds = true;
  /// Sign configuration near (t_{n-1,i}, t_{n-1,i}): case "i" for even i,
  /// case "ii" for odd i.
  std::string sign_case;
  /// For tan(theta) = -(1+eps): the arcs avoid the horizontal segment through
  /// the crossing and open vertically.  -eps opens horizontally.
  Opening positive_epsilon = Opening::Vertical;
  Opening negative_epsilon = Opening::Horizontal;
  std::optional<double> counterexample_t;
  std::string failed_inequality;
};

/// Checks on 1000 interior points of (t_{n,i}, t_{n,i+1}):
///   (-1)^i (H_n(t) - (1+eps) H_n(t_{n-1,i})) >= 0   (line y = t_{n-1,i})
///   (-1)^i ((1-eps) H_n(t) - H_n(t_{n-1,i})) >= 0   (line x = t_{n-1,i})
/// eps = 0 is accepted and checks the non-strict limit.
DesingularizationVerdict desingularization_signs(int n, int i, double epsilon);

/// Angle theta = pi - atan(1 + eps) whose superposition is proportional to
/// H_n(x) - (1+eps) H_n(y); below 3pi/4 for eps > 0.
double desingularization_angle(double epsilon);

struct VjViolation {
  int i = 0;
  int j = 0;
  double value = 0.0;
};

struct VjVerdict {
  int n = 0;
  double theta = 0.0;
  bool holds = true;
  int checked = 0;
  std::vector<VjViolation> violations;
  /// max relative deviation between the direct value of v_j(t_{n-1,i}) and
  /// H_n(t_{n-1,j}) sin(theta(j,i) - theta) / sin(theta(j,i)).
  double identity_residual = 0.0;
};

/// Verifies (-1)^{j+1} v_j(t_{n-1,i}) > 0 for all 1 <= i,j <= n-1 where
/// v_j(y) = cos(theta) H_n(t_{n-1,j}) + sin(theta) H_n(y).  The sign is
/// evaluated for any theta; it is only guaranteed below theta_c.
VjVerdict vj_sign_check(const CriticalAngleTable& table, double theta);
VjVerdict vj_sign_check(int n, double theta);

void write_critical_table_csv(std::ostream& out, const CriticalAngleTable& table);

}  // namespace qho
