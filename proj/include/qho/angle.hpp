#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <utility>

namespace qho {

/// Mixing angle of a two-term superposition.
///
/// An angle is either a raw radian value or an exact rational multiple of
/// pi.  Rational angles that are multiples of pi/4 produce cos/sin values
/// of identical magnitude, so e.g. 3pi/4 yields cos == -sin bit for bit and
/// the diagonal is exactly in the zero set.
class Angle {
 public:
  Angle() = default;

  static Angle radians(double value) { return Angle(value, std::nullopt); }

  /// theta = num/den * pi.  Throws std::invalid_argument when den <= 0.
  static Angle pi_fraction(long num, long den);

  /// Parses "3/4" or "0.75" as a multiple of pi.
  static Angle parse_pi_fraction(const std::string& text);

  double value() const { return value_; }
  const std::optional<std::pair<long, long>>& fraction() const { return fraction_; }

  double cos() const;
  double sin() const;

  /// Reduction of theta into [0, pi).  The second member is -1 when the
  /// reduction crossed an odd multiple of pi (Phi^{theta+pi} = -Phi^theta).
  std::pair<Angle, int> reduced_mod_pi() const;

  /// True when both are exact and equal, or when the radian values agree
  /// within tol.
  bool near(const Angle& other, double tol) const;

  /// pi - theta and pi/2 - theta, exact for rational angles.
  Angle supplement() const;
  Angle complement() const;

  std::string to_string() const;

 private:
  Angle(double value, std::optional<std::pair<long, long>> fraction)
      : value_(value), fraction_(std::move(fraction)) {}

  double value_ = 0.0;
  std::optional<std::pair<long, long>> fraction_;
};

}  // namespace qho
