#include "qho/angle.hpp"

#include <fmt/format.h>

#include <charconv>
#include <numeric>
#include <stdexcept>

namespace qho {

namespace {

constexpr double kPi = std::numbers::pi;

// Exact cos/sin for multiples of pi/4 in [0, 2pi); nullopt otherwise.
std::optional<std::pair<double, double>> exact_cos_sin(long num, long den) {
  // Bring to k/8 of a full turn when possible.
  const long twice_den = 2 * den;
  long r = num % twice_den;
  if (r < 0) r += twice_den;
  if ((4 * r) % den != 0) return std::nullopt;
  const long eighth = (4 * r) / den;  // r/den*pi = eighth * pi/4
  constexpr double h = std::numbers::sqrt2 / 2.0;
  switch (eighth) {
    case 0: return std::pair{1.0, 0.0};
    case 1: return std::pair{h, h};
    case 2: return std::pair{0.0, 1.0};
    case 3: return std::pair{-h, h};
    case 4: return std::pair{-1.0, 0.0};
    case 5: return std::pair{-h, -h};
    case 6: return std::pair{0.0, -1.0};
    case 7: return std::pair{h, -h};
    default: return std::nullopt;
  }
}

}  // namespace

Angle Angle::pi_fraction(long num, long den) {
  if (den <= 0) throw std::invalid_argument("angle denominator must be positive");
  const long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Angle(kPi * static_cast<double>(num) / static_cast<double>(den),
               std::pair{num, den});
}

Angle Angle::parse_pi_fraction(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("bad theta-over-pi: " + text);
    return Angle::radians(v * kPi);
  }
  auto parse_long = [&](std::string_view s) {
    long out = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc{} || ptr != s.data() + s.size())
      throw std::invalid_argument("bad theta-over-pi: " + text);
    return out;
  };
  const std::string_view view(text);
  return pi_fraction(parse_long(view.substr(0, slash)), parse_long(view.substr(slash + 1)));
}

double Angle::cos() const {
  if (fraction_) {
    if (auto cs = exact_cos_sin(fraction_->first, fraction_->second)) return cs->first;
  }
  return std::cos(value_);
}

double Angle::sin() const {
  if (fraction_) {
    if (auto cs = exact_cos_sin(fraction_->first, fraction_->second)) return cs->second;
  }
  return std::sin(value_);
}

std::pair<Angle, int> Angle::reduced_mod_pi() const {
  if (fraction_) {
    auto [num, den] = *fraction_;
    // floor(num/den)
    long q = num / den;
    if (num % den != 0 && num < 0) --q;
    const long r = num - q * den;
    const int flip = (q % 2 == 0) ? 1 : -1;
    return {pi_fraction(r, den), flip};
  }
  const double q = std::floor(value_ / kPi);
  double r = value_ - q * kPi;
  if (r >= kPi) r -= kPi;
  if (r < 0.0) r = 0.0;
  const long qi = static_cast<long>(q);
  return {Angle::radians(r), (qi % 2 == 0) ? 1 : -1};
}

bool Angle::near(const Angle& other, double tol) const {
  if (fraction_ && other.fraction_) return *fraction_ == *other.fraction_;
  return std::abs(value_ - other.value_) <= tol;
}

Angle Angle::supplement() const {
  if (fraction_) return pi_fraction(fraction_->second - fraction_->first, fraction_->second);
  return radians(kPi - value_);
}

Angle Angle::complement() const {
  if (fraction_) return pi_fraction(fraction_->second - 2 * fraction_->first, 2 * fraction_->second);
  return radians(0.5 * kPi - value_);
}

std::string Angle::to_string() const {
  if (fraction_) return fmt::format("{}/{}*pi", fraction_->first, fraction_->second);
  return fmt::format("{:.17g}", value_);
}

}  // namespace qho
