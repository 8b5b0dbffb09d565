#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "oracles.hpp"
#include "qho/critical.hpp"
#include "qho/oscillator.hpp"

using namespace qho;

namespace {

constexpr double kPi = std::numbers::pi;

// theta in (0, pi) solving cos(theta) H_n(a) + sin(theta) H_n(b) = 0, from long double values.
double oracle_angle(int n, long double a, long double b) {
  const long double ha = oracle::hermite(n, a);
  const long double hb = oracle::hermite(n, b);
  long double th = std::atan2(-ha, hb);
  if (th <= 0) th += std::numbers::pi_v<long double>;
  return static_cast<double>(th);
}

}  // namespace

TEST_SUITE("critical") {
  TEST_CASE("n=3 table matches the analytic values") {
    const auto t = critical_angles(3);
    REQUIRE(t.entries.size() == 4);
    CHECK(std::abs(t.at(1, 1).theta - 0.75 * kPi) < 1e-10);
    CHECK(std::abs(t.at(2, 2).theta - 0.75 * kPi) < 1e-10);
    CHECK(std::abs(t.at(1, 2).theta - 0.25 * kPi) < 1e-10);
    CHECK(std::abs(t.at(2, 1).theta - 0.25 * kPi) < 1e-10);
    CHECK(std::abs(t.theta_c - 0.25 * kPi) < 1e-10);
    REQUIRE(t.distinct_values.size() == 2);
    CHECK(std::abs(t.distinct_values[0] - 0.25 * kPi) < 1e-10);
    CHECK(std::abs(t.distinct_values[1] - 0.75 * kPi) < 1e-10);
    CHECK(std::abs(oracle::hermite(3, -1.0L / std::sqrt(2.0L)) - 4.0L * std::sqrt(2.0L)) < 1e-15L);
  }

  TEST_CASE("tables for n = 5, 7, 9 solve the critical equation") {
    for (int n : {5, 7, 9}) {
      const auto t = critical_angles(n);
      CHECK(t.entries.size() == static_cast<std::size_t>((n - 1) * (n - 1)));
      double minimum = kPi;
      for (const auto& e : t.entries) {
        CHECK(e.theta > 0.0);
        CHECK(e.theta < kPi);
        const double a = t.derivative_zeros[static_cast<std::size_t>(e.i - 1)];
        const double b = t.derivative_zeros[static_cast<std::size_t>(e.j - 1)];
        CHECK(critical_residual(n, e.theta, a, b) < 1e-12);
        CHECK(std::abs(e.theta - oracle_angle(n, a, b)) < 1e-10);
        if (e.i == e.j) CHECK(std::abs(e.theta - 0.75 * kPi) < 1e-12);
        const double ti = std::tan(e.theta);
        const double tj = std::tan(t.at(e.j, e.i).theta);
        CHECK(std::abs(ti * tj - 1.0) < 1e-10);
        minimum = std::min(minimum, e.theta);
      }
      CHECK(t.theta_c == minimum);
      CHECK(t.theta_c > 0.0);
    }
  }

  TEST_CASE("regular intervals partition (0, pi) at the critical values and pi/2") {
    for (int n : {3, 5, 7, 9}) {
      const auto t = critical_angles(n);
      REQUIRE(!t.regular_intervals.empty());
      CHECK(t.regular_intervals.front().lo == 0.0);
      CHECK(t.regular_intervals.back().hi == doctest::Approx(kPi));
      for (std::size_t k = 1; k < t.regular_intervals.size(); ++k)
        CHECK(t.regular_intervals[k].lo == t.regular_intervals[k - 1].hi);
      for (const auto& iv : t.regular_intervals)
        for (double v : t.distinct_values) CHECK_FALSE(iv.contains(v));
      CHECK_FALSE(t.interval_containing(0.5 * kPi).has_value());
      CHECK(t.interval_containing(0.5 * t.theta_c).has_value());
    }
    CHECK_THROWS_AS(critical_angles(4), std::invalid_argument);
    CHECK_THROWS_AS(critical_angles(1), std::invalid_argument);
  }

  TEST_CASE("critical zeros at given angles") {
    CHECK(critical_zeros_at(3, Angle::radians(0.4)).empty());
    const auto z3 = critical_zeros_at(3, Angle::pi_fraction(3, 4));
    REQUIRE(z3.size() == 2);
    const auto t2 = oracle::golub_welsch(2).first;
    for (std::size_t k = 0; k < 2; ++k) {
      CHECK(std::abs(z3[k].location.x - static_cast<double>(t2[k])) < 1e-14);
      CHECK(z3[k].location.x == z3[k].location.y);
      CHECK(z3[k].is_double_crossing());
    }
    const auto z7 = critical_zeros_at(7, Angle::pi_fraction(3, 4));
    CHECK(z7.size() == 6);
    for (const auto& z : z7) {
      CHECK(z.i == z.j);
      CHECK(z.is_double_crossing());
    }
    const auto t = critical_angles(7);
    const auto zc = critical_zeros_at(t, Angle::radians(t.theta_c));
    CHECK(!zc.empty());
    for (const auto& z : zc) CHECK(z.i != z.j);
  }

  TEST_CASE("critical zeros are zeros of the field and its gradient, with a diagonal Hessian") {
    for (int n : {3, 5, 7, 9}) {
      const auto t = critical_angles(n);
      for (double v : t.distinct_values) {
        const Superposition s(n, Angle::radians(v));
        for (const auto& z : critical_zeros_at(t, Angle::radians(v))) {
          const double x = z.location.x;
          const double y = z.location.y;
          const double scale = std::abs(s.cos_coeff() * normalized_hermite(n, x)) + 1.0;
          CHECK(std::abs(s.reduced(x, y)) < 1e-12 * scale);
          const auto g = s.reduced_gradient(x, y);
          CHECK(std::abs(g[0]) < 1e-10 * scale);
          CHECK(std::abs(g[1]) < 1e-10 * scale);
          CHECK(z.hxx != 0.0);
          CHECK(z.hyy != 0.0);
          CHECK(z.is_double_crossing());
          const double h = 1e-2;
          auto f = [&](double a, double b) { return s.reduced(a, b); };
          const double mixed = (f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) + f(x - h, y - h)) / (4 * h * h);
          CHECK(std::abs(mixed) < 1e-10 * std::max(std::abs(z.hxx), std::abs(z.hyy)));
          const double hd = 1e-4;
          const double fxx = (f(x + hd, y) - 2 * f(x, y) + f(x - hd, y)) / (hd * hd);
          CHECK(std::abs(fxx - z.hxx) < 1e-5 * std::abs(z.hxx));
        }
      }
    }
  }

  TEST_CASE("desingularization sign inequalities") {
    const auto a = desingularization_signs(7, 3, 0.01);
    CHECK(a.holds);
    CHECK(a.sign_case == "ii");
    CHECK(a.positive_epsilon == Opening::Vertical);
    CHECK(a.negative_epsilon == Opening::Horizontal);
    const auto b = desingularization_signs(3, 1, 0.02);
    CHECK(b.holds);
    CHECK(b.sign_case == "ii");
    CHECK(desingularization_signs(5, 2, 0.01).sign_case == "i");
    CHECK(desingularization_signs(5, 2, 0.0).holds);
    for (int n : {3, 5, 7, 9})
      for (int i = 1; i < n; ++i)
        for (double eps : {0.0, 0.001, 0.01, 0.05}) CHECK(desingularization_signs(n, i, eps).holds);
    CHECK_THROWS_AS(desingularization_signs(5, 0, 0.01), std::invalid_argument);
    CHECK_THROWS_AS(desingularization_signs(5, 1, 0.2), std::invalid_argument);
    CHECK(desingularization_angle(0.01) < 0.75 * kPi);
    CHECK(std::tan(desingularization_angle(0.01)) == doctest::Approx(-1.01).epsilon(1e-12));
  }

  TEST_CASE("v_j signs below theta_c") {
    const auto a = vj_sign_check(3, kPi / 8);
    CHECK(a.holds);
    CHECK(a.checked == 4);
    const auto t7 = critical_angles(7);
    const auto b = vj_sign_check(t7, 0.99 * t7.theta_c);
    CHECK(b.holds);
    CHECK(b.checked == 36);
    CHECK(b.identity_residual < 1e-10);
    const auto c = vj_sign_check(3, kPi / 4 + 0.01);
    CHECK_FALSE(c.holds);
    CHECK(!c.violations.empty());
  }

  TEST_CASE("v_j signs against direct long double evaluation") {
    for (int n : {3, 5, 7, 9}) {
      const auto t = critical_angles(n);
      const auto tz = oracle::golub_welsch(n - 1).first;
      for (double frac : {0.1, 0.5, 0.9}) {
        const double th = frac * t.theta_c;
        bool all = true;
        for (int i = 1; i < n; ++i)
          for (int j = 1; j < n; ++j) {
            const long double v = std::cos(static_cast<long double>(th)) * oracle::hermite(n, tz[static_cast<std::size_t>(j - 1)]) +
                                  std::sin(static_cast<long double>(th)) * oracle::hermite(n, tz[static_cast<std::size_t>(i - 1)]);
            all = all && ((j % 2 == 1) ? v > 0 : v < 0);
          }
        CHECK(all);
        CHECK(vj_sign_check(t, th).holds == all);
      }
    }
  }

  TEST_CASE("csv export") {
    std::ostringstream out;
    write_critical_table_csv(out, critical_angles(3));
    const std::string s = out.str();
    CHECK(s.rfind("# n=3 theta_c=0.78539816339744", 0) == 0);
    CHECK(s.find("i,j,theta_ij\n1,1,2.35619449019234") != std::string::npos);
    std::ostringstream nine;
    write_critical_table_csv(nine, critical_angles(9));
    const std::string s9 = nine.str();
    CHECK(std::count(s9.begin(), s9.end(), '\n') == 66);
  }
}
