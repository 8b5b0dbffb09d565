#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qho/hermite.hpp"
#include "qho/oscillator.hpp"
#include "qho/roots.hpp"

using namespace qho;

TEST_SUITE("oscillator") {
  TEST_CASE("product eigenvalues and the finite-difference Laplacian") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> pos(-3.0, 3.0);
    for (int m = 0; m <= 4; ++m)
      for (int n = 0; n <= 4; ++n) {
        const ProductEigenfunction phi{m, n};
        CHECK(phi.eigenvalue() == 2L * (m + n + 1));
        const double h = 1e-3;
        int tested = 0;
        while (tested < 20) {
          const double x = pos(rng);
          const double y = pos(rng);
          const double v = phi.value(x, y);
          if (std::abs(v) < 1e-2) continue;
          const double lap = (phi.value(x + h, y) + phi.value(x - h, y) + phi.value(x, y + h) + phi.value(x, y - h) - 4 * v) /
                             (h * h);
          const double hv = -lap + (x * x + y * y) * v;
          CHECK(std::abs(hv - phi.eigenvalue() * v) / std::abs(phi.eigenvalue() * v) < 1e-5);
          ++tested;
        }
      }
  }

  TEST_CASE("product value matches the oracle Hermite functions") {
    for (double x : {-1.3, 0.2, 2.5})
      for (double y : {-0.4, 1.9}) {
        const double v = ProductEigenfunction{3, 2}.value(x, y);
        CHECK(v == doctest::Approx(oracle::hermite_function(3, x) * oracle::hermite_function(2, y)).epsilon(1e-12));
      }
  }

  TEST_CASE("construction requires odd n and reduces theta") {
    CHECK_THROWS_AS(Superposition(4, Angle::radians(0.3)), std::invalid_argument);
    const Superposition a(5, Angle::radians(0.4));
    const Superposition b(5, Angle::radians(0.4 + std::numbers::pi));
    CHECK(b.theta().value() == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(b.orientation() == -1);
    for (double x : {-1.0, 0.3, 2.2})
      for (double y : {-0.5, 1.7}) CHECK(b.value(x, y) == doctest::Approx(-a.value(x, y)).epsilon(1e-13));
  }

  TEST_CASE("evaluation examples") {
    const Superposition d(5, Angle::pi_fraction(3, 4));
    for (double t : {-3.0, -0.7, 0.0, 0.4, 2.9}) {
      CHECK(d.value(t, t) == 0.0);
      CHECK(d.reduced(t, t) == 0.0);
      CHECK(eval_superposition(d, t, t) == 0.0);
    }
    const Superposition h(3, Angle::pi_fraction(1, 2));
    for (double y : hermite_zeros(3).zeros)
      for (double x : {-2.0, 0.5, 1.1}) CHECK(std::abs(h.value(x, y)) < 1e-15);
    const Superposition p(3, Angle::pi_fraction(1, 8));
    CHECK(std::abs(p.value(-std::sqrt(1.5), 0.0)) < 1e-15);
  }

  TEST_CASE("gradient matches central differences") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> pos(-3.0, 3.0);
    std::uniform_real_distribution<double> ang(0.0, std::numbers::pi);
    for (int k = 0; k < 100; ++k) {
      const Superposition s(2 * (k % 4) + 3, Angle::radians(ang(rng)));
      const double x = pos(rng);
      const double y = pos(rng);
      const double h = 1e-6;
      const auto g = grad_superposition(s, x, y);
      const double gx = (s.value(x + h, y) - s.value(x - h, y)) / (2 * h);
      const double gy = (s.value(x, y + h) - s.value(x, y - h)) / (2 * h);
      const double scale = std::max({std::abs(g[0]), std::abs(g[1]), 1e-3});
      CHECK(std::abs(gx - g[0]) / scale < 1e-6);
      CHECK(std::abs(gy - g[1]) / scale < 1e-6);
      const auto rg = s.reduced_gradient(x, y);
      const double rx = (s.reduced(x + h, y) - s.reduced(x - h, y)) / (2 * h);
      const double rscale = std::max({std::abs(rg[0]), std::abs(rg[1]), 1e-3});
      CHECK(std::abs(rx - rg[0]) / rscale < 1e-6);
    }
  }

  TEST_CASE("gradient at lattice points and critical zeros") {
    const Superposition s(5, Angle::radians(0.3));
    for (double x : hermite_zeros(5).zeros)
      for (double y : hermite_zeros(5).zeros) {
        const auto g = s.gradient(x, y);
        CHECK(std::hypot(g[0], g[1]) > 1e-8);
      }
    const Superposition c(3, Angle::pi_fraction(3, 4));
    const double t = hermite_zeros(2)[0];
    const auto g = c.gradient(t, t);
    CHECK(std::abs(g[0]) < 1e-15);
    CHECK(std::abs(g[1]) < 1e-15);
  }

  TEST_CASE("symmetry identities") {
    const auto r = symmetry_check(Superposition(5, Angle::radians(0.3)), 1.1, -0.7);
    for (double v : r) CHECK(v < 1e-12);
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> pos(-4.0, 4.0);
    std::uniform_real_distribution<double> ang(0.0, std::numbers::pi);
    for (int k = 0; k < 200; ++k) {
      const auto res = symmetry_check(Superposition(2 * (k % 5) + 1, Angle::radians(ang(rng))), pos(rng), pos(rng));
      for (double v : res) CHECK(v < 1e-12);
    }
    const Superposition q(7, Angle::pi_fraction(1, 4));
    CHECK(q.value(0.3, -1.2) == q.value(-1.2, 0.3));
    const Superposition h(3, Angle::pi_fraction(1, 2));
    CHECK(h.value(0.4, -0.9) == doctest::Approx(-h.value(0.4, 0.9)).epsilon(1e-15));
  }

  TEST_CASE("signs agree with the log-form polynomial combination") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> pos(-6.0, 6.0);
    std::uniform_real_distribution<double> ang(0.0, std::numbers::pi);
    std::uniform_int_distribution<int> deg(0, 7);
    int compared = 0;
    for (int k = 0; k < 10000; ++k) {
      const int n = 2 * deg(rng) + 1;
      const Angle th = Angle::radians(ang(rng));
      const Superposition s(n, th);
      const double x = pos(rng);
      const double y = pos(rng);
      const HermiteEval hx = eval_hermite(n, x);
      const HermiteEval hy = eval_hermite(n, y);
      const double shift = std::max(hx.log_abs, hy.log_abs);
      const double a = std::cos(th.value()) * hx.sign * std::exp(hx.log_abs - shift);
      const double b = std::sin(th.value()) * hy.sign * std::exp(hy.log_abs - shift);
      if (std::abs(a + b) < 1e-9 * (std::abs(a) + std::abs(b))) continue;
      const double v = s.value(x, y);
      if (v == 0.0) continue;
      CHECK((v > 0) == (a + b > 0));
      ++compared;
    }
    CHECK(compared > 9900);
  }

  TEST_CASE("checkerboard: nodal points away from the lattice satisfy H_n(x) H_n(y) < 0") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> pos(-4.0, 4.0);
    std::uniform_real_distribution<double> ang(1e-3, 0.25 * std::numbers::pi);
    int checked = 0;
    for (int k = 0; k < 2000; ++k) {
      const int n = 2 * (k % 4) + 3;
      const Superposition s(n, Angle::radians(ang(rng)));
      const double x = pos(rng);
      auto f = [&](double y) { return s.reduced(x, y); };
      for (double y : roots::sign_change_roots(f, -6.0, 6.0, 1200)) {
        const double px = normalized_hermite(n, x);
        const double py = normalized_hermite(n, y);
        if (std::abs(px) < 1e-8 && std::abs(py) < 1e-8) continue;  // lattice point
        CHECK(px * py < 0.0);
        ++checked;
      }
    }
    CHECK(checked > 1000);
  }

  TEST_CASE("eigenspace bookkeeping") {
    const auto e0 = eigenspace_info(0);
    CHECK(e0.dimension == 1);
    CHECK(e0.eigenvalue == 2);
    CHECK(e0.parity == Parity::Even);
    const auto e2 = eigenspace_info(2);
    CHECK(e2.dimension == 3);
    CHECK(e2.eigenvalue == 6);
    const auto e7 = eigenspace_info(7);
    CHECK(e7.dimension == 8);
    CHECK(e7.parity == Parity::Odd);
    CHECK_THROWS(eigenspace_info(-1));
  }
}
