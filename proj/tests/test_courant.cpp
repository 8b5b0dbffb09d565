#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "qho/courant.hpp"

using namespace qho;

TEST_SUITE("courant") {
  TEST_CASE("bound examples") {
    const auto b0 = courant_bounds(0);
    CHECK(b0.mu_C == 1);
    CHECK(b0.courant_sharp_possible);
    const auto b2 = courant_bounds(2);
    CHECK(b2.mu_C == 4);
    CHECK(b2.mu_L == 4);
    CHECK(b2.courant_sharp_possible);
    const auto b3 = courant_bounds(3);
    CHECK(b3.mu_C == 7);
    CHECK(b3.mu_L == 6);
    CHECK_FALSE(b3.courant_sharp_possible);
    const auto b4 = courant_bounds(4);
    CHECK(b4.mu_C == 11);
    CHECK(b4.mu_L == 10);
    CHECK_FALSE(b4.courant_sharp_possible);
    CHECK_THROWS_AS(courant_bounds(-1), std::invalid_argument);
  }

  TEST_CASE("bound formulas and ordering") {
    for (int ell = 0; ell <= 200; ++ell) {
      const auto b = courant_bounds(ell);
      CHECK(b.mu_C == static_cast<long>(ell) * (ell + 1) / 2 + 1);
      const long r = ell / 2;
      CHECK(b.mu_L == (ell % 2 == 0 ? 2 * (r * r + 1) : 2 * r * (r + 1) + 2));
      if (ell >= 3) CHECK(b.mu_L < b.mu_C);
      CHECK(b.courant_sharp_possible == (ell <= 2));
    }
  }

  TEST_CASE("csv table") {
    std::ostringstream out;
    write_courant_csv(out, 2);
    CHECK(out.str() == "ell,mu_C,mu_L,sharp\n0,1,2,true\n1,2,2,true\n2,4,4,true\n");
  }

  TEST_CASE("random eigenspace functions") {
    std::mt19937_64 rng(71);
    for (int ell = 0; ell <= 6; ++ell)
      for (bool two : {false, true}) {
        const auto u = random_eigenspace_function(ell, rng, two);
        REQUIRE(u.coeffs.size() == static_cast<std::size_t>(ell + 1));
        double norm = 0.0;
        int nonzero = 0;
        for (double c : u.coeffs) {
          norm += c * c;
          nonzero += c != 0.0;
        }
        CHECK(norm == doctest::Approx(1.0).epsilon(1e-14));
        if (two && ell >= 1) CHECK(nonzero == 2);
        std::uniform_real_distribution<double> pos(-3.0, 3.0);
        for (int k = 0; k < 50; ++k) {
          const double x = pos(rng);
          const double y = pos(rng);
          const double v = u(x, y);
          const double w = u(-x, -y);
          const double sgn = ell % 2 == 0 ? 1.0 : -1.0;
          CHECK(std::abs(w - sgn * v) <= 1e-12 * std::max(std::abs(v), 1.0));
        }
      }
  }

  TEST_CASE("linear eigenfunctions have two domains") {
    const auto r = empirical_domain_bound_check(1, 10);
    CHECK(r.passed());
    for (const auto& s : r.samples) {
      CHECK(s.domains == 2);
      CHECK(s.domains_wide == 2);
    }
  }

  TEST_CASE("second eigenspace") {
    const auto r = empirical_domain_bound_check(2, 20);
    CHECK(r.passed());
    for (const auto& s : r.samples) {
      CHECK(s.domains >= 2);
      CHECK(s.domains <= 4);
    }
  }

  TEST_CASE("fifth eigenspace stays below the improved bound") {
    const auto r = empirical_domain_bound_check(5, 20);
    CHECK(r.passed());
    for (const auto& s : r.samples) {
      CHECK(std::max(s.domains, s.domains_wide) <= 14);
      CHECK(s.domains % 2 == 0);
      CHECK(s.parity_residual <= 1e-12);
    }
  }

  TEST_CASE("reports are reproducible") {
    const auto a = empirical_domain_bound_check(3, 6, 99, 256);
    const auto b = empirical_domain_bound_check(3, 6, 99, 256);
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t k = 0; k < a.samples.size(); ++k) {
      CHECK(a.samples[k].coeffs == b.samples[k].coeffs);
      CHECK(a.samples[k].domains == b.samples[k].domains);
    }
    CHECK_THROWS_AS(empirical_domain_bound_check(7, 1), std::invalid_argument);
  }
}
