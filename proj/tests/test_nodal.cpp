#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qho/critical.hpp"
#include "qho/hermite.hpp"
#include "qho/nodal.hpp"
#include "qho/oscillator.hpp"

using namespace qho;

namespace {

constexpr double kPi = std::numbers::pi;

double distance_to_segment(Point p, Point a, Point b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0.0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, {a.x + t * dx, a.y + t * dy});
}

double distance_to_curves(Point p, const CurveSet& cs) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : cs.curves) {
    for (std::size_t k = 1; k < c.points.size(); ++k)
      best = std::min(best, distance_to_segment(p, c.points[k - 1], c.points[k]));
    if (c.closed && c.points.size() > 1) best = std::min(best, distance_to_segment(p, c.points.back(), c.points.front()));
  }
  return best;
}

TopologyOptions quick() {
  TopologyOptions o;
  o.check_stability = false;
  return o;
}

}  // namespace

TEST_SUITE("nodal") {
  TEST_CASE("product eigenfunctions have (m+1)(n+1) domains") {
    for (int m = 0; m <= 4; ++m)
      for (int n = 0; n <= 4; ++n) {
        const SeparableField f({{1.0, m, n}});
        const SignGrid g = build_sign_grid(f, Box::square(4.0), 256, 256);
        const DomainCount d = count_nodal_domains(g);
        CHECK(d.domains == (m + 1) * (n + 1));
      }
  }

  TEST_CASE("default resolution") {
    CHECK(default_resolution(3) == 1024);
    CHECK(default_resolution(9) == 1024);
    CHECK(default_resolution(18) == 2048);
  }

  TEST_CASE("two domains below theta_c") {
    const auto t = analyze_topology(Superposition(3, Angle::pi_fraction(1, 8)));
    CHECK(t.domain_count == 2);
    CHECK(t.euler_domain_count == 2);
    CHECK(t.is_simple_connected_curve());
    CHECK(t.unbounded_arcs == 2);
    CHECK(t.stable);
    CHECK(t.runs.size() == 3);
  }

  TEST_CASE("diagonal plus nested closed curves at 3pi/4") {
    for (int n : {3, 5, 7}) {
      const auto t = analyze_topology(Superposition(n, Angle::pi_fraction(3, 4)));
      CAPTURE(n);
      CHECK(t.stable);
      CHECK(t.domain_count == n + 1);
      CHECK(t.euler_domain_count == n + 1);
      CHECK(t.diagonal_component);
      CHECK(t.curve_components == (n - 1) / 2 + 1);
      CHECK(t.closed_curves == (n - 1) / 2);
      CHECK(t.unbounded_arcs == 2);
      CHECK(t.double_crossings == n - 1);

      const auto diag = t.crossings_on("diagonal");
      const auto ref = oracle::golub_welsch(n - 1).first;
      REQUIRE(diag.size() == ref.size());
      for (std::size_t k = 0; k < ref.size(); ++k) {
        CHECK(std::abs(diag[k].point.x - ref[k]) < 1e-6);
        CHECK(diag[k].point.x == diag[k].point.y);
        CHECK(diag[k].curves.size() == 2);
      }
      const auto anti = t.crossings_on("antidiagonal");
      const auto refn = oracle::golub_welsch(n).first;
      REQUIRE(anti.size() == refn.size());
      for (std::size_t k = 0; k < refn.size(); ++k) {
        CHECK(std::abs(anti[k].point.x - refn[k]) < 1e-6);
        CHECK(anti[k].point.y == -anti[k].point.x);
      }
    }
  }

  TEST_CASE("the diagonal is in the zero set at 3pi/4") {
    const Superposition s(7, Angle::pi_fraction(3, 4));
    double worst = 0.0;
    for (int k = 0; k <= 2000; ++k) {
      const double t = -5.0 + 10.0 * k / 2000.0;
      worst = std::max(worst, std::abs(s.reduced(t, t)));
    }
    CHECK(worst == 0.0);
  }

  TEST_CASE("regular angles between pi/4 and 3pi/4 give one simple curve for n=3") {
    const auto table = critical_angles(3);
    for (double th : {0.3 * kPi, 0.45 * kPi, 0.55 * kPi, 0.7 * kPi}) {
      const auto t = analyze_topology(Superposition(3, Angle::radians(th)));
      CHECK(t.domain_count == 2);
      CHECK(t.is_simple_connected_curve());
      CHECK(t.unbounded_arcs == 2);
      CHECK(t.stable);
    }
    const auto [lo, hi] = table.neighbours_of(0.75 * kPi);
    for (double th : {0.75 * kPi - 0.5 * lo.width(), 0.75 * kPi + 0.5 * hi.width()}) {
      const auto t = analyze_topology(Superposition(3, Angle::radians(th)));
      CHECK(t.domain_count == 2);
      CHECK(t.is_simple_connected_curve());
      CHECK(t.stable);
    }
  }

  TEST_CASE("lattice containment and checkerboard exclusion") {
    for (int n : {3, 5, 7}) {
      const double th = 0.3;
      const auto t = analyze_topology(Superposition(n, Angle::radians(th)), quick());
      const double h = t.box.width() / t.resolution;
      const auto z = hermite_zeros(n).zeros;
      for (double x : z)
        for (double y : z) CHECK(distance_to_curves({x, y}, t.curves) <= h);
      auto near_zero = [&](double v) {
        for (double r : z)
          if (std::abs(v - r) <= 2.0 * h) return true;
        return false;
      };
      int outside = 0;
      for (const auto& c : t.curves.curves)
        for (const Point& p : c.points) {
          if (normalized_hermite(n, p.x) * normalized_hermite(n, p.y) > 0.0 && !near_zero(p.x) && !near_zero(p.y))
            ++outside;
        }
      CHECK(outside == 0);
    }
  }

  TEST_CASE("swapping x and y preserves the topology") {
    for (double th : {0.2, 0.6, 1.9, 2.5}) {
      const auto a = analyze_topology(Superposition(5, Angle::radians(th)), quick());
      const auto b = analyze_topology(Superposition(5, Angle::radians(0.5 * kPi - th)), quick());
      CHECK(a.domain_count == b.domain_count);
      CHECK(a.curve_components == b.curve_components);
      CHECK(a.closed_curves == b.closed_curves);
      CHECK(a.unbounded_arcs == b.unbounded_arcs);
    }
  }

  TEST_CASE("critical zeros must match the grid exclusions") {
    const Superposition s(3, Angle::pi_fraction(3, 4));
    const Box box = enclosing_box(3, s.theta());
    const auto zeros = critical_zeros_at(3, s.theta());
    const SignGrid g = build_sign_grid(s, box, 512);
    CHECK_THROWS_AS(trace_nodal_curves(g, SeparableField::from(s), zeros), std::invalid_argument);
  }

  TEST_CASE("line oracle agrees with traced crossings on random lines") {
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> slope(-3.0, 3.0);
    int compared = 0;
    for (int n : {3, 5}) {
      const double th = 0.37;
      const auto t = analyze_topology(Superposition(n, Angle::radians(th)), quick());
      const double h = t.box.width() / t.resolution;
      const Box inner{t.curves.extent.x_min + 3 * h, t.curves.extent.x_max - 3 * h, t.curves.extent.y_min + 3 * h,
                      t.curves.extent.y_max - 3 * h};
      int lines = 0;
      while (lines < 10) {
        const double alpha = slope(rng);
        const auto r = line_intersection_oracle(n, th, alpha);
        CHECK(r.count <= n);
        int inside = 0;
        bool edge = false;
        for (double x : r.roots) {
          const Point p{x, alpha * x};
          if (inner.contains(p)) ++inside;
          else if (t.curves.extent.contains(p)) edge = true;
        }
        if (edge) continue;
        CHECK(traced_line_crossings(t.curves, alpha, -1.0, 0.0) == inside);
        ++lines;
        ++compared;
      }
    }
    CHECK(compared == 20);
  }
}
