#include "qho/sign_grid.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qho/critical.hpp"
#include "qho/hermite.hpp"
#include "qho/oscillator.hpp"

namespace qho {

namespace {

constexpr double kJitterX = (std::numbers::sqrt2 - 1.0) / 4.0;
constexpr double kJitterY = (std::numbers::sqrt3 - 1.0) / 8.0;

SignGrid empty_grid(const Box& box, int nx, int ny) {
  if (nx < 2 || ny < 2) throw std::invalid_argument("grid needs at least 2x2 cells");
  SignGrid g;
  g.box = box;
  g.nx = nx;
  g.ny = ny;
  g.hx = box.width() / nx;
  g.hy = box.height() / ny;
  g.jitter_x = kJitterX * g.hx;
  g.jitter_y = kJitterY * g.hy;
  const std::size_t count = static_cast<std::size_t>(nx) * ny;
  g.values.assign(count, 0.0);
  g.signs.assign(count, 0);
  return g;
}

// Signs from values, then clear the exclusion disks.
void finish(SignGrid& g, std::span<const Exclusion> exclusions) {
  for (std::size_t k = 0; k < g.values.size(); ++k) g.signs[k] = g.values[k] < 0.0 ? -1 : 1;
  for (const auto& ex : exclusions) {
    const int i0 = std::max(0, static_cast<int>(std::floor((ex.center.x - ex.radius - g.box.x_min) / g.hx)) - 1);
    const int i1 = std::min(g.nx - 1, static_cast<int>(std::ceil((ex.center.x + ex.radius - g.box.x_min) / g.hx)) + 1);
    const int j0 = std::max(0, static_cast<int>(std::floor((ex.center.y - ex.radius - g.box.y_min) / g.hy)) - 1);
    const int j1 = std::min(g.ny - 1, static_cast<int>(std::ceil((ex.center.y + ex.radius - g.box.y_min) / g.hy)) + 1);
    for (int j = j0; j <= j1; ++j)
      for (int i = i0; i <= i1; ++i)
        if (distance(g.center(i, j), ex.center) <= ex.radius) {
          const std::size_t k = g.index(i, j);
          if (g.signs[k] != 0) g.refined_cells.push_back(k);
          g.signs[k] = 0;
        }
  }
  std::sort(g.refined_cells.begin(), g.refined_cells.end());
  g.exclusions.assign(exclusions.begin(), exclusions.end());
}

}  // namespace

SeparableField::SeparableField(std::vector<SeparableTerm> terms) : terms_(std::move(terms)) {}

SeparableField SeparableField::from(const Superposition& s) {
  const int n = s.degree();
  return SeparableField({{s.cos_coeff(), n, 0}, {s.sin_coeff(), 0, n}});
}

double SeparableField::operator()(double x, double y) const {
  double acc = 0.0;
  for (const auto& t : terms_) acc += t.coeff * normalized_hermite(t.deg_x, x) * normalized_hermite(t.deg_y, y);
  return acc;
}

std::array<double, 2> SeparableField::gradient(double x, double y) const {
  auto slope = [](int d, double t) { return d == 0 ? 0.0 : std::sqrt(2.0 * d) * normalized_hermite(d - 1, t); };
  std::array<double, 2> g{0.0, 0.0};
  for (const auto& t : terms_) {
    g[0] += t.coeff * slope(t.deg_x, x) * normalized_hermite(t.deg_y, y);
    g[1] += t.coeff * normalized_hermite(t.deg_x, x) * slope(t.deg_y, y);
  }
  return g;
}

int SeparableField::max_degree() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max({d, t.deg_x, t.deg_y});
  return d;
}

SignGrid build_sign_grid_serial(const SeparableField& field, const Box& box, int nx, int ny,
                                std::span<const Exclusion> exclusions) {
  SignGrid g = empty_grid(box, nx, ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const Point p = g.center(i, j);
      g.values[g.index(i, j)] = field(p.x, p.y);
    }
  finish(g, exclusions);
  return g;
}

SignGrid build_sign_grid(const SeparableField& field, const Box& box, int nx, int ny,
                         std::span<const Exclusion> exclusions) {
  SignGrid g = empty_grid(box, nx, ny);
  const auto& terms = field.terms();
  const std::size_t nt = terms.size();

  // tx[k * nx + i] = q_{deg_x(k)}(x_i), ty likewise.
  std::vector<double> tx(nt * nx);
  std::vector<double> ty(nt * ny);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < nx; ++i) {
    const double x = g.center(i, 0).x;
    for (std::size_t k = 0; k < nt; ++k) tx[k * nx + i] = normalized_hermite(terms[k].deg_x, x);
  }
#pragma omp parallel for schedule(static)
  for (int j = 0; j < ny; ++j) {
    const double y = g.center(0, j).y;
    for (std::size_t k = 0; k < nt; ++k) ty[k * ny + j] = normalized_hermite(terms[k].deg_y, y);
  }

#pragma omp parallel for schedule(static)
  for (int j = 0; j < ny; ++j) {
    double* row = g.values.data() + static_cast<std::size_t>(j) * nx;
    for (int i = 0; i < nx; ++i) {
      double acc = 0.0;
      for (std::size_t k = 0; k < nt; ++k) acc += terms[k].coeff * tx[k * nx + i] * ty[k * ny + j];
      row[i] = acc;
    }
  }
  finish(g, exclusions);
  return g;
}

double exclusion_radius(const CriticalZero& z, double spacing, double cap) {
  const double phi = std::atan(std::sqrt(std::abs(z.hxx / z.hyy)));
  const double beta = std::min(phi, 0.5 * std::numbers::pi - phi);
  const double r = std::max(2.5 * spacing, 1.5 * spacing / std::sin(beta));
  return std::min(r, cap);
}

int minimum_resolution(int n, const Box& box) {
  const double gap = n >= 2 ? hermite_zeros(n).min_gap() : box.width();
  const double extent = std::max(box.width(), box.height());
  return static_cast<int>(std::ceil(4.0 * extent / gap));
}

SignGrid build_sign_grid(const Superposition& s, const Box& box, int resolution,
                         std::span<const CriticalZero> critical_zeros) {
  const int n = s.degree();
  const int required = minimum_resolution(n, box);
  if (resolution < required)
    throw ResolutionError(
        fmt::format("resolution {} too coarse: spacing must be <= 1/4 of the smallest gap between zeros "
                    "of H_{}; need at least {}",
                    resolution, n, required),
        required);

  const double spacing = std::max(box.width(), box.height()) / resolution;
  std::vector<Exclusion> exclusions;
  if (!critical_zeros.empty()) {
    double gap = hermite_zeros(n).min_gap();
    if (n - 1 >= 2) gap = std::min(gap, hermite_zeros(n - 1).min_gap());
    for (const auto& z : critical_zeros)
      exclusions.push_back({z.location, exclusion_radius(z, spacing, 0.25 * gap)});
  }
  return build_sign_grid(SeparableField::from(s), box, resolution, resolution, exclusions);
}

}  // namespace qho
