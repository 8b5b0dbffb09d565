#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "qho/types.hpp"

namespace qho {

class Superposition;
struct CriticalZero;

/// One term coeff * q_{deg_x}(x) * q_{deg_y}(y) with q_d = H_d / sqrt(2^d d!).
struct SeparableTerm {
  double coeff = 0.0;
  int deg_x = 0;
  int deg_y = 0;
};

/// Sum of separable Hermite terms: the Gaussian-free part of any element of
/// an oscillator eigenspace written in the product basis.
class SeparableField {
 public:
  SeparableField() = default;
  explicit SeparableField(std::vector<SeparableTerm> terms);
  static SeparableField from(const Superposition& s);

  double operator()(double x, double y) const;
  std::array<double, 2> gradient(double x, double y) const;

  const std::vector<SeparableTerm>& terms() const { return terms_; }
  int max_degree() const;

 private:
  std::vector<SeparableTerm> terms_;
};

/// Disk of samples whose sign is left undecided (0): a neighbourhood of a
/// critical zero where the double crossing is resolved explicitly.
struct Exclusion {
  Point center;
  double radius = 0.0;
};

/// Signs of a field at the centres of an nx x ny cell partition of a box.
///
/// Sample centres are shifted by an irrational fraction of a cell, different
/// in x and y, so no centre lies on the diagonal or the antidiagonal of a
/// box symmetric about the origin.
struct SignGrid {
  Box box;
  int nx = 0;
  int ny = 0;
  double hx = 0.0;
  double hy = 0.0;
  double jitter_x = 0.0;
  double jitter_y = 0.0;
  std::vector<double> values;       // row-major, index j * nx + i
  std::vector<std::int8_t> signs;   // +1 / -1, 0 inside exclusions
  std::vector<std::size_t> refined_cells;
  std::vector<Exclusion> exclusions;

  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }
  Point center(int i, int j) const {
    return {box.x_min + (i + 0.5) * hx + jitter_x, box.y_min + (j + 0.5) * hy + jitter_y};
  }
  std::int8_t sign(int i, int j) const { return signs[index(i, j)]; }
  double value(int i, int j) const { return values[index(i, j)]; }
  double spacing() const { return std::max(hx, hy); }
};

class ResolutionError : public std::invalid_argument {
 public:
  ResolutionError(const std::string& what, int required) : std::invalid_argument(what), required_(required) {}
  int required_resolution() const { return required_; }

 private:
  int required_;
};

/// Parallel grid evaluation: per-axis tables of q_d, then an OpenMP loop
/// over rows.
SignGrid build_sign_grid(const SeparableField& field, const Box& box, int nx, int ny,
                         std::span<const Exclusion> exclusions = {});

/// Serial reference: direct pointwise evaluation of the field.  Produces the
/// same values bit for bit.
SignGrid build_sign_grid_serial(const SeparableField& field, const Box& box, int nx, int ny,
                                std::span<const Exclusion> exclusions = {});

/// Grid for Phi^theta_n.  Enforces spacing <= (min gap of H_n zeros)/4 and
/// excludes a disk around each critical zero, sized from its Hessian.
SignGrid build_sign_grid(const Superposition& s, const Box& box, int resolution,
                         std::span<const CriticalZero> critical_zeros = {});

/// Disk radius that keeps every sector of the double crossing at least 3
/// cells wide on the disk boundary, capped at `cap`.
double exclusion_radius(const CriticalZero& z, double spacing, double cap);

/// Smallest resolution N (cells per axis) meeting the spacing invariant for
/// degree-n zeros on `box`.
int minimum_resolution(int n, const Box& box);

}  // namespace qho
