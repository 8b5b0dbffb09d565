#pragma once

#include <cstdint>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "qho/oscillator.hpp"
#include "qho/sign_grid.hpp"

namespace qho {

/// Nodal-domain upper bounds for eigenfunctions with eigenvalue 2(ell+1).
struct CourantBounds {
  int ell = 0;
  long mu_C = 1;  // ell(ell+1)/2 + 1
  long mu_L = 1;  // parity-improved bound
  bool courant_sharp_possible = true;
};

/// Throws std::invalid_argument for ell < 0.
CourantBounds courant_bounds(int ell);

/// Rows `ell,mu_C,mu_L,sharp` for ell = 0..l_max.
void write_courant_csv(std::ostream& out, int l_max);

/// u = sum_j c_j q_{ell-j}(x) q_j(y) (Gaussian factor dropped), an element of
/// the ell-th eigenspace.
struct EigenspaceFunction {
  int ell = 0;
  std::vector<double> coeffs;  // ell + 1 entries

  SeparableField field() const;
  Parity parity() const { return ell % 2 == 0 ? Parity::Even : Parity::Odd; }
  double operator()(double x, double y) const;
};

/// Coefficients uniform on the unit sphere of R^{ell+1}; with `two_term`, only
/// two randomly chosen coefficients are non-zero.
EigenspaceFunction random_eigenspace_function(int ell, std::mt19937_64& rng, bool two_term);

struct DomainSample {
  std::vector<double> coeffs;
  bool two_term = false;
  int domains = 0;           // count on the base box
  int domains_wide = 0;      // count on the doubled box
  double parity_residual = 0.0;
  bool within_bound = true;  // max(domains, domains_wide) <= mu_L
  bool parity_ok = true;     // odd ell: even domain count; residual <= 1e-12
};

struct EmpiricalReport {
  int ell = 0;
  CourantBounds bounds;
  std::uint64_t seed = 0;
  int resolution = 0;
  double half_width = 0.0;
  std::vector<DomainSample> samples;
  std::vector<std::string> violations;

  bool passed() const { return violations.empty(); }
};

inline constexpr std::uint64_t kDefaultSeed = 20240611;

/// Half-width of the square on which eigenspace functions are sampled.
double eigenspace_box_half_width(int ell);

/// Counts nodal domains of `samples` random elements of the ell-th
/// eigenspace (half of them two-term) and checks mu <= mu_L and parity.
/// Requires 0 <= ell <= 6.
EmpiricalReport empirical_domain_bound_check(int ell, int samples, std::uint64_t seed = kDefaultSeed,
                                             int resolution = 512);

}  // namespace qho
