#include "qho/courant.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qho/nodal.hpp"

namespace qho {

CourantBounds courant_bounds(int ell) {
  if (ell < 0) throw std::invalid_argument(fmt::format("courant_bounds: ell={} must be >= 0", ell));
  CourantBounds b;
  b.ell = ell;
  const long l = ell;
  b.mu_C = l * (l + 1) / 2 + 1;
  const long r = l / 2;
  b.mu_L = (l % 2 == 0) ? 2 * (r * r + 1) : 2 * r * (r + 1) + 2;
  b.courant_sharp_possible = ell <= 2;
  return b;
}

void write_courant_csv(std::ostream& out, int l_max) {
  if (l_max < 0) throw std::invalid_argument("write_courant_csv: l_max must be >= 0");
  out << "ell,mu_C,mu_L,sharp\n";
  for (int l = 0; l <= l_max; ++l) {
    const CourantBounds b = courant_bounds(l);
    out << fmt::format("{},{},{},{}\n", l, b.mu_C, b.mu_L, b.courant_sharp_possible ? "true" : "false");
  }
}

SeparableField EigenspaceFunction::field() const {
  std::vector<SeparableTerm> terms;
  for (int j = 0; j <= ell; ++j)
    if (coeffs[static_cast<std::size_t>(j)] != 0.0) terms.push_back({coeffs[static_cast<std::size_t>(j)], ell - j, j});
  return SeparableField(std::move(terms));
}

double EigenspaceFunction::operator()(double x, double y) const { return field()(x, y); }

EigenspaceFunction random_eigenspace_function(int ell, std::mt19937_64& rng, bool two_term) {
  std::normal_distribution<double> normal;
  EigenspaceFunction u;
  u.ell = ell;
  u.coeffs.assign(static_cast<std::size_t>(ell) + 1, 0.0);
  if (two_term && ell >= 1) {
    std::uniform_int_distribution<int> pick(0, ell);
    const int a = pick(rng);
    int b = pick(rng);
    while (b == a) b = pick(rng);
    u.coeffs[static_cast<std::size_t>(a)] = normal(rng);
    u.coeffs[static_cast<std::size_t>(b)] = normal(rng);
  } else {
    for (double& c : u.coeffs) c = normal(rng);
  }
  double norm = 0.0;
  for (double c : u.coeffs) norm += c * c;
  norm = std::sqrt(norm);
  for (double& c : u.coeffs) c /= norm;
  return u;
}

double eigenspace_box_half_width(int ell) { return 2.5 * std::sqrt(2.0 * ell + 1.0) + 1.0; }

EmpiricalReport empirical_domain_bound_check(int ell, int samples, std::uint64_t seed, int resolution) {
  if (ell < 0 || ell > 6) throw std::invalid_argument(fmt::format("empirical check needs 0 <= ell <= 6, got {}", ell));
  if (samples < 0) throw std::invalid_argument("empirical check: samples must be >= 0");
  EmpiricalReport report;
  report.ell = ell;
  report.bounds = courant_bounds(ell);
  report.seed = seed;
  report.resolution = resolution;
  report.half_width = eigenspace_box_half_width(ell);

  std::mt19937_64 rng(seed);
  std::vector<EigenspaceFunction> funcs;
  std::vector<bool> two_term;
  for (int s = 0; s < samples; ++s) {
    const bool two = s % 2 == 1;
    funcs.push_back(random_eigenspace_function(ell, rng, two));
    two_term.push_back(two);
  }
  std::vector<std::pair<double, double>> probes;
  std::uniform_real_distribution<double> coord(-report.half_width, report.half_width);
  for (int k = 0; k < 16; ++k) probes.emplace_back(coord(rng), coord(rng));

  report.samples.resize(static_cast<std::size_t>(samples));
  const Box box = Box::square(report.half_width);
#pragma omp parallel for schedule(dynamic)
  for (int s = 0; s < samples; ++s) {
    const EigenspaceFunction& u = funcs[static_cast<std::size_t>(s)];
    const SeparableField f = u.field();
    DomainSample& out = report.samples[static_cast<std::size_t>(s)];
    out.coeffs = u.coeffs;
    out.two_term = two_term[static_cast<std::size_t>(s)];
    out.domains = count_nodal_domains(build_sign_grid(f, box, resolution, resolution)).domains;
    out.domains_wide = count_nodal_domains(build_sign_grid(f, box.scaled(2.0), 2 * resolution, 2 * resolution)).domains;
    const double sign = ell % 2 == 0 ? 1.0 : -1.0;
    for (const auto& [x, y] : probes) {
      const double a = f(x, y);
      const double b = f(-x, -y);
      const double scale = std::max(std::abs(a), 1e-300);
      out.parity_residual = std::max(out.parity_residual, std::abs(b - sign * a) / scale);
    }
    out.within_bound = std::max(out.domains, out.domains_wide) <= report.bounds.mu_L;
    out.parity_ok = out.parity_residual <= 1e-12 && (ell % 2 == 0 || out.domains % 2 == 0);
  }

  for (int s = 0; s < samples; ++s) {
    const DomainSample& d = report.samples[static_cast<std::size_t>(s)];
    const std::string coeffs = fmt::format("{:.17g}", fmt::join(d.coeffs, ","));
    if (!d.within_bound)
      report.violations.push_back(fmt::format("ell={} sample {}: {} domains (wide box {}) exceeds mu_L={} for c=[{}]",
                                              ell, s, d.domains, d.domains_wide, report.bounds.mu_L, coeffs));
    if (!d.parity_ok)
      report.violations.push_back(fmt::format("ell={} sample {}: parity check failed (residual {:.3g}, {} domains) for c=[{}]",
                                              ell, s, d.parity_residual, d.domains, coeffs));
  }
  return report;
}

}  // namespace qho
