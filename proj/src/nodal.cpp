#include "qho/nodal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qho/oscillator.hpp"
#include "qho/roots.hpp"

namespace qho {

namespace {

int find_root(std::vector<int>& parent, int a) {
  while (parent[static_cast<std::size_t>(a)] != a) {
    parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
    a = parent[static_cast<std::size_t>(a)];
  }
  return a;
}

struct Run {
  RunCounts counts;
  DomainCount domains;
  CurveSet curves;
  double spacing = 0.0;
};

Run run_once(const Superposition& s, const Box& box, int resolution, double margin,
             const std::vector<CriticalZero>& zeros) {
  Run r;
  r.counts.resolution = resolution;
  r.counts.margin = margin;
  const SignGrid grid = build_sign_grid(s, box, resolution, zeros);
  r.spacing = grid.spacing();
  r.domains = count_nodal_domains(grid);
  r.counts.domain_count = r.domains.domains;
  try {
    r.curves = trace_nodal_curves(grid, SeparableField::from(s), zeros);
    r.counts.curve_components = static_cast<int>(r.curves.curves.size());
    r.counts.closed_curves = r.curves.closed_count();
    r.counts.unbounded_arcs = r.curves.unbounded_arcs();
  } catch (const TopologyError& e) {
    r.counts.error = e.what();
  }
  return r;
}

}  // namespace

DomainCount count_nodal_domains(const SignGrid& g) {
  const int nx = g.nx;
  const int ny = g.ny;
  std::vector<int> parent(static_cast<std::size_t>(nx) * ny);
  std::iota(parent.begin(), parent.end(), 0);
  auto unite = [&](int a, int b) {
    a = find_root(parent, a);
    b = find_root(parent, b);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  };
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const int s = g.sign(i, j);
      if (s == 0) continue;
      const int k = static_cast<int>(g.index(i, j));
      if (i + 1 < nx && g.sign(i + 1, j) == s) unite(k, k + 1);
      if (j + 1 < ny && g.sign(i, j + 1) == s) unite(k, k + nx);
    }

  DomainCount out;
  std::vector<char> on_boundary(parent.size(), 0);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const std::size_t k = g.index(i, j);
      if (g.signs[k] == 0) continue;
      const int root = find_root(parent, static_cast<int>(k));
      if (root == static_cast<int>(k)) ++out.domains;
      if (i == 0 || j == 0 || i == nx - 1 || j == ny - 1) on_boundary[static_cast<std::size_t>(root)] = 1;
    }
  out.boundary_domains = static_cast<int>(std::count(on_boundary.begin(), on_boundary.end(), 1));

  std::vector<int> ring;
  for (int i = 0; i < nx; ++i) ring.push_back(g.sign(i, 0));
  for (int j = 1; j < ny; ++j) ring.push_back(g.sign(nx - 1, j));
  for (int i = nx - 2; i >= 0; --i) ring.push_back(g.sign(i, ny - 1));
  for (int j = ny - 2; j >= 1; --j) ring.push_back(g.sign(0, j));
  ring.erase(std::remove(ring.begin(), ring.end(), 0), ring.end());
  for (std::size_t k = 0; k < ring.size(); ++k)
    out.boundary_sign_changes += ring[k] != ring[(k + 1) % ring.size()];
  return out;
}

int default_resolution(int n) { return n <= 9 ? 1024 : (1024 * n + 8) / 9; }

std::vector<LineCrossing> NodalTopology::crossings_on(const std::string& line) const {
  std::vector<LineCrossing> out;
  for (const auto& c : crossings)
    if (c.line == line) out.push_back(c);
  return out;
}

std::vector<Point> line_zeros(const SeparableField& field, const Box& box, bool antidiagonal) {
  const double sy = antidiagonal ? -1.0 : 1.0;
  const double lo = antidiagonal ? std::max(box.x_min, -box.y_max) : std::max(box.x_min, box.y_min);
  const double hi = antidiagonal ? std::min(box.x_max, -box.y_min) : std::min(box.x_max, box.y_max);
  if (!(hi > lo)) return {};

  auto on_line = [&](double t) { return field(t, sy * t); };
  auto scale_at = [&](double t) {
    double acc = 0.0;
    for (const auto& term : field.terms())
      acc += std::abs(term.coeff * normalized_hermite(term.deg_x, t) * normalized_hermite(term.deg_y, sy * t));
    return acc;
  };
  bool vanishes = true;
  for (int k = 0; k <= 256 && vanishes; ++k) {
    const double t = lo + (hi - lo) * k / 256.0;
    vanishes = std::abs(on_line(t)) <= 1e-12 * scale_at(t);
  }

  std::vector<double> ts;
  if (vanishes) {
    // normal direction (1, -sy)
    auto normal = [&](double t) {
      const auto grad = field.gradient(t, sy * t);
      return grad[0] - sy * grad[1];
    };
    ts = roots::sign_change_roots(normal, lo, hi, 4096);
  } else {
    ts = roots::sign_change_roots(on_line, lo, hi, 4096);
  }
  std::vector<Point> out;
  for (double t : ts) out.push_back({t, sy * t});
  return out;
}

NodalTopology analyze_topology(const Superposition& s, const TopologyOptions& options) {
  const int n = s.degree();
  NodalTopology t;
  t.n = n;
  t.theta = s.theta();
  t.margin = options.margin;
  t.resolution = options.resolution > 0 ? options.resolution : default_resolution(n);
  t.box = enclosing_box(n, s.theta(), options.margin);

  const CriticalAngleTable table = critical_angles(n);
  const std::vector<CriticalZero> zeros = critical_zeros_at(table, s.theta());
  t.critical_zero_hits = zeros;
  t.double_crossings =
      static_cast<int>(std::count_if(zeros.begin(), zeros.end(), [](const CriticalZero& z) { return z.is_double_crossing(); }));

  Run base = run_once(s, t.box, t.resolution, t.margin, zeros);
  t.domain_count = base.domains.domains;
  t.boundary_sign_changes = base.domains.boundary_sign_changes;
  t.curve_components = base.counts.curve_components;
  t.closed_curves = base.counts.closed_curves;
  t.unbounded_arcs = base.counts.unbounded_arcs;
  t.runs.push_back(base.counts);

  if (base.counts.error.empty()) {
    t.euler_domain_count = base.curves.euler_domain_count();
    t.diagonal_component = std::any_of(base.curves.curves.begin(), base.curves.curves.end(),
                                       [](const NodalCurve& c) { return c.on_diagonal; });
    const SeparableField field = SeparableField::from(s);
    const double near = 2.0 * base.spacing;
    for (int anti = 0; anti < 2; ++anti) {
      for (const Point& p : line_zeros(field, base.curves.extent, anti == 1)) {
        LineCrossing c;
        c.line = anti ? "antidiagonal" : "diagonal";
        c.point = p;
        for (std::size_t k = 0; k < base.curves.curves.size(); ++k) {
          const auto& pts = base.curves.curves[k].points;
          if (std::any_of(pts.begin(), pts.end(), [&](Point q) { return distance(p, q) <= near; }))
            c.curves.push_back(static_cast<int>(k));
        }
        t.crossings.push_back(std::move(c));
      }
    }
  }
  t.curves = std::move(base.curves);

  if (options.check_stability) {
    const Run fine = run_once(s, t.box, 2 * t.resolution, t.margin, zeros);
    const Run wide = run_once(s, enclosing_box(n, s.theta(), 2.0 * t.margin), 2 * t.resolution, 2.0 * t.margin, zeros);
    t.runs.push_back(fine.counts);
    t.runs.push_back(wide.counts);
    t.stable = t.runs[0].same_topology(t.runs[1]) && t.runs[0].same_topology(t.runs[2]);
  } else {
    t.stable = t.runs[0].error.empty();
  }
  return t;
}

}  // namespace qho
