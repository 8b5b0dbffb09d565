#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qho/angle.hpp"
#include "qho/critical.hpp"
#include "qho/geometry.hpp"
#include "qho/sign_grid.hpp"
#include "qho/types.hpp"

namespace qho {

class Superposition;

/// Raised when traced polylines cannot be closed into curves (an open end
/// away from the boundary, or a double crossing without four branches).
/// Indicates that the grid does not resolve the nodal set.
class TopologyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DomainCount {
  int domains = 0;
  int boundary_domains = 0;
  /// Sign changes met walking once around the outermost ring of samples.
  int boundary_sign_changes = 0;
};

/// Connected components of constant sign, 4-adjacency, samples with sign 0
/// ignored.  Components touching the boundary count once each.
DomainCount count_nodal_domains(const SignGrid& grid);

/// One nodal curve assembled from marching-squares chains.  Chains meeting
/// at a double crossing continue straight through it.
struct NodalCurve {
  std::vector<Point> points;
  bool closed = false;
  /// Indices into CurveSet::vertices, in visiting order.
  std::vector<int> vertex_visits;
  bool on_diagonal = false;
};

struct CurveSet {
  std::vector<NodalCurve> curves;
  std::vector<Point> vertices;  // double crossings used for splicing
  Box extent;                   // the box spanned by the sample centres

  int closed_count() const;
  int open_count() const;
  /// Open curve ends on the boundary, i.e. arcs escaping to infinity.
  int unbounded_arcs() const { return 2 * open_count(); }
  /// Domain count from Euler's formula on the sphere, with all unbounded
  /// ends meeting at infinity: F = E - V + C + 1.
  int euler_domain_count() const;
};

/// Marching squares on the sample lattice, linked into curves.  Ambiguous
/// cells away from critical zeros are resolved by the field value at the
/// cell midpoint.  `critical_zeros` must match the exclusions the grid was
/// built with.
CurveSet trace_nodal_curves(const SignGrid& grid, const SeparableField& field,
                            const std::vector<CriticalZero>& critical_zeros);

/// Number of times the traced curves cross the line a*x + b*y = c.
int traced_line_crossings(const CurveSet& curves, double a, double b, double c);

struct LineCrossing {
  std::string line;  // "diagonal" or "antidiagonal"
  Point point;
  std::vector<int> curves;  // traced curves passing within two cells
};

struct RunCounts {
  int resolution = 0;
  double margin = 0.0;
  int domain_count = 0;
  int curve_components = 0;
  int closed_curves = 0;
  int unbounded_arcs = 0;
  std::string error;  // non-empty when tracing failed

  bool same_topology(const RunCounts& o) const {
    return error.empty() && o.error.empty() && domain_count == o.domain_count &&
           curve_components == o.curve_components && closed_curves == o.closed_curves &&
           unbounded_arcs == o.unbounded_arcs;
  }
};

struct NodalTopology {
  int n = 0;
  Angle theta;
  Box box;
  int resolution = 0;
  double margin = kDefaultMargin;

  int domain_count = 0;
  int euler_domain_count = 0;
  int curve_components = 0;
  int closed_curves = 0;
  int unbounded_arcs = 0;
  int boundary_sign_changes = 0;
  int double_crossings = 0;
  bool diagonal_component = false;
  std::vector<LineCrossing> crossings;
  std::vector<CriticalZero> critical_zero_hits;
  std::vector<RunCounts> runs;
  bool stable = false;

  CurveSet curves;

  std::vector<LineCrossing> crossings_on(const std::string& line) const;
  /// Connected simple curve: one component, no double crossings.
  bool is_simple_connected_curve() const { return curve_components == 1 && double_crossings == 0; }
};

struct TopologyOptions {
  int resolution = 0;  // 0: default (1024 for n <= 9, linear above)
  double margin = kDefaultMargin;
  bool check_stability = true;
};

int default_resolution(int n);

/// Full pipeline for one (n, theta): box, grid, domains, curves, crossings,
/// and the stability reruns at doubled resolution and doubled margin.
NodalTopology analyze_topology(const Superposition& s, const TopologyOptions& options = {});

/// Distinct zeros along x = y (or x = -y) inside the box, refined by
/// bisection.  Where the field vanishes identically on the line, zeros of
/// the normal derivative are returned instead (crossings of the other
/// branches with a nodal line).
std::vector<Point> line_zeros(const SeparableField& field, const Box& box, bool antidiagonal);

struct LineOracleResult {
  int count = 0;
  std::vector<double> roots;  // x coordinates, ascending
};

/// Real zeros of x -> cos(theta) H_n(x) + sin(theta) H_n(alpha x), a
/// polynomial of degree <= n, found by isolating roots between the critical
/// points of successive derivatives (monomial form, independent of the grid).
/// Throws std::invalid_argument when theta = 3pi/4 and alpha = 1 (the
/// polynomial vanishes identically).
LineOracleResult line_intersection_oracle(int n, double theta, double alpha);

struct SweepEntry {
  Angle theta;
  bool critical = false;
  std::optional<ThetaInterval> interval;
  NodalTopology topology;
  std::vector<std::string> failures;
};

struct SweepReport {
  int n = 0;
  CriticalAngleTable table;
  std::vector<SweepEntry> entries;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

struct SweepOptions {
  TopologyOptions topology;
  std::string svg_dir;  // when set, SVGs of failing angles are written here
};

/// Topology at each theta, with the two-domain assertions for angles in
/// (0, theta_c) and in the regular intervals adjacent to 3pi/4, and
/// constancy of the topology within each regular interval.
SweepReport theorem_sweep(int n, const std::vector<Angle>& thetas, const SweepOptions& options = {});

/// Midpoints of every regular interval plus every distinct critical value.
std::vector<Angle> auto_sweep_angles(const CriticalAngleTable& table);

}  // namespace qho
