#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <numbers>
#include <tuple>

#include "qho/nodal.hpp"
#include "qho/oscillator.hpp"
#include "qho/report.hpp"

namespace qho {

namespace {

constexpr double kSweepCriticalTolerance = 1e-9;
constexpr double kThreeQuarterPi = 0.75 * std::numbers::pi;

bool near_three_quarter(double v) { return std::abs(v - kThreeQuarterPi) <= kSweepCriticalTolerance; }

}  // namespace

std::vector<Angle> auto_sweep_angles(const CriticalAngleTable& table) {
  std::vector<Angle> out;
  for (const auto& iv : table.regular_intervals) out.push_back(Angle::radians(iv.midpoint()));
  for (double v : table.distinct_values)
    out.push_back(std::abs(v - kThreeQuarterPi) <= kCriticalAngleTolerance ? Angle::pi_fraction(3, 4)
                                                                           : Angle::radians(v));
  std::sort(out.begin(), out.end(), [](const Angle& a, const Angle& b) { return a.value() < b.value(); });
  return out;
}

SweepReport theorem_sweep(int n, const std::vector<Angle>& thetas, const SweepOptions& options) {
  if (thetas.empty()) throw std::invalid_argument("theorem_sweep: empty theta list");
  SweepReport report;
  report.n = n;
  report.table = critical_angles(n);

  using Summary = std::tuple<int, int, int, int>;
  std::map<std::pair<double, double>, std::pair<Summary, double>> per_interval;

  for (std::size_t idx = 0; idx < thetas.size(); ++idx) {
    SweepEntry e;
    e.theta = thetas[idx];
    const double th = e.theta.value();
    if (!(th > 0.0 && th < std::numbers::pi))
      throw std::invalid_argument(fmt::format("theorem_sweep: theta={} outside (0, pi)", th));
    e.critical = std::any_of(report.table.distinct_values.begin(), report.table.distinct_values.end(),
                             [&](double v) { return std::abs(v - th) <= kSweepCriticalTolerance; });
    if (!e.critical) e.interval = report.table.interval_containing(th);
    e.topology = analyze_topology(Superposition(n, e.theta), options.topology);
    const NodalTopology& t = e.topology;

    if (!t.stable) {
      std::string why;
      for (const auto& r : t.runs)
        why += fmt::format(" [N={} margin={}: domains={} curves={} closed={} arcs={}{}]", r.resolution, r.margin,
                           r.domain_count, r.curve_components, r.closed_curves, r.unbounded_arcs,
                           r.error.empty() ? "" : " error=" + r.error);
      e.failures.push_back("topology not stable under resolution/margin doubling:" + why);
    }
    auto expect_two_domains = [&](const std::string& label) {
      if (t.domain_count != 2 || !t.is_simple_connected_curve() || t.unbounded_arcs != 2)
        e.failures.push_back(fmt::format("{}: expected 2 domains, one simple curve, 2 unbounded arcs; got "
                                         "domains={} curves={} double_crossings={} arcs={}",
                                         label, t.domain_count, t.curve_components, t.double_crossings,
                                         t.unbounded_arcs));
    };
    if (!e.critical && th < report.table.theta_c) expect_two_domains("theta in (0, theta_c)");
    if (e.interval && (near_three_quarter(e.interval->lo) || near_three_quarter(e.interval->hi)))
      expect_two_domains("theta in a regular interval adjacent to 3pi/4");

    if (e.interval && t.stable) {
      const Summary s{t.domain_count, t.curve_components, t.closed_curves, t.unbounded_arcs};
      const auto key = std::make_pair(e.interval->lo, e.interval->hi);
      auto it = per_interval.find(key);
      if (it == per_interval.end()) {
        per_interval.emplace(key, std::make_pair(s, th));
      } else if (it->second.first != s) {
        e.failures.push_back(fmt::format("topology differs from theta={:.17g} in the same regular interval ({:.17g}, {:.17g})",
                                         it->second.second, key.first, key.second));
      }
    }

    if (!e.failures.empty()) {
      for (const auto& f : e.failures) report.failures.push_back(fmt::format("theta={}: {}", e.theta.to_string(), f));
      if (!options.svg_dir.empty()) {
        std::filesystem::create_directories(options.svg_dir);
        write_topology_svg((std::filesystem::path(options.svg_dir) / fmt::format("sweep_n{}_{:03d}.svg", n, idx)).string(),
                           t);
      }
    }
    report.entries.push_back(std::move(e));
  }
  return report;
}

}  // namespace qho
