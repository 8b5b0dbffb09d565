#include <CLI11.hpp>
#include <fmt/format.h>

#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qho/courant.hpp"
#include "qho/critical.hpp"
#include "qho/geometry.hpp"
#include "qho/hermite.hpp"
#include "qho/nodal.hpp"
#include "qho/oscillator.hpp"
#include "qho/report.hpp"

namespace {

using namespace qho;

struct ThetaArgs {
  std::optional<double> radians;
  std::optional<std::string> over_pi;

  Angle resolve() const {
    if (radians) return Angle::radians(*radians);
    if (over_pi) return Angle::parse_pi_fraction(*over_pi);
    throw CLI::ValidationError("--theta/--theta-over-pi", "one of --theta or --theta-over-pi is required");
  }
};

void add_theta(CLI::App* cmd, ThetaArgs& args) {
  auto* a = cmd->add_option("--theta", args.radians, "Mixing angle in radians");
  auto* b = cmd->add_option("--theta-over-pi", args.over_pi, "Mixing angle as a multiple of pi, e.g. 3/4 or 0.125");
  a->excludes(b);
  b->excludes(a);
}

void require_theorem_degree(int n) {
  if (n < 3 || n % 2 == 0)
    throw CLI::ValidationError(
        "--n", fmt::format("n={} is outside the theorem scope: the superposition results hold for odd n >= 3", n));
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    write_text_file(path, text);
}

void print_failures(const std::vector<std::string>& failures) {
  for (const auto& f : failures) std::cerr << "FAIL: " << f << "\n";
}

int cmd_hermite(int n, const std::string& out, const std::string& report) {
  std::ostringstream csv;
  write_zero_table_csv(csv, hermite_zeros(n));
  emit(out, csv.str());
  const auto checks = hermite_identity_checks(std::min(n, 100));
  Json j{{"schema", kJsonSchema}, {"n", n}};
  Json arr = Json::array();
  std::vector<std::string> failures;
  for (const auto& c : checks) {
    arr.push_back({{"identity", c.name}, {"max_residual", c.max_residual}, {"tolerance", c.tolerance}, {"passed", c.passed()}});
    std::cerr << fmt::format("{:<42} residual {:.3e} (tol {:.0e}) {}\n", c.name, c.max_residual, c.tolerance,
                             c.passed() ? "ok" : "FAIL");
    if (!c.passed()) failures.push_back(c.name);
  }
  j["checks"] = arr;
  j["failures"] = failures;
  if (!report.empty()) write_text_file(report, dump_json(j));
  return failures.empty() ? 0 : 1;
}

int cmd_critical(int n, const std::string& out, const std::string& json) {
  require_theorem_degree(n);
  const CriticalAngleTable table = critical_angles(n);
  std::ostringstream csv;
  write_critical_table_csv(csv, table);
  emit(out, csv.str());
  if (!json.empty()) write_text_file(json, dump_json(critical_table_json(table)));
  std::cerr << fmt::format("n={} theta_c={:.17g} ({:.17g} pi), {} entries, {} distinct values, {} regular intervals\n", n,
                           table.theta_c, table.theta_c / std::numbers::pi, table.entries.size(),
                           table.distinct_values.size(), table.regular_intervals.size());
  return 0;
}

std::vector<std::string> topology_failures(const NodalTopology& t) {
  std::vector<std::string> f;
  if (!t.stable) f.push_back("topology is not stable under resolution and margin doubling");
  for (const auto& r : t.runs)
    if (!r.error.empty()) f.push_back(fmt::format("tracing failed at N={} margin={}: {}", r.resolution, r.margin, r.error));
  if (t.runs.front().error.empty() && t.euler_domain_count != t.domain_count)
    f.push_back(fmt::format("Euler count {} disagrees with grid count {}", t.euler_domain_count, t.domain_count));
  return f;
}

int cmd_trace(int n, const Angle& theta, const TopologyOptions& opts, const std::string& out, const std::string& svg,
              bool allow_unstable) {
  require_theorem_degree(n);
  const NodalTopology t = analyze_topology(Superposition(n, theta), opts);
  const auto failures = topology_failures(t);
  if (!failures.empty() && !allow_unstable) {
    print_failures(failures);
    for (const auto& r : t.runs)
      std::cerr << fmt::format("  run N={} margin={}: domains={} curves={} closed={} arcs={}\n", r.resolution, r.margin,
                               r.domain_count, r.curve_components, r.closed_curves, r.unbounded_arcs);
    std::cerr << "refusing to report unverified counts; rerun with --allow-unstable to see them\n";
    return 1;
  }
  Json j = topology_json(t);
  const ReducedAngle r = reduce_to_first_octant(t.theta.reduced_mod_pi().first.value());
  if (r.theta > 1e-9) {
    j["barrier"] = barrier_json(barrier_data(n, r.theta, opts.margin));
    j["barrier"]["transposed"] = r.transposed;
  }
  j["failures"] = failures;
  if (!out.empty()) write_text_file(out, dump_json(j));
  if (!svg.empty()) write_topology_svg(svg, t);
  std::cout << fmt::format(
      "n={} theta={} domains={} euler={} curves={} closed={} unbounded_arcs={} double_crossings={} "
      "diagonal_component={} stable={}\n",
      n, t.theta.to_string(), t.domain_count, t.euler_domain_count, t.curve_components, t.closed_curves,
      t.unbounded_arcs, t.double_crossings, t.diagonal_component ? "yes" : "no", t.stable ? "yes" : "no");
  print_failures(failures);
  return failures.empty() ? 0 : 1;
}

std::vector<Angle> parse_theta_list(const std::string& text, bool over_pi) {
  std::vector<Angle> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(over_pi ? Angle::parse_pi_fraction(item) : Angle::radians(std::stod(item)));
  }
  return out;
}

int cmd_sweep(int n, const std::string& thetas, bool over_pi, const TopologyOptions& opts, const std::string& out_dir,
              bool svg_all) {
  require_theorem_degree(n);
  const CriticalAngleTable table = critical_angles(n);
  std::vector<Angle> list = thetas == "auto" ? auto_sweep_angles(table) : parse_theta_list(thetas, over_pi);
  if (list.empty()) throw CLI::ValidationError("--thetas", "empty theta list");

  SweepOptions so;
  so.topology = opts;
  if (!out_dir.empty()) so.svg_dir = (std::filesystem::path(out_dir) / "failures").string();
  const SweepReport report = theorem_sweep(n, list, so);

  std::string summary = "theta,theta_over_pi,critical,interval_lo,interval_hi,domain_count,curve_components,"
                        "closed_curves,unbounded_arcs,double_crossings,stable\n";
  std::cout << fmt::format("{:>22} {:>9} {:>8} {:>7} {:>6} {:>6} {:>5} {:>6} {}\n", "theta", "theta/pi", "critical",
                           "domains", "curves", "closed", "arcs", "cross", "stable");
  for (std::size_t k = 0; k < report.entries.size(); ++k) {
    const auto& e = report.entries[k];
    const auto& t = e.topology;
    summary += fmt::format("{:.17g},{:.17g},{},{},{},{},{},{},{},{},{}\n", e.theta.value(),
                           e.theta.value() / std::numbers::pi, e.critical,
                           e.interval ? fmt::format("{:.17g}", e.interval->lo) : "",
                           e.interval ? fmt::format("{:.17g}", e.interval->hi) : "", t.domain_count,
                           t.curve_components, t.closed_curves, t.unbounded_arcs, t.double_crossings, t.stable);
    std::cout << fmt::format("{:>22.17g} {:>9.5f} {:>8} {:>7} {:>6} {:>6} {:>5} {:>6} {}\n", e.theta.value(),
                             e.theta.value() / std::numbers::pi, e.critical ? "yes" : "", t.domain_count,
                             t.curve_components, t.closed_curves, t.unbounded_arcs, t.double_crossings,
                             t.stable ? "yes" : "NO");
    if (!out_dir.empty()) {
      const auto base = std::filesystem::path(out_dir) / fmt::format("theta_{:03d}", k);
      write_text_file(base.string() + ".json", dump_json(topology_json(t)));
      if (svg_all) write_topology_svg(base.string() + ".svg", t);
    }
  }
  if (!out_dir.empty()) {
    write_text_file((std::filesystem::path(out_dir) / "summary.csv").string(), summary);
    write_text_file((std::filesystem::path(out_dir) / "sweep.json").string(), dump_json(sweep_json(report)));
  }
  print_failures(report.failures);
  return report.passed() ? 0 : 1;
}

int cmd_courant(int l_max, int samples, std::uint64_t seed, int resolution, const std::string& out,
                const std::string& json) {
  std::ostringstream csv;
  write_courant_csv(csv, l_max);
  emit(out, csv.str());
  std::vector<EmpiricalReport> checks;
  std::vector<std::string> failures;
  if (samples > 0) {
    for (int l = 0; l <= std::min(l_max, 6); ++l) {
      checks.push_back(empirical_domain_bound_check(l, samples, seed, resolution));
      const auto& r = checks.back();
      int max_domains = 0;
      for (const auto& s : r.samples) max_domains = std::max(max_domains, std::max(s.domains, s.domains_wide));
      std::cerr << fmt::format("ell={} mu_L={} samples={} max domains={} {}\n", l, r.bounds.mu_L, samples, max_domains,
                               r.passed() ? "ok" : "FAIL");
      failures.insert(failures.end(), r.violations.begin(), r.violations.end());
    }
  }
  if (!json.empty()) write_text_file(json, dump_json(courant_json(l_max, checks)));
  print_failures(failures);
  return failures.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nodal sets of two-term superpositions of 2D harmonic oscillator eigenfunctions"};
  app.set_config("--config", "", "Read options from a key=value config file; command-line flags override");
  app.require_subcommand(1);

  int n = 0;
  std::string out;
  std::string json;
  ThetaArgs theta;
  TopologyOptions topo;
  std::string svg;
  bool allow_unstable = false;
  bool no_stability = false;

  auto* hermite = app.add_subcommand("hermite", "Zeros of H_n as CSV, plus identity checks");
  hermite->add_option("--n", n, "Degree")->required()->check(CLI::Range(1, 2000));
  hermite->add_option("--out", out, "CSV output path (default stdout)");
  hermite->add_option("--json", json, "Identity-check report (JSON)");

  auto* critical = app.add_subcommand("critical", "Critical angle table theta(i,j), theta_c, regular intervals");
  critical->add_option("--n", n, "Odd degree >= 3")->required();
  critical->add_option("--out", out, "CSV output path (default stdout)");
  critical->add_option("--json", json, "JSON output path");

  auto add_grid_flags = [&](CLI::App* cmd) {
    cmd->add_option("--resolution", topo.resolution, "Cells per axis (default 1024 for n <= 9, linear above)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--margin", topo.margin, "Margin factor applied to the barrier box")->check(CLI::PositiveNumber);
    cmd->add_flag("--no-stability", no_stability, "Skip the doubled-resolution and doubled-margin reruns");
  };

  auto* trace = app.add_subcommand("trace", "Full nodal topology for one (n, theta)");
  trace->add_option("--n", n, "Odd degree >= 3")->required();
  add_theta(trace, theta);
  add_grid_flags(trace);
  trace->add_option("--out", out, "Topology JSON output path");
  trace->add_option("--svg", svg, "SVG output path");
  trace->add_flag("--allow-unstable", allow_unstable, "Report counts even when verification fails");

  std::string thetas;
  bool thetas_over_pi = false;
  bool svg_all = false;
  auto* sweep = app.add_subcommand("sweep", "Topology over a list of angles with the theorem assertions");
  sweep->add_option("--n", n, "Odd degree >= 3")->required();
  sweep->add_option("--thetas", thetas, "'auto' or comma-separated angles")->required();
  sweep->add_flag("--over-pi", thetas_over_pi, "Read --thetas as multiples of pi (fractions allowed)");
  add_grid_flags(sweep);
  sweep->add_option("--out", out, "Output directory for per-angle JSON, summary.csv and sweep.json");
  sweep->add_flag("--svg", svg_all, "Also write an SVG per angle into the output directory");

  int l_max = 5;
  int samples = 0;
  std::uint64_t seed = kDefaultSeed;
  int courant_resolution = 512;
  auto* courant = app.add_subcommand("courant", "Courant and parity-improved bounds, optional empirical check");
  courant->add_option("--l-max", l_max, "Largest ell in the table")->check(CLI::NonNegativeNumber);
  courant->add_option("--samples", samples, "Random eigenfunctions per ell (0: table only)")->check(CLI::NonNegativeNumber);
  courant->add_option("--seed", seed, "Random seed");
  courant->add_option("--resolution", courant_resolution, "Cells per axis for domain counting")->check(CLI::Range(16, 8192));
  courant->add_option("--out", out, "CSV output path (default stdout)");
  courant->add_option("--json", json, "JSON report path");

  try {
    app.parse(argc, argv);
    topo.check_stability = !no_stability;
    if (*hermite) return cmd_hermite(n, out, json);
    if (*critical) return cmd_critical(n, out, json);
    if (*trace) return cmd_trace(n, theta.resolve(), topo, out, svg, allow_unstable);
    if (*sweep) return cmd_sweep(n, thetas, thetas_over_pi, topo, out, svg_all);
    if (*courant) return cmd_courant(l_max, samples, seed, courant_resolution, out, json);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const ResolutionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
