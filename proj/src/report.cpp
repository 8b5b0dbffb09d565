#include "qho/report.hpp"

#include <fmt/format.h>

#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace qho {

namespace {

Json box_json(const Box& b) { return {{"x_min", b.x_min}, {"x_max", b.x_max}, {"y_min", b.y_min}, {"y_max", b.y_max}}; }

Json interval_json(const ThetaInterval& iv) { return {{"lo", iv.lo}, {"hi", iv.hi}}; }

Json run_json(const RunCounts& r) {
  Json j{{"resolution", r.resolution},
         {"margin", r.margin},
         {"domain_count", r.domain_count},
         {"curve_components", r.curve_components},
         {"closed_curves", r.closed_curves},
         {"unbounded_arcs", r.unbounded_arcs}};
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

Json topology_body(const NodalTopology& t) {
  Json j;
  j["n"] = t.n;
  j["theta"] = angle_json(t.theta);
  j["box"] = box_json(t.box);
  j["resolution"] = t.resolution;
  j["margin"] = t.margin;
  j["domain_count"] = t.domain_count;
  j["euler_domain_count"] = t.euler_domain_count;
  j["curve_components"] = t.curve_components;
  j["closed_curves"] = t.closed_curves;
  j["unbounded_arcs"] = t.unbounded_arcs;
  j["boundary_sign_changes"] = t.boundary_sign_changes;
  j["double_crossings"] = t.double_crossings;
  j["diagonal_component"] = t.diagonal_component;
  Json zeros = Json::array();
  for (const auto& z : t.critical_zero_hits)
    zeros.push_back({{"i", z.i}, {"j", z.j}, {"x", z.location.x}, {"y", z.location.y},
                     {"double_crossing", z.is_double_crossing()}});
  j["critical_zeros"] = zeros;
  Json crossings = Json::array();
  for (const auto& c : t.crossings) crossings.push_back({{"line", c.line}, {"x", c.point.x}, {"y", c.point.y}, {"curves", c.curves}});
  j["crossings"] = crossings;
  Json runs = Json::array();
  for (const auto& r : t.runs) runs.push_back(run_json(r));
  j["stability"] = {{"stable", t.stable}, {"runs", runs}};
  return j;
}

struct Canvas {
  Box box;
  double scale = 1.0;
  double cx = 0.0;
  double cy = 0.0;
  static constexpr double kSize = 800.0;
  static constexpr double kPad = 20.0;

  explicit Canvas(const Box& b) : box(b) {
    scale = (kSize - 2 * kPad) / std::max(b.width(), b.height());
    cx = 0.5 * (b.x_min + b.x_max);
    cy = 0.5 * (b.y_min + b.y_max);
  }
  double X(double x) const { return 0.5 * kSize + (x - cx) * scale; }
  double Y(double y) const { return 0.5 * kSize - (y - cy) * scale; }
};

std::string line(const Canvas& c, double x0, double y0, double x1, double y1, const char* style) {
  return fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" {}/>\n", c.X(x0), c.Y(y0), c.X(x1),
                     c.Y(y1), style);
}

}  // namespace

Json angle_json(const Angle& theta) {
  Json j{{"radians", theta.value()}};
  if (theta.fraction()) j["over_pi"] = fmt::format("{}/{}", theta.fraction()->first, theta.fraction()->second);
  return j;
}

Json zero_table_json(const ZeroTable& table) {
  return {{"schema", kJsonSchema}, {"n", table.degree}, {"zeros", table.zeros}};
}

Json critical_table_json(const CriticalAngleTable& table) {
  Json entries = Json::array();
  for (const auto& e : table.entries) entries.push_back({{"i", e.i}, {"j", e.j}, {"theta", e.theta}});
  Json intervals = Json::array();
  for (const auto& iv : table.regular_intervals) intervals.push_back(interval_json(iv));
  return {{"schema", kJsonSchema},
          {"n", table.n},
          {"derivative_zeros", table.derivative_zeros.zeros},
          {"theta_c", table.theta_c},
          {"distinct_values", table.distinct_values},
          {"entries", entries},
          {"regular_intervals", intervals}};
}

Json barrier_json(const BarrierData& b) {
  return {{"n", b.n},
          {"theta", b.theta},
          {"t_left", b.t_left},
          {"t_top", b.t_top},
          {"margin", b.margin},
          {"core_box", box_json(b.core_box())},
          {"box", box_json(b.box())}};
}

Json topology_json(const NodalTopology& t) {
  Json j{{"schema", kJsonSchema}};
  j.update(topology_body(t));
  return j;
}

Json sweep_json(const SweepReport& report) {
  Json entries = Json::array();
  for (const auto& e : report.entries) {
    Json j{{"theta", angle_json(e.theta)}, {"critical", e.critical}};
    j["interval"] = e.interval ? interval_json(*e.interval) : Json(nullptr);
    j["topology"] = topology_body(e.topology);
    j["failures"] = e.failures;
    entries.push_back(j);
  }
  return {{"schema", kJsonSchema},
          {"n", report.n},
          {"theta_c", report.table.theta_c},
          {"passed", report.passed()},
          {"failures", report.failures},
          {"entries", entries}};
}

Json courant_json(int l_max, const std::vector<EmpiricalReport>& checks) {
  Json table = Json::array();
  for (int l = 0; l <= l_max; ++l) {
    const CourantBounds b = courant_bounds(l);
    table.push_back({{"ell", l}, {"mu_C", b.mu_C}, {"mu_L", b.mu_L}, {"sharp", b.courant_sharp_possible}});
  }
  Json empirical = Json::array();
  bool passed = true;
  for (const auto& r : checks) {
    Json samples = Json::array();
    for (const auto& s : r.samples)
      samples.push_back({{"coefficients", s.coeffs},
                         {"two_term", s.two_term},
                         {"domains", s.domains},
                         {"domains_wide_box", s.domains_wide},
                         {"parity_residual", s.parity_residual},
                         {"within_bound", s.within_bound},
                         {"parity_ok", s.parity_ok}});
    empirical.push_back({{"ell", r.ell},
                         {"mu_L", r.bounds.mu_L},
                         {"seed", r.seed},
                         {"resolution", r.resolution},
                         {"half_width", r.half_width},
                         {"passed", r.passed()},
                         {"violations", r.violations},
                         {"samples", samples}});
    passed = passed && r.passed();
  }
  return {{"schema", kJsonSchema}, {"passed", passed}, {"bounds", table}, {"empirical", empirical}};
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

std::string topology_svg(const NodalTopology& t) {
  const Box& b = t.box;
  const Canvas c(b);
  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n";
  s += "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
  s += fmt::format("<!-- n={} theta={} domains={} -->\n", t.n, t.theta.to_string(), t.domain_count);
  s += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"none\" stroke=\"#888\"/>\n",
                   c.X(b.x_min), c.Y(b.y_max), b.width() * c.scale, b.height() * c.scale);

  const ZeroTable zn = hermite_zeros(t.n);
  const ZeroTable zd = hermite_zeros(t.n - 1);
  s += "<g id=\"zeros-n\">\n";
  for (double z : zn.zeros) {
    s += line(c, z, b.y_min, z, b.y_max, "stroke=\"#bbb\" stroke-width=\"1\"");
    s += line(c, b.x_min, z, b.x_max, z, "stroke=\"#bbb\" stroke-width=\"1\"");
  }
  s += "</g>\n<g id=\"zeros-n-1\">\n";
  for (double z : zd.zeros) {
    s += line(c, z, b.y_min, z, b.y_max, "stroke=\"#4a7fd6\" stroke-width=\"0.6\"");
    s += line(c, b.x_min, z, b.x_max, z, "stroke=\"#4a7fd6\" stroke-width=\"0.6\"");
  }
  s += "</g>\n<g id=\"guides\">\n";
  const double d0 = std::max(b.x_min, b.y_min);
  const double d1 = std::min(b.x_max, b.y_max);
  s += line(c, d0, d0, d1, d1, "stroke=\"#666\" stroke-dasharray=\"6 4\"");
  const double a0 = std::max(b.x_min, -b.y_max);
  const double a1 = std::min(b.x_max, -b.y_min);
  s += line(c, a0, -a0, a1, -a1, "stroke=\"#666\" stroke-dasharray=\"6 4\"");
  s += "</g>\n<g id=\"nodal\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\">\n";
  for (const auto& curve : t.curves.curves) {
    if (curve.points.empty()) continue;
    std::string d;
    double last_x = 1e300;
    double last_y = 1e300;
    for (std::size_t k = 0; k < curve.points.size(); ++k) {
      const double X = c.X(curve.points[k].x);
      const double Y = c.Y(curve.points[k].y);
      const bool end = k + 1 == curve.points.size();
      if (k > 0 && !end && std::abs(X - last_x) < 0.5 && std::abs(Y - last_y) < 0.5) continue;
      d += fmt::format("{}{:.2f},{:.2f}", k == 0 ? "M" : " L", X, Y);
      last_x = X;
      last_y = Y;
    }
    if (curve.closed) d += " Z";
    s += fmt::format("<path d=\"{}\"/>\n", d);
  }
  s += "</g>\n<g id=\"lattice\" fill=\"#444\">\n";
  for (double x : zn.zeros)
    for (double y : zn.zeros) s += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"2\"/>\n", c.X(x), c.Y(y));
  s += "</g>\n<g id=\"critical\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.5\">\n";
  for (const auto& z : t.critical_zero_hits)
    s += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"6\"/>\n", c.X(z.location.x), c.Y(z.location.y));
  s += "</g>\n</svg>\n";
  return s;
}

void write_text_file(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

void write_topology_svg(const std::string& path, const NodalTopology& topology) {
  write_text_file(path, topology_svg(topology));
}

}  // namespace qho
