#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qho/oscillator.hpp"
#include "qho/report.hpp"

using namespace qho;

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

NodalTopology small_three_quarter() {
  TopologyOptions o;
  o.resolution = 128;
  o.check_stability = false;
  return analyze_topology(Superposition(3, Angle::pi_fraction(3, 4)), o);
}

}  // namespace

TEST_SUITE("report") {
  TEST_CASE("svg matches the golden file") {
    const std::string svg = topology_svg(small_three_quarter());
    const std::filesystem::path golden = std::filesystem::path(QHO_GOLDEN_DIR) / "trace_n3_3pi4_r128.svg";
    if (std::getenv("QHO_UPDATE_GOLDEN")) write_text_file(golden.string(), svg);
    REQUIRE(std::filesystem::exists(golden));
    CHECK(svg == read_file(golden));
  }

  TEST_CASE("svg layout") {
    const std::string svg = topology_svg(small_three_quarter());
    CHECK(svg.rfind("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\"", 0) == 0);
    CHECK(svg.find("stroke-dasharray") != std::string::npos);
    CHECK(svg.find("id=\"zeros-n-1\"") != std::string::npos);
    std::size_t dots = 0;
    for (auto pos = svg.find("r=\"2\""); pos != std::string::npos; pos = svg.find("r=\"2\"", pos + 1)) ++dots;
    CHECK(dots == 9);
    std::size_t rings = 0;
    for (auto pos = svg.find("r=\"6\""); pos != std::string::npos; pos = svg.find("r=\"6\"", pos + 1)) ++rings;
    CHECK(rings == 2);
    std::size_t paths = 0;
    for (auto pos = svg.find("<path"); pos != std::string::npos; pos = svg.find("<path", pos + 1)) ++paths;
    CHECK(paths == 2);
  }

  TEST_CASE("topology json") {
    const NodalTopology t = small_three_quarter();
    const Json j = topology_json(t);
    CHECK(j.begin().key() == "schema");
    CHECK(j["schema"] == 1);
    CHECK(j["n"] == 3);
    CHECK(j["theta"]["over_pi"] == "3/4");
    CHECK(j["domain_count"] == 4);
    CHECK(j["closed_curves"] == 1);
    CHECK(j["diagonal_component"] == true);
    CHECK(j["crossings"].size() == 5);
    const std::string a = dump_json(j);
    CHECK(a == dump_json(topology_json(small_three_quarter())));
    CHECK(a.back() == '\n');
    const Json back = Json::parse(a);
    CHECK(back == j);
    CHECK(back["theta"]["radians"].get<double>() == t.theta.value());
  }

  TEST_CASE("table json") {
    const Json c = critical_table_json(critical_angles(5));
    CHECK(c["entries"].size() == 16);
    CHECK(c["regular_intervals"].size() == critical_angles(5).regular_intervals.size());
    const Json z = zero_table_json(hermite_zeros(4));
    CHECK(z["zeros"].size() == 4);
    const Json b = barrier_json(barrier_data(3, 0.3));
    CHECK(b["core_box"].size() == 4);
    const Json k = courant_json(3, {});
    CHECK(k["schema"] == 1);
  }

  TEST_CASE("write_text_file creates directories") {
    const auto dir = std::filesystem::temp_directory_path() / "qho_report_test" / "nested";
    std::filesystem::remove_all(dir.parent_path());
    write_text_file((dir / "a.txt").string(), "hello\n");
    CHECK(read_file(dir / "a.txt") == "hello\n");
    std::filesystem::remove_all(dir.parent_path());
  }
}
