#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "qho/courant.hpp"
#include "qho/critical.hpp"
#include "qho/geometry.hpp"
#include "qho/hermite.hpp"
#include "qho/nodal.hpp"

namespace qho {

using Json = nlohmann::ordered_json;

inline constexpr int kJsonSchema = 1;

Json angle_json(const Angle& theta);
Json zero_table_json(const ZeroTable& table);
Json critical_table_json(const CriticalAngleTable& table);
Json barrier_json(const BarrierData& barrier);
Json topology_json(const NodalTopology& topology);
Json sweep_json(const SweepReport& report);
Json courant_json(int l_max, const std::vector<EmpiricalReport>& checks);

/// Two-space indented JSON with a trailing newline.
std::string dump_json(const Json& j);

/// 800x800 SVG of the traced nodal set, y axis pointing up: nodal curves in
/// black, dashed diagonal and antidiagonal, grey lines at the zeros of H_n,
/// blue lines at the zeros of H_{n-1}, dots at the lattice of H_n zeros and
/// circles at critical zeros.
std::string topology_svg(const NodalTopology& topology);

/// Writes text to a file, creating parent directories.  Throws
/// std::runtime_error on IO failure.
void write_text_file(const std::string& path, const std::string& text);
void write_topology_svg(const std::string& path, const NodalTopology& topology);

}  // namespace qho
