// Copyright (c) 2026 the quasilattice authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "quasilattice/pointset.hpp"
#include "quasilattice/sampling.hpp"
#include "quasilattice/scheme.hpp"
#include "quasilattice/window.hpp"

namespace ql {

using Json = nlohmann::json;

// GroupSpec <-> {"d": int, "torus": int, "torsion": [int,...]}
Json to_json(const GroupSpec& spec);
GroupSpec group_from_json(const Json& j);

// scheme descriptor:
// {"m", "group", "prime_offset", "style"?, "torsion_slots"?, "truncations"?}
Json to_json(const CpSchemeParams& params);
CpSchemeParams params_from_json(const Json& j);

// built scheme, including the numeric basis; round-trips through build_scheme
Json scheme_to_json(const CpScheme& scheme);
CpScheme scheme_from_json(const Json& j);

Json to_json(const Window& w);
Window window_from_json(const Json& j);

Json to_json(const SpectrumWindow& k);
SpectrumWindow spectrum_from_json(const Json& j);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// "# quasilattice <version>" / "# seed=..." / "# input <name>=<fnv64>" header
/// lines for deterministic, self-describing CSV outputs.
std::string csv_header(const std::map<std::string, std::string>& fields);

std::string format_double(double v);  // shortest round-trip-stable form

/// Minimal SVG scatter: one series per label, fixed palette, deterministic.
struct ScatterSeries {
  std::string label;
  std::vector<std::pair<double, double>> pts;
};
std::string svg_scatter(const std::vector<ScatterSeries>& series, const std::string& x_label,
                        const std::string& y_label, int width = 900, int height = 600);

}  // namespace ql
