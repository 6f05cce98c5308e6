#pragma once

#include "ncmatch/adversaries.hpp"
#include "ncmatch/online_engine.hpp"

#include <json.hpp>

#include <string>

namespace ncm {

using Json = nlohmann::json;

// Instance file format: kind, geometry, n, points (rationals as "p/q"
// strings, optional turn-fraction angle, color), annotations, meta.
Json instance_to_json(const AnnotatedInstance& ai);
// Throws Error(bad_input) on schema violations and the validate_instance
// errors on structurally invalid instances.
AnnotatedInstance instance_from_json(const Json& doc);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

Json simulation_report(const AnnotatedInstance& ai, const std::string& algorithm, const SimulationResult& sim);

// 640x640 SVG: points colored by class with arrival labels, matching edges
// as solid lines. Presentation only.
std::string render_svg(const Instance& instance, const Matching& matching);

}  // namespace ncm
