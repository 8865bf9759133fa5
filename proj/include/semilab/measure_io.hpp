#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "semilab/measure.hpp"
#include "semilab/perturbation.hpp"

namespace semilab {

// Record layout: {"atoms": [[x, w], ...], "grid": {"L": .., "n": ..},
// "density_expr": "..."} or "density_file": path to whitespace-separated
// samples (one per grid node), relative to base_dir.

nlohmann::json grid_to_json(const GridSpec& grid);
GridSpec grid_from_json(const nlohmann::json& j);

// Named density families: "zero", "gauss:<t>", "indicator:<a>,<b>".
std::vector<double> density_from_expr(const GridSpec& grid, const std::string& expr);

Measure measure_from_record(const nlohmann::json& record, const std::filesystem::path& base_dir);

// Writes density samples (when present) to density_dir/<stem>.density.txt and
// references them from the record.
nlohmann::json measure_to_record(const Measure& mu, const std::filesystem::path& density_dir,
                                 const std::string& stem);

void save_density_samples(const std::filesystem::path& path, std::span<const double> samples);
std::vector<double> load_density_samples(const std::filesystem::path& path);

// Potential specs: "exp_decay", "sqrt_singular(<cap>)", "table:<file>".
Potential potential_from_spec(const std::string& spec, const GridSpec& grid,
                              const std::filesystem::path& base_dir);

}  // namespace semilab
