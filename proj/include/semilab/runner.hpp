#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "semilab/measure_io.hpp"
#include "semilab/params.hpp"
#include "semilab/perturbed.hpp"

namespace semilab {

// One JSON document fully determines a run.
struct RunConfig {
    GridSpec grid{20.0, 16385};
    std::vector<std::pair<std::string, Measure>> measures;
    std::vector<std::string> function_names;
    std::optional<Perturbation> perturbation;
    std::vector<double> times{0.5, 1.0, 2.0};
    std::vector<double> lambdas{1.0, 2.0, 8.0};
    SeriesParams series{8, 64};
    int trotter_steps = 512;
    SemigroupParams params;
    std::vector<std::string> suites{"al", "duality", "mv", "positivity",
                                    "skorohod", "generator", "vop", "oracle"};
    std::uint64_t seed = 1;
    int trials = 200;
    std::filesystem::path base_dir = ".";
};

// Raised for anything wrong with the configuration itself (exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

RunConfig load_config(const std::filesystem::path& path);

struct ReportRow {
    std::string suite;
    std::string case_id;
    double value = 0.0;
    double reference = std::numeric_limits<double>::quiet_NaN();
    double abs_error = std::numeric_limits<double>::quiet_NaN();
    double tolerance = std::numeric_limits<double>::quiet_NaN();
    bool pass = true;
};

std::string rows_to_csv(std::span<const ReportRow> rows);

// Commands: evolve | resolvent | verify | oracle. Writes <command>.csv into
// out_dir (partial content on error) and returns the process exit code:
// 0 all rows pass, 1 at least one failing row.
int run_command(const std::string& command, const RunConfig& config,
                const std::filesystem::path& out_dir);

}  // namespace semilab
