#include "semilab/measure_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace semilab {

using nlohmann::json;

json grid_to_json(const GridSpec& grid) {
    return json{{"L", grid.half_width()}, {"n", grid.size()}};
}

GridSpec grid_from_json(const json& j) {
    if (!j.contains("L") || !j.contains("n")) throw std::invalid_argument("grid record needs L and n");
    return GridSpec(j.at("L").get<double>(), j.at("n").get<int>());
}

std::vector<double> density_from_expr(const GridSpec& grid, const std::string& expr) {
    const auto n = static_cast<std::size_t>(grid.size());
    if (expr == "zero") return std::vector<double>(n, 0.0);
    if (expr.rfind("gauss:", 0) == 0) {
        const double t = std::stod(expr.substr(6));
        const Measure g = Measure::gaussian(grid, t);
        return {g.density().begin(), g.density().end()};
    }
    if (expr.rfind("indicator:", 0) == 0) {
        std::istringstream in(expr.substr(10));
        double a = 0.0, b = 0.0;
        char comma = 0;
        if (!(in >> a >> comma >> b) || comma != ',' || !(a < b))
            throw std::invalid_argument("indicator expr needs 'indicator:a,b' with a < b");
        std::vector<double> d(n, 0.0);
        for (int i = 0; i < grid.size(); ++i) {
            const double x = grid.node(i);
            if (x >= a && x <= b) d[static_cast<std::size_t>(i)] = 1.0;
        }
        return d;
    }
    throw std::invalid_argument("unknown density expression: " + expr);
}

void save_density_samples(const std::filesystem::path& path, std::span<const double> samples) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out.precision(17);
    for (double v : samples) out << v << '\n';
}

std::vector<double> load_density_samples(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::vector<double> samples;
    double v = 0.0;
    while (in >> v) samples.push_back(v);
    return samples;
}

Measure measure_from_record(const json& record, const std::filesystem::path& base_dir) {
    const GridSpec grid = grid_from_json(record.at("grid"));
    Measure mu = Measure::zero(grid);
    if (record.contains("density_expr")) {
        mu = Measure::from_samples(grid,
                                   density_from_expr(grid, record.at("density_expr").get<std::string>()));
    } else if (record.contains("density_file")) {
        const std::filesystem::path p =
            base_dir / record.at("density_file").get<std::string>();
        mu = Measure::from_samples(grid, load_density_samples(p));
    }
    if (record.contains("atoms")) {
        std::vector<Atom> atoms;
        for (const auto& pair : record.at("atoms")) {
            if (!pair.is_array() || pair.size() != 2)
                throw std::invalid_argument("atom record must be [location, weight]");
            atoms.push_back({pair.at(0).get<double>(), pair.at(1).get<double>()});
        }
        mu = mu + Measure::with_atoms(grid, std::move(atoms));
    }
    return mu;
}

json measure_to_record(const Measure& mu, const std::filesystem::path& density_dir,
                       const std::string& stem) {
    json record;
    record["grid"] = grid_to_json(mu.grid());
    json atoms = json::array();
    for (const Atom& a : mu.atoms()) atoms.push_back(json::array({a.location, a.weight}));
    record["atoms"] = atoms;
    if (mu.has_density()) {
        const std::string file = stem + ".density.txt";
        save_density_samples(density_dir / file, mu.density());
        record["density_file"] = file;
    }
    return record;
}

Potential potential_from_spec(const std::string& spec, const GridSpec& grid,
                              const std::filesystem::path& base_dir) {
    if (spec == "zero") return Potential::zero();
    if (spec == "exp_decay") return Potential::exp_decay();
    if (spec.rfind("sqrt_singular(", 0) == 0 && spec.back() == ')') {
        const std::string arg = spec.substr(14, spec.size() - 15);
        const double cap = (arg == "inf") ? std::numeric_limits<double>::infinity() : std::stod(arg);
        return Potential::sqrt_singular(cap);
    }
    if (spec.rfind("table:", 0) == 0) {
        const std::filesystem::path p = base_dir / spec.substr(6);
        return Potential::from_samples(grid, load_density_samples(p));
    }
    throw std::invalid_argument("unknown potential spec: " + spec);
}

}  // namespace semilab
