#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "semilab/grid.hpp"
#include "semilab/test_function.hpp"

namespace semilab {

struct Atom {
    double location;
    double weight;
};

// Concrete bounded Borel measure on the truncated line [-L, L]: a finite list
// of point masses plus an optional Lebesgue density sampled on the grid.
// Values are immutable after construction; all operations below are pure.
class Measure {
public:
    static Measure zero(const GridSpec& grid) { return Measure(grid); }
    static Measure dirac(const GridSpec& grid, double location, double weight = 1.0);
    static Measure from_samples(const GridSpec& grid, std::vector<double> density);
    static Measure from_density(const GridSpec& grid, const std::function<double(double)>& rho);
    // Centered Gaussian of variance t (density (2*pi*t)^{-1/2} e^{-x^2/(2t)}).
    static Measure gaussian(const GridSpec& grid, double t);
    static Measure with_atoms(const GridSpec& grid, std::vector<Atom> atoms);

    const GridSpec& grid() const { return grid_; }
    std::span<const Atom> atoms() const { return atoms_; }
    bool has_atoms() const { return !atoms_.empty(); }
    bool has_density() const { return !density_.empty(); }
    std::span<const double> density() const { return density_; }

    // Smallest atom weight / density sample (0 for the zero measure).
    double min_component() const;
    bool is_positive(double tolerance = 0.0) const { return min_component() >= -tolerance; }
    bool is_zero() const { return atoms_.empty() && density_.empty(); }

    Measure scaled(double a) const;
    friend Measure operator+(const Measure& mu, const Measure& nu);
    friend Measure operator-(const Measure& mu, const Measure& nu);
    friend Measure operator*(double a, const Measure& mu) { return mu.scaled(a); }

private:
    explicit Measure(const GridSpec& grid) : grid_(grid) {}
    void insert_atom(double location, double weight);

    GridSpec grid_;
    std::vector<Atom> atoms_;      // sorted by location, locations pairwise distinct
    std::vector<double> density_;  // empty, or one sample per grid node
};

// A function known through its samples on a grid; off-node points are read by
// linear interpolation. This is how preadjoint images T_*(t)f come back.
struct SampledFunction {
    GridSpec grid;
    std::vector<double> values;

    double operator()(double x) const;
    double max_abs() const;
};

// <f, mu> = sum of atom weights * f + trapezoid quadrature of f * density.
double pairing(const TestFunction& f, const Measure& mu);
double pairing(const std::function<double(double)>& f, const Measure& mu);
double pairing(const SampledFunction& f, const Measure& mu);

// p_f(mu) = |<f, mu>|.
double seminorm(const TestFunction& f, const Measure& mu);

// Total variation: sum |weights| + quadrature of |density|.
double tv_norm(const Measure& mu);

// Componentwise Jordan decomposition mu = pos - neg, both parts positive.
std::pair<Measure, Measure> jordan(const Measure& mu);

struct AlReport {
    double norm_gap = 0.0;  // |tv(mu+nu) - tv(mu) - tv(nu)|
    std::vector<std::pair<std::string, double>> seminorm_gaps;
    double max_gap() const;
};

// Additivity of norm and of nonnegative-dictionary seminorms on the positive
// cone. Rejects non-positive inputs.
AlReport check_al(const Measure& mu, const Measure& nu);

}  // namespace semilab
