#include "semilab/heat_semigroup.hpp"

#include <cmath>
#include <stdexcept>

#include "semilab/skorohod.hpp"
#include "semilab/util.hpp"

namespace semilab {

Measure generator_apply(const Measure& mu) { return 0.5 * laplacian(mu); }

double min_density_time(const GridSpec& grid) {
    const double h = grid.spacing();
    return 4.0 * h * h;  // kernel width >= 2h
}

namespace {

void require_density_resolvable(const GridSpec& grid, double kernel_width, const Measure& mu) {
    if (mu.has_density() && kernel_width < 2.0 * grid.spacing())
        throw std::domain_error("kernel narrower than the grid resolves; refine the grid");
}

}  // namespace

Measure apply_T(double t, const Measure& mu) {
    if (t < 0.0) throw std::invalid_argument("apply_T: t must be >= 0");
    if (t == 0.0) return mu;
    const HeatKernel kernel(t);
    require_density_resolvable(mu.grid(), kernel.width(), mu);
    return ConvolutionOperator(mu.grid(), kernel).apply(mu);
}

SampledFunction apply_T_star(const GridSpec& grid, double t, const TestFunction& f) {
    if (t < 0.0) throw std::invalid_argument("apply_T_star: t must be >= 0");
    if (t == 0.0) return {grid, f.sample(grid)};
    const int n = grid.size();
    const double h = grid.spacing();
    const HeatKernel kernel(t);
    if (kernel.width() < 2.0 * h)
        throw std::domain_error("kernel narrower than the grid resolves; refine the grid");
    // Extended sampling of f on [-3L, 3L] with the same spacing, so every node
    // of [-L, L] sees the kernel out to the 2L dropout window.
    const int pad = n - 1;
    std::vector<double> f_ext(static_cast<std::size_t>(n + 2 * pad));
    for (int j = 0; j < n + 2 * pad; ++j)
        f_ext[static_cast<std::size_t>(j)] = f(grid.node(j - pad));
    ConvolutionOperator op(grid, kernel);
    return {grid, op.convolve_samples(f_ext, pad)};
}

double duality_residual(const TestFunction& f, double t, const Measure& mu) {
    const double lhs = pairing(f, apply_T(t, mu));
    const double rhs = pairing(apply_T_star(mu.grid(), t, f), mu);
    return std::abs(lhs - rhs);
}

Measure resolvent(double lambda, const Measure& mu) {
    const ResolventKernel kernel(lambda);  // validates lambda > 0
    require_density_resolvable(mu.grid(), kernel.width(), mu);
    return ConvolutionOperator(mu.grid(), kernel).apply(mu);
}

double laplace_residual(double lambda, const TestFunction& f, const Measure& mu, double horizon,
                        int steps) {
    if (!(lambda > 0.0)) throw std::invalid_argument("laplace_residual: lambda must be > 0");
    if (steps < 2 || !(horizon > 0.0))
        throw std::invalid_argument("laplace_residual: bad time grid");
    const double dt = horizon / steps;
    std::vector<double> integrand(static_cast<std::size_t>(steps + 1));
    for (int j = 0; j <= steps; ++j) {
        const double t = j * dt;
        integrand[static_cast<std::size_t>(j)] =
            std::exp(-lambda * t) * pairing(f, apply_T(t, mu));
    }
    const double transform = trapezoid(integrand, dt);
    return std::abs(transform - pairing(f, resolvent(lambda, mu)));
}

std::vector<double> bicontinuity_probe(const Measure& mu, const TestFunction& f,
                                       std::span<const double> t_seq) {
    std::vector<double> moduli;
    moduli.reserve(t_seq.size());
    for (double t : t_seq) moduli.push_back(seminorm(f, apply_T(t, mu) - mu));
    return moduli;
}

std::vector<double> equicontinuity_probe(std::span<const Measure> mu_seq, double t0,
                                         const TestFunction& f, int s_steps) {
    if (s_steps < 1 || !(t0 > 0.0))
        throw std::invalid_argument("equicontinuity_probe: bad s-grid");
    std::vector<double> sups;
    sups.reserve(mu_seq.size());
    for (const Measure& mu : mu_seq) {
        double sup = 0.0;
        for (int j = 0; j <= s_steps; ++j)
            sup = std::max(sup, seminorm(f, apply_T(j * t0 / s_steps, mu)));
        sups.push_back(sup);
    }
    return sups;
}

}  // namespace semilab
