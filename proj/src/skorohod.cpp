#include "semilab/skorohod.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace semilab {

namespace {

const Measure& require_differentiable(const Measure& mu) {
    if (mu.has_atoms())
        throw std::invalid_argument("not Skorohod differentiable: point masses have no BV density");
    return mu;
}

}  // namespace

Measure skorohod_derivative(const Measure& mu) {
    require_differentiable(mu);
    if (!mu.has_density()) return Measure::zero(mu.grid());
    const auto rho = mu.density();
    const double h = mu.grid().spacing();
    const std::size_t n = rho.size();
    std::vector<double> d(n, 0.0);
    d[0] = (rho[1] - rho[0]) / h;
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (rho[i + 1] - rho[i - 1]) / (2.0 * h);
    d[n - 1] = (rho[n - 1] - rho[n - 2]) / h;
    return Measure::from_samples(mu.grid(), std::move(d));
}

Measure laplacian(const Measure& mu) {
    require_differentiable(mu);
    if (!mu.has_density()) return Measure::zero(mu.grid());
    const auto rho = mu.density();
    const double h = mu.grid().spacing();
    const std::size_t n = rho.size();
    std::vector<double> d(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i)
        d[i] = (rho[i + 1] - 2.0 * rho[i] + rho[i - 1]) / (h * h);
    d[0] = d[1];
    d[n - 1] = d[n - 2];
    return Measure::from_samples(mu.grid(), std::move(d));
}

double quotient_residual(const Measure& mu, const TestFunction& f, double t) {
    require_differentiable(mu);
    if (t == 0.0) throw std::invalid_argument("quotient_residual: t must be nonzero");
    const double quotient = pairing([&](double x) { return (f(x - t) - f(x)) / t; }, mu);
    return std::abs(quotient - pairing(f, skorohod_derivative(mu)));
}

double parts_residual(const Measure& mu, const TestFunction& f) {
    require_differentiable(mu);
    if (!f.has_derivative())
        throw std::invalid_argument("parts_residual: f needs a derivative evaluator");
    const double lhs = pairing([&](double x) { return f.derivative(x); }, mu);
    return std::abs(lhs + pairing(f, skorohod_derivative(mu)));
}

}  // namespace semilab
