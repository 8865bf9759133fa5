#pragma once

#include <span>
#include <vector>

#include "semilab/kernels.hpp"
#include "semilab/measure.hpp"

namespace semilab {

// T(t)mu = gaussian(t) * mu on measures, T(0) = identity. For t > 0 the result
// is density-only: atoms smear into exact kernel samples. Throws for t < 0 and
// when a density is present but the kernel is too narrow for the grid.
Measure apply_T(double t, const Measure& mu);

// Preadjoint on functions: samples of gaussian(t) * f on the grid. f is read
// through its exact evaluator on an extended range so that boundary samples
// see the full kernel mass, not the truncated window.
SampledFunction apply_T_star(const GridSpec& grid, double t, const TestFunction& f);

// |<f, T(t)mu> - <T_*(t)f, mu>|.
double duality_residual(const TestFunction& f, double t, const Measure& mu);

// R(lambda, A)mu = xi_lambda * mu, computed from the closed kernel.
Measure resolvent(double lambda, const Measure& mu);

// |trapezoid_t e^{-lambda t} <f, T(t)mu> - <f, R(lambda)mu>| on [0, horizon].
double laplace_residual(double lambda, const TestFunction& f, const Measure& mu, double horizon,
                        int steps);

// p_f(T(t)mu - mu) for each t in t_seq (strong tau-continuity modulus).
std::vector<double> bicontinuity_probe(const Measure& mu, const TestFunction& f,
                                       std::span<const double> t_seq);

// For each mu_n: sup over an s-grid in [0, t0] of p_f(T(s)mu_n)
// (local bi-equicontinuity modulus for a tau-null sequence).
std::vector<double> equicontinuity_probe(std::span<const Measure> mu_seq, double t0,
                                         const TestFunction& f, int s_steps = 8);

// Smallest admissible evolution time for a density on this grid: the kernel
// must span at least a couple of cells or discrete convolution loses the mass.
double min_density_time(const GridSpec& grid);

// A mu: the generator applied to an atom-free measure. The kernel here is the
// variance-t Gaussian, so the generator is half the second Skorohod
// derivative (d/dt <f, T(t) delta_0> = f''(0)/2 at t = 0).
Measure generator_apply(const Measure& mu);

}  // namespace semilab
