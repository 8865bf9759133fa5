#pragma once

#include <span>
#include <vector>

#include "semilab/params.hpp"
#include "semilab/perturbation.hpp"

namespace semilab {

// Truncation / quadrature knobs for the Duhamel series.
struct SeriesParams {
    int levels = 8;      // N: highest iterated-integral order kept
    int quad_nodes = 64; // m: trapezoid nodes per time interval

    void validate() const;
};

struct DysonResult {
    Measure value;    // S_N(t) mu
    double tail_tv;   // tv norm of the last level at the final time
    bool converged;   // tail <= 1e-6 * tv(mu)
};

// S_N(t) = sum_{k<=N} U_k(t) with U_0 = T and
// U_{k+1}(t) mu = integral_0^t T(t-s) B U_k(s) mu ds (trapezoid in s).
DysonResult dyson_apply(const Perturbation& b, double t, const Measure& mu, SeriesParams params);

// Same series evaluated at every node j*t/m; states[j] = S_N(j*t/m) mu.
struct DysonTrajectory {
    std::vector<Measure> states;
    std::vector<Measure> free_states;  // T(j*t/m) mu on the same discretization
    double dt = 0.0;
    double tail_tv = 0.0;
    bool converged = false;
};
DysonTrajectory dyson_trajectory(const Perturbation& b, double t, const Measure& mu,
                                 SeriesParams params);

// Lie product (T(t/m) e^{(t/m) psi .})^m; positivity is structural here.
// Only multiplicative perturbations are supported.
Measure trotter_apply(const Perturbation& b, double t, const Measure& mu, int steps);

struct NeumannResult {
    Measure value;   // R(lambda) sum_{k<=N} (B R(lambda))^k mu
    double tail_tv;  // tv of the last summand
    bool converged;  // tail <= 1e-8
    int terms;
};

// Refuses (throws) when the analytic bound for |B R(lambda)| reaches 1.
NeumannResult neumann_resolvent(const Perturbation& b, double lambda, const Measure& mu,
                                int max_terms);

// Perturbed resolvent R(lambda, A + c B) mu through the Neumann series.
Measure scaled_neumann_resolvent(const Perturbation& b, double scale, double lambda,
                                 const Measure& mu, int max_terms, double tail_tolerance = 1e-10);

struct StageReport {
    std::vector<double> stage_norms;  // empirical |(1/n) B R(lambda, A + (j/n) B)| per stage
    double threshold = 0.0;           // 1 / (2 eta)
    bool all_pass = false;
};
StageReport staged_bound_check(const Perturbation& b, double lambda, int n_stages, double eta,
                               std::span<const Measure> probes, int max_terms = 60);

// Residuals of T(t)mu = S(t)mu + sign * integral_0^t T(t-s) B S(s) mu ds for
// both arrangements of the variation-of-parameters identity, measured in the
// worst dictionary seminorm.
struct VopResiduals {
    double plus = 0.0;   // sign = +1
    double minus = 0.0;  // sign = -1
    int passing_sign(double tolerance) const;  // +1, -1, or 0 if ambiguous
};
VopResiduals vop_residual(const Perturbation& b, double t, const Measure& mu, SeriesParams params);

struct GeneratorCheckReport {
    std::vector<double> step_sizes;
    std::vector<double> errors;  // worst dictionary seminorm of the quotient defect
    std::vector<double> ratios;  // errors[i] / errors[i+1], expected ~2 for halving steps
};
GeneratorCheckReport generator_check(const Perturbation& b, const Measure& mu,
                                     std::span<const double> h_seq, SeriesParams params);

// Minimum atom weight / density sample over S(t)mu for t in t_grid.
// Multiplicative B runs through Trotter, rank-one through the series.
double positivity_scan(const Perturbation& b, const Measure& mu, std::span<const double> t_grid,
                       int trotter_steps, SeriesParams series = {});

// |trapezoid_t e^{-lambda t} <f, S(t) mu> - <f, R(lambda, A+B) mu>|; the
// trajectory is advanced with `substeps` splitting steps per quadrature node.
double laplace_consistency(const Perturbation& b, double lambda, const TestFunction& f,
                           const Measure& mu, double horizon, int steps, int substeps = 4,
                           int neumann_terms = 40);

}  // namespace semilab
