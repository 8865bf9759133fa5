#include "semilab/perturbed.hpp"

#include <cmath>
#include <stdexcept>

#include "semilab/skorohod.hpp"
#include "semilab/util.hpp"

namespace semilab {

namespace {

constexpr double kDysonTailFactor = 1e-6;   // relative to tv(mu)
constexpr double kNeumannTailTol = 1e-8;    // absolute

double max_dictionary_seminorm(const Measure& mu) {
    double worst = 0.0;
    for (const TestFunction& f : dictionary()) worst = std::max(worst, seminorm(f, mu));
    return worst;
}

void require_step_resolvable(const GridSpec& grid, double dt) {
    if (dt < min_density_time(grid))
        throw std::domain_error("time step too small for the grid; lower the node count");
}

// W[i] = trapezoid_{[0, s_i]} T(s_i - s) V(s) ds on the node set s_i = i*dt,
// advanced with the running identity W-kernel sums: each step applies one
// T(dt) to the accumulated, not-yet-weighted prefix.
std::vector<Measure> duhamel_chain(const ConvolutionOperator& step,
                                   const std::vector<Measure>& v, double dt) {
    const std::size_t m = v.size() - 1;
    std::vector<Measure> out;
    out.reserve(m + 1);
    out.push_back(Measure::zero(step.grid()));
    Measure pending = 0.5 * v[0];
    for (std::size_t i = 1; i <= m; ++i) {
        const Measure prefix = step.apply(pending);
        out.push_back(dt * (prefix + 0.5 * v[i]));
        pending = prefix + v[i];
    }
    return out;
}

Measure scale_by_potential_exponential(const Potential& psi, double dt, const Measure& mu,
                                       const std::vector<double>& cell_factors) {
    std::vector<Atom> atoms(mu.atoms().begin(), mu.atoms().end());
    for (Atom& a : atoms) {
        const double v = psi.point_value(a.location);
        if (!std::isfinite(v))
            throw std::domain_error("atom sits at a singular point of the potential");
        a.weight *= std::exp(dt * v);
    }
    Measure out = Measure::with_atoms(mu.grid(), std::move(atoms));
    if (mu.has_density()) {
        std::vector<double> d(mu.density().begin(), mu.density().end());
        for (std::size_t i = 0; i < d.size(); ++i) d[i] *= cell_factors[i];
        out = out + Measure::from_samples(mu.grid(), std::move(d));
    }
    return out;
}

}  // namespace

void SeriesParams::validate() const {
    if (levels < 1) throw std::invalid_argument("series needs at least one level");
    if (quad_nodes < 8) throw std::invalid_argument("series quadrature needs at least 8 nodes");
}

DysonTrajectory dyson_trajectory(const Perturbation& b, double t, const Measure& mu,
                                 SeriesParams params) {
    params.validate();
    if (!(t > 0.0)) throw std::invalid_argument("dyson series needs t > 0");
    const GridSpec& grid = mu.grid();
    const int m = params.quad_nodes;
    const double dt = t / m;
    require_step_resolvable(grid, dt);
    const ConvolutionOperator step(grid, HeatKernel(dt));

    DysonTrajectory traj;
    traj.dt = dt;

    // level 0: the free evolution chain
    std::vector<Measure> level;
    level.reserve(static_cast<std::size_t>(m) + 1);
    level.push_back(mu);
    for (int j = 0; j < m; ++j) level.push_back(step.apply(level.back()));
    traj.free_states = level;
    traj.states = level;

    const double mass = tv_norm(mu);
    traj.tail_tv = mass;
    if (is_zero(b)) {
        traj.tail_tv = 0.0;
        traj.converged = true;
        return traj;
    }

    std::vector<Measure> v;
    v.reserve(level.size());
    for (int k = 1; k <= params.levels; ++k) {
        v.clear();
        for (const Measure& u : level) v.push_back(apply_B(b, u));
        level = duhamel_chain(step, v, dt);
        for (std::size_t j = 0; j < level.size(); ++j) traj.states[j] = traj.states[j] + level[j];
    }
    traj.tail_tv = tv_norm(level.back());
    traj.converged = traj.tail_tv <= kDysonTailFactor * mass;
    return traj;
}

DysonResult dyson_apply(const Perturbation& b, double t, const Measure& mu, SeriesParams params) {
    DysonTrajectory traj = dyson_trajectory(b, t, mu, params);
    return {std::move(traj.states.back()), traj.tail_tv, traj.converged};
}

Measure trotter_apply(const Perturbation& b, double t, const Measure& mu, int steps) {
    if (is_rank_one(b))
        throw std::invalid_argument("trotter splitting supports multiplicative perturbations only");
    if (t < 0.0) throw std::invalid_argument("trotter needs t >= 0");
    if (t == 0.0) return mu;
    if (steps < 16) throw std::invalid_argument("trotter needs at least 16 steps");
    const Potential& psi = std::get<PotentialPerturbation>(b).psi;
    const GridSpec& grid = mu.grid();
    const double dt = t / steps;
    require_step_resolvable(grid, dt);
    const ConvolutionOperator step(grid, HeatKernel(dt));
    std::vector<double> factors(static_cast<std::size_t>(grid.size()), 1.0);
    if (!psi.is_zero()) {
        const std::vector<double> bar = psi.cell_averages(grid);
        for (std::size_t i = 0; i < factors.size(); ++i) factors[i] = std::exp(dt * bar[i]);
    }
    Measure state = mu;
    for (int j = 0; j < steps; ++j)
        state = step.apply(scale_by_potential_exponential(psi, dt, state, factors));
    return state;
}

NeumannResult neumann_resolvent(const Perturbation& b, double lambda, const Measure& mu,
                                int max_terms) {
    if (max_terms < 1) throw std::invalid_argument("neumann series needs at least one term");
    const double bound = analytic_composed_bound(b, lambda);
    if (bound >= 1.0)
        throw std::runtime_error("neumann series refused: composed-norm bound is not below 1");
    Measure term = mu;
    Measure acc = mu;
    double tail = tv_norm(mu);
    for (int k = 1; k <= max_terms; ++k) {
        term = apply_B(b, resolvent(lambda, term));
        acc = acc + term;
        tail = tv_norm(term);
    }
    return {resolvent(lambda, acc), tail, tail <= kNeumannTailTol, max_terms};
}

Measure scaled_neumann_resolvent(const Perturbation& b, double scale, double lambda,
                                 const Measure& mu, int max_terms, double tail_tolerance) {
    if (scale < 0.0) throw std::invalid_argument("perturbation scale must be >= 0");
    if (scale == 0.0 || is_zero(b)) return resolvent(lambda, mu);
    if (scale * analytic_composed_bound(b, lambda) >= 1.0)
        throw std::runtime_error("stage neumann series diverges: scaled bound is not below 1");
    Measure term = mu;
    Measure acc = mu;
    for (int k = 1; k <= max_terms; ++k) {
        term = scale * apply_B(b, resolvent(lambda, term));
        acc = acc + term;
        if (tv_norm(term) <= tail_tolerance) return resolvent(lambda, acc);
    }
    throw std::runtime_error("stage neumann series did not reach the tail tolerance");
}

StageReport staged_bound_check(const Perturbation& b, double lambda, int n_stages, double eta,
                               std::span<const Measure> probes, int max_terms) {
    if (n_stages < 1) throw std::invalid_argument("staged check needs n_stages >= 1");
    if (!(eta > 1.0)) throw std::invalid_argument("eta must be > 1");
    StageReport report;
    report.threshold = 1.0 / (2.0 * eta);
    report.all_pass = true;
    for (int j = 0; j < n_stages; ++j) {
        const double s = static_cast<double>(j) / n_stages;
        double stage_norm = 0.0;
        for (const Measure& mu : probes) {
            const double mass = tv_norm(mu);
            if (mass == 0.0) continue;
            const Measure r = scaled_neumann_resolvent(b, s, lambda, mu, max_terms);
            stage_norm = std::max(stage_norm, tv_norm(apply_B(b, r)) / (n_stages * mass));
        }
        report.stage_norms.push_back(stage_norm);
        if (!(stage_norm < report.threshold)) report.all_pass = false;
    }
    return report;
}

int VopResiduals::passing_sign(double tolerance) const {
    const bool plus_ok = plus <= tolerance;
    const bool minus_ok = minus <= tolerance;
    if (plus_ok == minus_ok) return 0;
    return plus_ok ? +1 : -1;
}

VopResiduals vop_residual(const Perturbation& b, double t, const Measure& mu,
                          SeriesParams params) {
    const DysonTrajectory traj = dyson_trajectory(b, t, mu, params);
    const ConvolutionOperator step(mu.grid(), HeatKernel(traj.dt));
    std::vector<Measure> v;
    v.reserve(traj.states.size());
    for (const Measure& s : traj.states) v.push_back(apply_B(b, s));
    const Measure duhamel = duhamel_chain(step, v, traj.dt).back();
    const Measure base = traj.free_states.back() - traj.states.back();
    VopResiduals res;
    res.plus = max_dictionary_seminorm(base - duhamel);
    res.minus = max_dictionary_seminorm(base + duhamel);
    return res;
}

GeneratorCheckReport generator_check(const Perturbation& b, const Measure& mu,
                                     std::span<const double> h_seq, SeriesParams params) {
    if (mu.has_atoms())
        throw std::invalid_argument("generator check: measure is not in the generator domain");
    const Measure image = generator_apply(mu) + apply_B(b, mu);
    GeneratorCheckReport report;
    for (double h : h_seq) {
        if (!(h > 0.0)) throw std::invalid_argument("generator check: step sizes must be > 0");
        const DysonResult s = dyson_apply(b, h, mu, params);
        if (!s.converged)
            throw std::runtime_error("generator check: series unconverged at a step size");
        const Measure defect = (1.0 / h) * (s.value - mu) - image;
        report.step_sizes.push_back(h);
        report.errors.push_back(max_dictionary_seminorm(defect));
    }
    for (std::size_t i = 0; i + 1 < report.errors.size(); ++i)
        report.ratios.push_back(report.errors[i] / report.errors[i + 1]);
    return report;
}

double positivity_scan(const Perturbation& b, const Measure& mu, std::span<const double> t_grid,
                       int trotter_steps, SeriesParams series) {
    double worst = 0.0;
    for (double t : t_grid) {
        Measure evolved = Measure::zero(mu.grid());
        if (t == 0.0)
            evolved = mu;
        else if (is_rank_one(b))
            evolved = dyson_apply(b, t, mu, series).value;
        else
            evolved = trotter_apply(b, t, mu, trotter_steps);
        worst = std::min(worst, evolved.min_component());
    }
    return worst;
}

double laplace_consistency(const Perturbation& b, double lambda, const TestFunction& f,
                           const Measure& mu, double horizon, int steps, int substeps,
                           int neumann_terms) {
    if (!(horizon > 0.0) || steps < 2 || substeps < 1)
        throw std::invalid_argument("laplace consistency: bad time grid");
    const GridSpec& grid = mu.grid();
    const double dt_node = horizon / steps;
    const double dt = dt_node / substeps;
    require_step_resolvable(grid, dt);
    const ConvolutionOperator step(grid, HeatKernel(dt));

    std::vector<double> factors(static_cast<std::size_t>(grid.size()), 1.0);
    const Potential* psi = nullptr;
    if (!is_rank_one(b)) {
        psi = &std::get<PotentialPerturbation>(b).psi;
        if (!psi->is_zero()) {
            const std::vector<double> bar = psi->cell_averages(grid);
            for (std::size_t i = 0; i < factors.size(); ++i) factors[i] = std::exp(dt * bar[i]);
        }
    }

    Measure state = mu;
    std::vector<double> integrand(static_cast<std::size_t>(steps + 1));
    integrand[0] = pairing(f, state);
    for (int j = 1; j <= steps; ++j) {
        for (int k = 0; k < substeps; ++k) {
            if (psi != nullptr)
                state = step.apply(scale_by_potential_exponential(*psi, dt, state, factors));
            else
                state = step.apply(state + dt * apply_B(b, state));  // first-order lift for rank-one
        }
        integrand[static_cast<std::size_t>(j)] =
            std::exp(-lambda * j * dt_node) * pairing(f, state);
    }
    const double transform = trapezoid(integrand, dt_node);

    const NeumannResult res = neumann_resolvent(b, lambda, mu, neumann_terms);
    if (!res.converged)
        throw std::runtime_error("laplace consistency: neumann series unconverged");
    return std::abs(transform - pairing(f, res.value));
}

}  // namespace semilab
