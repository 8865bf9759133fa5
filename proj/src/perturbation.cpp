#include "semilab/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "semilab/util.hpp"

namespace semilab {

Potential Potential::zero() { return Potential(Kind::Zero, "zero"); }

Potential Potential::exp_decay() { return Potential(Kind::ExpDecay, "exp_decay"); }

Potential Potential::sqrt_singular(double cap) {
    if (!(cap > 0.0)) throw std::invalid_argument("sqrt_singular: cap must be > 0 (or +inf)");
    Potential p(Kind::SqrtSingular, "sqrt_singular");
    p.cap_ = cap;
    return p;
}

Potential Potential::from_samples(const GridSpec& grid, std::vector<double> cell_values) {
    if (cell_values.size() != static_cast<std::size_t>(grid.size()))
        throw std::invalid_argument("potential table size does not match grid");
    for (double v : cell_values)
        if (v < 0.0) throw std::invalid_argument("potential must be nonnegative");
    Potential p(Kind::Table, "table");
    p.table_grid_ = grid;
    p.table_ = std::move(cell_values);
    return p;
}

double Potential::point_value(double x) const {
    switch (kind_) {
        case Kind::Zero:
            return 0.0;
        case Kind::ExpDecay:
            return std::exp(-std::abs(x));
        case Kind::SqrtSingular: {
            const double ax = std::abs(x);
            if (ax > 1.0) return 0.0;
            if (ax == 0.0) return cap_;  // +inf for the uncapped pole
            return std::min(1.0 / std::sqrt(ax), cap_);
        }
        case Kind::Table: {
            // Table entries are cell averages; read them as a piecewise-linear
            // interpolant for point values at atom locations.
            const SampledFunction s{*table_grid_, table_};
            return s(x);
        }
    }
    return 0.0;
}

double Potential::antiderivative(double x) const {
    const double ax = std::abs(x);
    double val = 0.0;
    switch (kind_) {
        case Kind::Zero:
            val = 0.0;
            break;
        case Kind::ExpDecay:
            val = 1.0 - std::exp(-ax);
            break;
        case Kind::SqrtSingular: {
            // kink where |x|^{-1/2} crosses the cap
            const double xc = std::isinf(cap_) ? 0.0 : std::min(1.0 / (cap_ * cap_), 1.0);
            const double reach = std::min(ax, 1.0);
            if (reach == 0.0)
                val = 0.0;
            else if (reach <= xc)
                val = cap_ * reach;
            else
                val = (xc > 0.0 ? cap_ * xc : 0.0) + 2.0 * (std::sqrt(reach) - std::sqrt(xc));
            break;
        }
        case Kind::Table:
            throw std::logic_error("tabulated potential has no closed antiderivative");
    }
    return x < 0.0 ? -val : val;
}

double Potential::cell_average(double center, double width) const {
    if (!(width > 0.0)) throw std::invalid_argument("cell width must be > 0");
    if (kind_ == Kind::Table) return point_value(center);
    return (antiderivative(center + 0.5 * width) - antiderivative(center - 0.5 * width)) / width;
}

std::vector<double> Potential::cell_averages(const GridSpec& grid) const {
    if (kind_ == Kind::Table) {
        if (grid != *table_grid_)
            throw std::invalid_argument("tabulated potential grid mismatch");
        return table_;
    }
    std::vector<double> out(static_cast<std::size_t>(grid.size()));
    const double h = grid.spacing();
    for (int i = 0; i < grid.size(); ++i)
        out[static_cast<std::size_t>(i)] = cell_average(grid.node(i), h);
    return out;
}

double Potential::l1_norm() const {
    switch (kind_) {
        case Kind::Zero:
            return 0.0;
        case Kind::ExpDecay:
            return 2.0;
        case Kind::SqrtSingular:
            return 2.0 * antiderivative(1.0);
        case Kind::Table: {
            KahanSum s;
            for (double v : table_) s.add(v);
            return table_grid_->spacing() * s.value();
        }
    }
    return 0.0;
}

RankOnePerturbation::RankOnePerturbation(TestFunction g_, Measure y_)
    : g(std::move(g_)), y(std::move(y_)) {
    if (!g.nonnegative())
        throw std::invalid_argument("rank-one perturbation needs a nonnegative functional");
    if (!y.is_positive())
        throw std::invalid_argument("rank-one perturbation needs a positive target measure");
}

Perturbation zero_perturbation() { return PotentialPerturbation{Potential::zero()}; }

bool is_zero(const Perturbation& b) {
    const auto* p = std::get_if<PotentialPerturbation>(&b);
    return p != nullptr && p->psi.is_zero();
}

bool is_rank_one(const Perturbation& b) {
    return std::holds_alternative<RankOnePerturbation>(b);
}

Measure apply_B(const Perturbation& b, const Measure& mu) {
    if (const auto* ro = std::get_if<RankOnePerturbation>(&b)) {
        if (ro->y.grid() != mu.grid())
            throw std::invalid_argument("rank-one target lives on a different grid");
        return pairing(ro->g, mu) * ro->y;
    }
    const Potential& psi = std::get<PotentialPerturbation>(b).psi;
    if (psi.is_zero()) return Measure::zero(mu.grid());
    std::vector<Atom> atoms;
    for (const Atom& a : mu.atoms()) {
        if (a.weight == 0.0) continue;
        const double v = psi.point_value(a.location);
        if (!std::isfinite(v))
            throw std::domain_error("atom sits at a singular point of the potential");
        atoms.push_back({a.location, a.weight * v});
    }
    Measure out = Measure::with_atoms(mu.grid(), std::move(atoms));
    if (mu.has_density()) {
        const std::vector<double> bar = psi.cell_averages(mu.grid());
        std::vector<double> d(mu.density().begin(), mu.density().end());
        for (std::size_t i = 0; i < d.size(); ++i) d[i] *= bar[i];
        out = out + Measure::from_samples(mu.grid(), std::move(d));
    }
    return out;
}

double analytic_composed_bound(const Perturbation& b, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
    if (const auto* ro = std::get_if<RankOnePerturbation>(&b))
        return ro->g.sup_norm() * tv_norm(ro->y) / lambda;  // Hille-Yosida with M=1, omega=0
    return std::get<PotentialPerturbation>(b).psi.l1_norm() / std::sqrt(2.0 * lambda);
}

NormEstimate composed_norm_estimate(const Perturbation& b, double lambda,
                                    std::span<const Measure> probes) {
    NormEstimate est;
    est.analytic = analytic_composed_bound(b, lambda);
    for (const Measure& mu : probes) {
        const double denom = tv_norm(mu);
        if (denom == 0.0) continue;
        est.empirical = std::max(est.empirical, tv_norm(apply_B(b, resolvent(lambda, mu))) / denom);
    }
    return est;
}

double mv_integral(const Perturbation& b, const Measure& mu, double t0, double lambda, int steps) {
    if (!(t0 > 0.0) || steps < 2) throw std::invalid_argument("mv_integral: bad time grid");
    if (lambda < 0.0) throw std::invalid_argument("mv_integral: lambda must be >= 0");
    const double mass = tv_norm(mu);
    if (mass == 0.0) throw std::invalid_argument("mv_integral: zero measure");
    const double ds = t0 / steps;
    std::vector<double> integrand(static_cast<std::size_t>(steps + 1));
    for (int j = 0; j <= steps; ++j) {
        const double s = j * ds;
        integrand[static_cast<std::size_t>(j)] =
            std::exp(-lambda * s) * tv_norm(apply_B(b, apply_T(s, mu)));
    }
    return trapezoid(integrand, ds) / mass;
}

double locality_probe(const Perturbation& b, double lambda, const TestFunction& f,
                      const TestFunction& q, double eps, std::span<const Measure> probes) {
    if (!(eps > 0.0)) throw std::invalid_argument("locality_probe: eps must be > 0");
    double best_k = 0.0;
    for (const Measure& mu : probes) {
        const double numerator =
            seminorm(f, apply_B(b, resolvent(lambda, mu))) - eps * tv_norm(mu);
        if (numerator <= 0.0) continue;
        const double denom = seminorm(q, mu);
        if (denom == 0.0)
            throw std::runtime_error("candidate q fails: vanishing seminorm with positive residual");
        best_k = std::max(best_k, numerator / denom);
    }
    return best_k;
}

LpSplit lp_split(std::span<const double> psi_samples, double cutoff) {
    if (!(cutoff > 0.0)) throw std::invalid_argument("lp_split: cutoff must be > 0");
    LpSplit split;
    split.integrable.resize(psi_samples.size());
    split.bounded.resize(psi_samples.size());
    for (std::size_t i = 0; i < psi_samples.size(); ++i) {
        if (psi_samples[i] > cutoff)
            split.integrable[i] = psi_samples[i];
        else
            split.bounded[i] = psi_samples[i];
    }
    return split;
}

}  // namespace semilab
