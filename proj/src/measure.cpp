#include "semilab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "semilab/util.hpp"

namespace semilab {

namespace {

void require_same_grid(const Measure& mu, const Measure& nu) {
    if (mu.grid() != nu.grid()) throw std::invalid_argument("measures live on different grids");
}

double quadrature_of(const std::function<double(std::size_t)>& term, std::size_t n, double h) {
    if (n == 0) return 0.0;
    KahanSum s;
    s.add(0.5 * term(0));
    for (std::size_t i = 1; i + 1 < n; ++i) s.add(term(i));
    s.add(0.5 * term(n - 1));
    return h * s.value();
}

}  // namespace

Measure Measure::dirac(const GridSpec& grid, double location, double weight) {
    if (!grid.contains(location))
        throw std::invalid_argument("atom location outside [-L, L]");
    Measure m(grid);
    m.atoms_.push_back({location, weight});
    return m;
}

Measure Measure::with_atoms(const GridSpec& grid, std::vector<Atom> atoms) {
    Measure m(grid);
    for (const Atom& a : atoms) {
        if (!grid.contains(a.location))
            throw std::invalid_argument("atom location outside [-L, L]");
        m.insert_atom(a.location, a.weight);
    }
    return m;
}

Measure Measure::from_samples(const GridSpec& grid, std::vector<double> density) {
    if (density.size() != static_cast<std::size_t>(grid.size()))
        throw std::invalid_argument("density sample count does not match grid");
    Measure m(grid);
    m.density_ = std::move(density);
    return m;
}

Measure Measure::from_density(const GridSpec& grid, const std::function<double(double)>& rho) {
    std::vector<double> d(static_cast<std::size_t>(grid.size()));
    for (int i = 0; i < grid.size(); ++i) d[static_cast<std::size_t>(i)] = rho(grid.node(i));
    return from_samples(grid, std::move(d));
}

Measure Measure::gaussian(const GridSpec& grid, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("gaussian measure needs t > 0");
    const double norm = 1.0 / std::sqrt(2.0 * kPi * t);
    return from_density(grid, [=](double x) { return norm * std::exp(-x * x / (2.0 * t)); });
}

void Measure::insert_atom(double location, double weight) {
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), location,
                               [](const Atom& a, double x) { return a.location < x; });
    if (it != atoms_.end() && it->location == location) {
        it->weight += weight;  // coinciding locations merge
        if (it->weight == 0.0) atoms_.erase(it);
    } else {
        atoms_.insert(it, {location, weight});
    }
}

double Measure::min_component() const {
    double m = 0.0;
    for (const Atom& a : atoms_) m = std::min(m, a.weight);
    for (double d : density_) m = std::min(m, d);
    return m;
}

Measure Measure::scaled(double a) const {
    Measure out(grid_);
    if (a == 0.0) return out;
    out.atoms_ = atoms_;
    for (Atom& at : out.atoms_) at.weight *= a;
    out.density_ = density_;
    for (double& d : out.density_) d *= a;
    return out;
}

Measure operator+(const Measure& mu, const Measure& nu) {
    require_same_grid(mu, nu);
    Measure out = mu;
    for (const Atom& a : nu.atoms_) out.insert_atom(a.location, a.weight);
    if (!nu.density_.empty()) {
        if (out.density_.empty()) {
            out.density_ = nu.density_;
        } else {
            for (std::size_t i = 0; i < out.density_.size(); ++i) out.density_[i] += nu.density_[i];
        }
    }
    return out;
}

Measure operator-(const Measure& mu, const Measure& nu) { return mu + nu.scaled(-1.0); }

double SampledFunction::operator()(double x) const {
    const double h = grid.spacing();
    const double pos = (x + grid.half_width()) / h;
    if (pos <= 0.0) return values.front();
    const auto last = static_cast<double>(grid.size() - 1);
    if (pos >= last) return values.back();
    const auto i = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(i);
    return (1.0 - frac) * values[i] + frac * values[i + 1];
}

double SampledFunction::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

namespace {

template <typename Eval>
double pairing_impl(const Eval& f, const Measure& mu) {
    KahanSum atom_part;
    for (const Atom& a : mu.atoms()) atom_part.add(a.weight * f(a.location));
    double density_part = 0.0;
    if (mu.has_density()) {
        const GridSpec& g = mu.grid();
        const auto d = mu.density();
        density_part = quadrature_of(
            [&](std::size_t i) { return f(g.node(static_cast<int>(i))) * d[i]; }, d.size(),
            g.spacing());
    }
    return atom_part.value() + density_part;
}

}  // namespace

double pairing(const TestFunction& f, const Measure& mu) {
    return pairing_impl([&](double x) { return f(x); }, mu);
}

double pairing(const std::function<double(double)>& f, const Measure& mu) {
    return pairing_impl(f, mu);
}

double pairing(const SampledFunction& f, const Measure& mu) {
    if (f.grid != mu.grid()) throw std::invalid_argument("sampled function grid mismatch");
    // Density part pairs sample-by-sample; atoms interpolate.
    KahanSum atom_part;
    for (const Atom& a : mu.atoms()) atom_part.add(a.weight * f(a.location));
    double density_part = 0.0;
    if (mu.has_density()) {
        const auto d = mu.density();
        density_part = quadrature_of([&](std::size_t i) { return f.values[i] * d[i]; }, d.size(),
                                     mu.grid().spacing());
    }
    return atom_part.value() + density_part;
}

double seminorm(const TestFunction& f, const Measure& mu) { return std::abs(pairing(f, mu)); }

double tv_norm(const Measure& mu) {
    KahanSum atom_part;
    for (const Atom& a : mu.atoms()) atom_part.add(std::abs(a.weight));
    double density_part = 0.0;
    if (mu.has_density()) {
        const auto d = mu.density();
        density_part = quadrature_of([&](std::size_t i) { return std::abs(d[i]); }, d.size(),
                                     mu.grid().spacing());
    }
    return atom_part.value() + density_part;
}

std::pair<Measure, Measure> jordan(const Measure& mu) {
    std::vector<Atom> pos_atoms, neg_atoms;
    for (const Atom& a : mu.atoms()) {
        if (a.weight > 0.0)
            pos_atoms.push_back(a);
        else if (a.weight < 0.0)
            neg_atoms.push_back({a.location, -a.weight});
    }
    Measure pos = Measure::with_atoms(mu.grid(), std::move(pos_atoms));
    Measure neg = Measure::with_atoms(mu.grid(), std::move(neg_atoms));
    if (mu.has_density()) {
        std::vector<double> dp(mu.density().size()), dn(mu.density().size());
        for (std::size_t i = 0; i < dp.size(); ++i) {
            const double v = mu.density()[i];
            dp[i] = v > 0.0 ? v : 0.0;
            dn[i] = v < 0.0 ? -v : 0.0;
        }
        pos = pos + Measure::from_samples(mu.grid(), std::move(dp));
        neg = neg + Measure::from_samples(mu.grid(), std::move(dn));
    }
    return {std::move(pos), std::move(neg)};
}

double AlReport::max_gap() const {
    double m = norm_gap;
    for (const auto& [_, g] : seminorm_gaps) m = std::max(m, g);
    return m;
}

AlReport check_al(const Measure& mu, const Measure& nu) {
    if (!mu.is_positive() || !nu.is_positive())
        throw std::invalid_argument("check_al requires positive measures");
    const Measure sum = mu + nu;
    AlReport report;
    report.norm_gap = std::abs(tv_norm(sum) - tv_norm(mu) - tv_norm(nu));
    for (const TestFunction* f : nonnegative_dictionary()) {
        const double gap = std::abs(seminorm(*f, sum) - seminorm(*f, mu) - seminorm(*f, nu));
        report.seminorm_gaps.emplace_back(f->name(), gap);
    }
    return report;
}

}  // namespace semilab
