#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "semilab/heat_semigroup.hpp"
#include "semilab/measure.hpp"

namespace semilab {

// Nonnegative integrable multiplier psi. Closed-form members carry an exact
// antiderivative, so per-cell averages and the L1 norm hold the singular mass
// exactly instead of losing it to point sampling.
class Potential {
public:
    Potential() : Potential(Kind::Zero, "zero") {}

    static Potential zero();
    static Potential exp_decay();  // e^{-|x|}, L1 norm 2
    // min(|x|^{-1/2}, cap) on [-1, 1]; cap = +infinity leaves the pole in place.
    static Potential sqrt_singular(double cap);
    // Tabulated per-cell averages on a fixed grid.
    static Potential from_samples(const GridSpec& grid, std::vector<double> cell_values);

    double point_value(double x) const;  // may be +inf at an uncapped pole
    double cell_average(double center, double width) const;
    std::vector<double> cell_averages(const GridSpec& grid) const;
    double l1_norm() const;
    const std::string& name() const { return name_; }
    bool is_zero() const { return kind_ == Kind::Zero; }

private:
    enum class Kind { Zero, ExpDecay, SqrtSingular, Table };
    Potential(Kind k, std::string name) : kind_(k), name_(std::move(name)) {}
    double antiderivative(double x) const;  // integral of psi over [0, x], odd in x

    Kind kind_;
    std::string name_;
    double cap_ = 0.0;
    std::optional<GridSpec> table_grid_;
    std::vector<double> table_;
};

struct PotentialPerturbation {
    Potential psi;
};

// B mu = <g, mu> y with g a nonnegative test function and y a positive measure.
struct RankOnePerturbation {
    TestFunction g;
    Measure y;

    RankOnePerturbation(TestFunction g_, Measure y_);
};

using Perturbation = std::variant<PotentialPerturbation, RankOnePerturbation>;

Perturbation zero_perturbation();
bool is_zero(const Perturbation& b);
bool is_rank_one(const Perturbation& b);

Measure apply_B(const Perturbation& b, const Measure& mu);

struct NormEstimate {
    double empirical = 0.0;  // max over probes of tv(B R(lambda) mu) / tv(mu)
    double analytic = 0.0;   // Young bound |psi|_1 / sqrt(2 lambda), resp. |g| |y| / lambda
};
NormEstimate composed_norm_estimate(const Perturbation& b, double lambda,
                                    std::span<const Measure> probes);
double analytic_composed_bound(const Perturbation& b, double lambda);

// trapezoid over [0, t0] of tv(e^{-lambda s} B T(s) mu) / tv(mu).
double mv_integral(const Perturbation& b, const Measure& mu, double t0, double lambda, int steps);

// Falsification probe for p_f(B R(lambda) x) <= K p_q(x) + eps |x|: the best
// (smallest sufficient) K over the probe set, clipped at 0.
double locality_probe(const Perturbation& b, double lambda, const TestFunction& f,
                      const TestFunction& q, double eps, std::span<const Measure> probes);

struct LpSplit {
    std::vector<double> integrable;  // psi where psi > cutoff
    std::vector<double> bounded;     // psi where psi <= cutoff
};
LpSplit lp_split(std::span<const double> psi_samples, double cutoff);

}  // namespace semilab
