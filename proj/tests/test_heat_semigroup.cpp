#include <doctest.h>

#include <array>
#include <cmath>

#include "oracles.hpp"
#include "semilab/heat_semigroup.hpp"

using namespace semilab;

namespace {
GridSpec default_grid() { return GridSpec(20.0, 16385); }
}

TEST_SUITE("heat_semigroup") {

TEST_CASE("identity at t = 0 and domain errors") {
    const GridSpec g = default_grid();
    const Measure mu = Measure::dirac(g, 0.5) + Measure::gaussian(g, 1.0);
    const Measure same = apply_T(0.0, mu);
    CHECK(tv_norm(same - mu) == 0.0);
    CHECK_THROWS_AS(apply_T(-0.5, mu), std::invalid_argument);
    CHECK_THROWS_AS(apply_T(1e-9, Measure::gaussian(g, 1.0)), std::domain_error);
    // any positive time absorbs atoms into the density
    const Measure pushed = apply_T(0.01, mu);
    CHECK(!pushed.has_atoms());
    CHECK(pushed.has_density());
}

TEST_CASE("characteristic function anchor") {
    const GridSpec g = default_grid();
    const Measure delta0 = Measure::dirac(g, 0.0);
    const TestFunction& cos1 = dictionary_fn("cos_1");
    for (double t : {0.5, 1.0, 2.0})
        CHECK(std::abs(pairing(cos1, apply_T(t, delta0)) - std::exp(-t / 2.0)) <= 1e-8);
    // frequency-2 probe decays four times as fast
    const TestFunction& cos2 = dictionary_fn("cos_2");
    for (double t : {0.5, 1.0})
        CHECK(std::abs(pairing(cos2, apply_T(t, delta0)) - std::exp(-2.0 * t)) <= 1e-8);
}

TEST_CASE("semigroup law in dictionary seminorms") {
    const GridSpec g = default_grid();
    const Measure delta0 = Measure::dirac(g, 0.0);
    const Measure two_step = apply_T(1.0, apply_T(1.0, delta0));
    const Measure one_step = apply_T(2.0, delta0);
    for (const TestFunction& f : dictionary()) CHECK(seminorm(f, two_step - one_step) <= 1e-6);
}

TEST_CASE("contraction and positivity") {
    const GridSpec g = default_grid();
    const Measure positive = Measure::gaussian(g, 0.5) + Measure::dirac(g, 1.0, 0.5);
    const Measure signed_mu = positive - Measure::dirac(g, -3.0, 0.4);
    for (double t : {0.1, 1.0}) {
        CHECK(tv_norm(apply_T(t, signed_mu)) <= tv_norm(signed_mu) + 1e-8);
        CHECK(std::abs(tv_norm(apply_T(t, positive)) - tv_norm(positive)) <= 1e-8);
        CHECK(apply_T(t, positive).min_component() >= 0.0);
    }
}

TEST_CASE("preadjoint samples") {
    const GridSpec g = default_grid();
    const TestFunction& one = dictionary_fn("const1");
    const TestFunction& cos1 = dictionary_fn("cos_1");

    const SampledFunction id0 = apply_T_star(g, 0.0, cos1);
    CHECK(id0.values[static_cast<std::size_t>(g.center_index())] == 1.0);

    const SampledFunction ones = apply_T_star(g, 0.7, one);
    for (int i : {0, 1000, g.center_index(), g.size() - 1})
        CHECK(ones.values[static_cast<std::size_t>(i)] == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(ones.max_abs() <= one.sup_norm() + 1e-12);

    for (double t : {0.3, 1.0}) {
        const SampledFunction smooth = apply_T_star(g, t, cos1);
        double worst = 0.0;
        for (int i = 0; i < g.size(); ++i)
            worst = std::max(worst, std::abs(smooth.values[static_cast<std::size_t>(i)] -
                                             std::exp(-t / 2.0) * std::cos(g.node(i))));
        CHECK(worst <= 1e-8);
        CHECK(smooth.max_abs() <= cos1.sup_norm() + 1e-12);
    }
}

TEST_CASE("duality across the dictionary") {
    const GridSpec g = default_grid();
    const Measure delta0 = Measure::dirac(g, 0.0);
    const Measure gauss = Measure::gaussian(g, 1.0);

    CHECK(duality_residual(dictionary_fn("const1"), 0.4, delta0) <= 1e-10);
    CHECK(duality_residual(dictionary_fn("cos_1"), 1.0, delta0) <= 1e-8);

    // cross-check one pairing against the independent quadrature oracle
    const double lhs = pairing(dictionary_fn("gauss_bump"), apply_T(0.5, gauss));
    const double by_oracle =
        oracle::gauss_expectation([](double x) { return std::exp(-x * x); }, 1.5);
    CHECK(std::abs(lhs - by_oracle) <= 1e-6);
    CHECK(duality_residual(dictionary_fn("gauss_bump"), 0.5, gauss) <= 1e-6);

    for (const TestFunction& f : dictionary())
        for (double t : {0.5, 1.0}) {
            CHECK(duality_residual(f, t, delta0) <= 1e-6);
            CHECK(duality_residual(f, t, gauss) <= 1e-6);
        }
}

TEST_CASE("resolvent anchors") {
    const GridSpec g = default_grid();
    const Measure delta0 = Measure::dirac(g, 0.0);
    const TestFunction& one = dictionary_fn("const1");
    for (double lambda : {1.0, 2.0, 8.0})
        CHECK(std::abs(pairing(one, resolvent(lambda, delta0)) - 1.0 / lambda) <= 1e-4);
    // Delta cos = -cos, so <cos, R(1) delta0> = 1 / (1 + 1/2)
    CHECK(std::abs(pairing(dictionary_fn("cos_1"), resolvent(1.0, delta0)) - 2.0 / 3.0) <= 1e-4);
    CHECK(tv_norm(resolvent(1.0, Measure::zero(g))) == 0.0);
    CHECK(resolvent(2.0, Measure::gaussian(g, 1.0)).min_component() >= 0.0);
    CHECK_THROWS_AS(resolvent(0.0, delta0), std::invalid_argument);
    CHECK_THROWS_AS(resolvent(-1.0, delta0), std::invalid_argument);
}

TEST_CASE("resolvent is linear") {
    const GridSpec g = default_grid();
    const Measure a = Measure::dirac(g, 0.0);
    const Measure b = Measure::gaussian(g, 0.7);
    const Measure lhs = resolvent(2.0, a + 0.5 * b);
    const Measure rhs = resolvent(2.0, a) + 0.5 * resolvent(2.0, b);
    for (const TestFunction& f : dictionary()) CHECK(seminorm(f, lhs - rhs) <= 1e-12);
}

TEST_CASE("resolvent identity") {
    const GridSpec g = default_grid();
    const Measure mu = Measure::dirac(g, 0.0) + 0.5 * Measure::gaussian(g, 1.0);
    for (double lambda : {1.0, 2.0})
        for (double kappa : {1.0, 2.0}) {
            const Measure lhs = resolvent(lambda, mu) - resolvent(kappa, mu);
            const Measure rhs = (kappa - lambda) * resolvent(lambda, resolvent(kappa, mu));
            for (const TestFunction& f : dictionary()) CHECK(seminorm(f, lhs - rhs) <= 1e-3);
        }
}

TEST_CASE("laplace transform route matches the kernel route") {
    const GridSpec g = default_grid();
    const Measure delta0 = Measure::dirac(g, 0.0);
    CHECK(laplace_residual(1.0, dictionary_fn("cos_1"), delta0, 30.0, 600) <= 1e-3);
    // trapezoid-in-time error oracle for lambda = 8 on [0, 5] with 400 steps:
    // the residual is (h^2/12) |g'(0)| with g(t) = e^{-8 t}, about 1.04e-4
    const double residual8 = laplace_residual(8.0, dictionary_fn("const1"), delta0, 5.0, 400);
    const double predicted = std::pow(5.0 / 400.0, 2) / 12.0 * 8.0;
    CHECK(residual8 <= 1.5e-4);
    CHECK(residual8 == doctest::Approx(predicted).epsilon(0.05));
    CHECK(laplace_residual(2.0, dictionary_fn("sin_1"), Measure::zero(g), 10.0, 100) == 0.0);
}

TEST_CASE("strong tau-continuity modulus") {
    const GridSpec g = default_grid();
    const std::array<double, 3> ts = {0.1, 0.01, 0.001};
    const auto moduli = bicontinuity_probe(Measure::dirac(g, 0.0), dictionary_fn("cos_1"), ts);
    for (std::size_t i = 0; i < ts.size(); ++i)
        CHECK(moduli[i] == doctest::Approx(1.0 - std::exp(-ts[i] / 2.0)).epsilon(1e-6));
    CHECK(moduli[0] > moduli[1]);
    CHECK(moduli[1] > moduli[2]);

    const auto conserved =
        bicontinuity_probe(Measure::gaussian(g, 1.0), dictionary_fn("const1"), ts);
    for (double v : conserved) CHECK(v <= 1e-8);

    const std::array<double, 1> zero_t = {0.0};
    CHECK(bicontinuity_probe(Measure::gaussian(g, 1.0), dictionary_fn("cos_1"), zero_t)[0] == 0.0);
}

TEST_CASE("local bi-equicontinuity modulus") {
    const GridSpec g = default_grid();
    std::vector<Measure> null_seq;
    for (int n = 1; n <= 8; n *= 2)
        null_seq.push_back(Measure::dirac(g, 0.0) - Measure::dirac(g, 1.0 / n));
    const auto sups = equicontinuity_probe(null_seq, 1.0, dictionary_fn("cos_1"));
    for (std::size_t i = 0; i < sups.size(); ++i) {
        const double a = 1.0 / static_cast<double>(1 << i);
        CHECK(sups[i] <= a + 1e-9);  // mean-value bound Lip(cos) * a
        if (i > 0) CHECK(sups[i] < sups[i - 1]);
    }

    const std::vector<Measure> zeros(3, Measure::zero(g));
    for (double v : equicontinuity_probe(zeros, 1.0, dictionary_fn("cos_1"))) CHECK(v == 0.0);

    // a non-null sequence keeps mass one: correctly fails to decay
    std::vector<Measure> mass_seq;
    for (int n = 1; n <= 4; n *= 2) mass_seq.push_back(Measure::dirac(g, 1.0 / n));
    for (double v : equicontinuity_probe(mass_seq, 1.0, dictionary_fn("const1")))
        CHECK(v == doctest::Approx(1.0).epsilon(1e-8));
}

}  // TEST_SUITE
