#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "semilab/matrix_oracle.hpp"

using namespace semilab;

namespace {

SquareMatrix coupled_pair() {
    // A + B = [[-2, 1], [1, -2]], eigenvalues -1 and -3
    SquareMatrix m(2);
    m.at(0, 0) = -2.0;
    m.at(0, 1) = 1.0;
    m.at(1, 0) = 1.0;
    m.at(1, 1) = -2.0;
    return m;
}

SquareMatrix diag_minus_two() {
    SquareMatrix a(2);
    a.at(0, 0) = -2.0;
    a.at(1, 1) = -2.0;
    return a;
}

SquareMatrix swap_matrix() {
    SquareMatrix b(2);
    b.at(0, 1) = 1.0;
    b.at(1, 0) = 1.0;
    return b;
}

}  // namespace

TEST_SUITE("matrix_oracle") {

TEST_CASE("exponential closed forms") {
    const SquareMatrix zero(3);
    const SquareMatrix id = expm(zero, 2.0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(id.at(i, j) == (i == j ? 1.0 : 0.0));

    // e^{t M} for M = -2I + swap: e^{-2} [[cosh 1, sinh 1], [sinh 1, cosh 1]]
    const SquareMatrix e = expm(coupled_pair(), 1.0);
    const double c = std::exp(-2.0) * std::cosh(1.0);
    const double s = std::exp(-2.0) * std::sinh(1.0);
    CHECK(std::abs(e.at(0, 0) - c) <= 1e-12);
    CHECK(std::abs(e.at(1, 1) - c) <= 1e-12);
    CHECK(std::abs(e.at(0, 1) - s) <= 1e-12);
    CHECK(std::abs(e.at(1, 0) - s) <= 1e-12);
    CHECK(e.at(0, 0) == doctest::Approx(0.20880).epsilon(1e-4));
    CHECK(e.at(0, 1) == doctest::Approx(0.15903).epsilon(1e-4));

    // semigroup law
    const SquareMatrix lhs = expm(coupled_pair(), 1.3) * expm(coupled_pair(), 0.4);
    const SquareMatrix rhs = expm(coupled_pair(), 1.7);
    CHECK((lhs - rhs).max_abs() <= 1e-12);

    CHECK_THROWS_AS(expm(coupled_pair(), -1.0), std::invalid_argument);
    CHECK_THROWS_AS(SquareMatrix(9), std::invalid_argument);
}

TEST_CASE("inverse by elimination") {
    const SquareMatrix m = coupled_pair();
    const SquareMatrix inv = inverse(m);
    CHECK((m * inv - SquareMatrix::identity(2)).max_abs() <= 1e-14);
    CHECK_THROWS_AS(inverse(SquareMatrix(2)), std::runtime_error);
}

TEST_CASE("neumann series vs direct inverse") {
    const auto cmp = neumann_vs_direct(diag_minus_two(), swap_matrix(), 3.0, 20);
    CHECK(cmp.ratio == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(cmp.difference <= 1e-10);
    CHECK(cmp.tail_bound <= 1e-13);

    // hand-inverted reference: (1/24) [[5, 1], [1, 5]]
    const SquareMatrix direct =
        inverse(SquareMatrix::identity(2).scaled(3.0) - diag_minus_two() - swap_matrix());
    CHECK(direct.at(0, 0) == doctest::Approx(5.0 / 24.0).epsilon(1e-14));
    CHECK(direct.at(0, 1) == doctest::Approx(1.0 / 24.0).epsilon(1e-14));

    // B = 0 collapses to the plain resolvent
    const auto trivial = neumann_vs_direct(diag_minus_two(), SquareMatrix(2), 3.0, 5);
    CHECK(trivial.difference == 0.0);

    // resolvent decay: both sides shrink as lambda grows
    const auto far = neumann_vs_direct(diag_minus_two(), swap_matrix(), 300.0, 20);
    CHECK(far.difference <= 1e-14);
    CHECK(matrix_resolvent(diag_minus_two(), 300.0).max_abs() <= 1.0 / 298.0 + 1e-12);

    // contraction ratio at 1 or above is refused
    SquareMatrix big_b(2);
    big_b.at(0, 0) = 10.0;
    big_b.at(1, 1) = 10.0;
    CHECK_THROWS_AS(neumann_vs_direct(diag_minus_two(), big_b, 3.0, 10), std::runtime_error);
}

TEST_CASE("random positive systems stay positive") {
    const auto report = voigt_property_test(200, 7);
    CHECK(report.trials == 200);
    CHECK(report.failures == 0);

    // a different seed and dimension
    CHECK(voigt_property_test(50, 12345, 6).failures == 0);

    // negative control: a non-Metzler generator leaks negative entries
    SquareMatrix bad(2);
    bad.at(0, 1) = -1.0;
    CHECK(!is_metzler(bad));
    CHECK(expm(bad, 1.0).min_entry() < 0.0);
}

TEST_CASE("metzler draws are metzler and contracting") {
    for (std::uint64_t seed : {1ull, 99ull}) {
        const SquareMatrix a = random_metzler(seed, 5);
        CHECK(is_metzler(a));
        for (int t : {1, 5}) CHECK(entrywise_nonneg(expm(a, t), 1e-13));
        // row sums of A are <= -u < 0: rows of e^{A} stay substochastic
        const SquareMatrix e = expm(a, 1.0);
        for (int i = 0; i < 5; ++i) {
            double row = 0.0;
            for (int j = 0; j < 5; ++j) row += e.at(i, j);
            CHECK(row <= 1.0 + 1e-13);
        }
    }
}

TEST_CASE("l1 additivity on the positive cone") {
    const SquareMatrix b1 = random_nonneg(3, 4);
    const SquareMatrix b2 = random_nonneg(4, 4);
    const SquareMatrix sum = b1 + b2;
    // no cancellation on nonnegative entries: additivity holds to the last ulp
    for (int j = 0; j < 4; ++j) {
        double c1 = 0.0, c2 = 0.0, cs = 0.0;
        for (int i = 0; i < 4; ++i) {
            c1 += b1.at(i, j);
            c2 += b2.at(i, j);
            cs += sum.at(i, j);
        }
        CHECK(std::abs(cs - (c1 + c2)) <= 1e-14 * (1.0 + cs));
    }
}

TEST_CASE("validated systems") {
    const MatrixSystem sys(random_metzler(5, 4), random_nonneg(6, 4));
    CHECK(sys.dimension() == 4);
    // the safe lambda really sits in both resolvent sets, positively
    CHECK(entrywise_nonneg(matrix_resolvent(sys.generator, sys.safe_lambda()), 1e-14));
    CHECK(entrywise_nonneg(
        inverse(SquareMatrix::identity(4).scaled(sys.safe_lambda()) - sys.generator -
                sys.perturbation),
        1e-14));

    SquareMatrix not_metzler(2);
    not_metzler.at(0, 1) = -1.0;
    CHECK_THROWS_AS(MatrixSystem(not_metzler, SquareMatrix(2)), std::invalid_argument);
    SquareMatrix negative(2);
    negative.at(0, 0) = -0.5;
    CHECK_THROWS_AS(MatrixSystem(random_metzler(5, 2), negative), std::invalid_argument);
    CHECK_THROWS_AS(MatrixSystem(random_metzler(5, 2), random_nonneg(6, 3)),
                    std::invalid_argument);
}

TEST_CASE("resolvent monotonicity along the homotopy") {
    const SquareMatrix a = random_metzler(21, 4);
    const SquareMatrix b = random_nonneg(22, 4);
    const double lambda = a.l1_induced_norm() + b.l1_induced_norm() + 1.0;
    SquareMatrix previous = matrix_resolvent(a, lambda);
    for (double s : {0.25, 0.5, 0.75, 1.0}) {
        const SquareMatrix current = inverse(
            SquareMatrix::identity(4).scaled(lambda) - a - b.scaled(s));
        CHECK(entrywise_leq(previous, current, 1e-12));
        previous = current;
    }
}

TEST_CASE("duhamel iteration against the exact exponential") {
    const SquareMatrix a = diag_minus_two();
    const SquareMatrix b = swap_matrix();

    CHECK(dyson_vs_expm(a, SquareMatrix(2), 1.0, 6, 64) <= 1e-14);
    CHECK(dyson_vs_expm(a, b, 1.0, 12, 256) <= 1e-6);

    // trapezoid order: error falls fourfold per node doubling
    const double e1 = dyson_vs_expm(a, b, 1.0, 16, 32);
    const double e2 = dyson_vs_expm(a, b, 1.0, 16, 64);
    const double e3 = dyson_vs_expm(a, b, 1.0, 16, 128);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.25));
    CHECK(e2 / e3 == doctest::Approx(4.0).epsilon(0.25));

    // the same variation-of-parameters sign holds at matrix scale:
    // T(t) - S(t) + integral T(t-s) B S(s) ds = 0
    const int m = 128;
    const double t = 1.0;
    const SquareMatrix s_sum = dyson_matrix_sum(a, b, t, 16, m);
    const double dt = t / m;
    SquareMatrix integral(2);
    for (int j = 0; j <= m; ++j) {
        const double w = (j == 0 || j == m) ? 0.5 : 1.0;
        const SquareMatrix term =
            expm(a, t - j * dt) * b * dyson_matrix_sum(a, b, std::max(j * dt, 1e-12), 16, 16);
        integral = integral + term.scaled(w * dt);
    }
    const SquareMatrix minus_arrangement = expm(a, t) - s_sum + integral;
    const SquareMatrix plus_arrangement = expm(a, t) - s_sum - integral;
    CHECK(minus_arrangement.max_abs() <= 1e-3);
    CHECK(plus_arrangement.max_abs() >= 0.05);
}

}  // TEST_SUITE
