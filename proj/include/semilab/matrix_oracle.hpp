#pragma once

#include <cstdint>
#include <vector>

namespace semilab {

// Dense square matrix capped at dimension 8. The oracle exists for exactness,
// not throughput: (R^n, l1) is an AL space where everything the measure-side
// machinery claims can be checked against closed forms.
class SquareMatrix {
public:
    explicit SquareMatrix(int n);
    static SquareMatrix identity(int n);

    int size() const { return n_; }
    double& at(int i, int j) { return data_[static_cast<std::size_t>(i * n_ + j)]; }
    double at(int i, int j) const { return data_[static_cast<std::size_t>(i * n_ + j)]; }

    SquareMatrix operator+(const SquareMatrix& other) const;
    SquareMatrix operator-(const SquareMatrix& other) const;
    SquareMatrix operator*(const SquareMatrix& other) const;
    SquareMatrix scaled(double a) const;

    double max_abs() const;
    double min_entry() const;
    double l1_induced_norm() const;  // max column sum of absolute values

private:
    int n_;
    std::vector<double> data_;
};

bool is_metzler(const SquareMatrix& a);
bool entrywise_nonneg(const SquareMatrix& a, double tolerance = 0.0);
bool entrywise_leq(const SquareMatrix& a, const SquareMatrix& b, double tolerance = 0.0);

// A validated finite-dimensional instance: Metzler generator plus an
// entrywise-nonnegative perturbation on (R^n, l1).
struct MatrixSystem {
    SquareMatrix generator;     // Metzler
    SquareMatrix perturbation;  // entrywise >= 0

    MatrixSystem(SquareMatrix a, SquareMatrix b);

    int dimension() const { return generator.size(); }
    // lambda safely inside the resolvent set of both A and A + B
    double safe_lambda() const {
        return generator.l1_induced_norm() + perturbation.l1_induced_norm() + 1.0;
    }
};

// Scaling-and-squaring with a truncated series; remainder below 1e-13 at the
// allowed sizes. Requires t >= 0.
SquareMatrix expm(const SquareMatrix& m, double t);

// Gaussian elimination with partial pivoting.
SquareMatrix inverse(const SquareMatrix& m);

SquareMatrix matrix_resolvent(const SquareMatrix& a, double lambda);  // (lambda I - A)^{-1}

struct NeumannComparison {
    double difference;  // max abs entry gap between direct inverse and partial sum
    double ratio;       // |B (lambda I - A)^{-1}| driving the geometric series
    double tail_bound;  // ratio^{terms+1} / (1 - ratio) * |R|
};

// Throws when the contraction ratio reaches 1.
NeumannComparison neumann_vs_direct(const SquareMatrix& a, const SquareMatrix& b, double lambda,
                                    int terms);

struct VoigtReport {
    int trials = 0;
    int failures = 0;
};

// Random Metzler A + nonnegative B: resolvent positivity and semigroup
// positivity of A + B, counted over `trials` draws.
VoigtReport voigt_property_test(int trials, std::uint64_t seed, int dim = 4);

// |sum_{k<=levels} U_k(t) - e^{t(A+B)}|_max with the same Duhamel iteration
// the measure side uses (trapezoid with quad_nodes nodes per level).
double dyson_vs_expm(const SquareMatrix& a, const SquareMatrix& b, double t, int levels,
                     int quad_nodes);

// Finite-dimensional Duhamel partial sum itself (for sign/monotonicity tests).
SquareMatrix dyson_matrix_sum(const SquareMatrix& a, const SquareMatrix& b, double t, int levels,
                              int quad_nodes);

SquareMatrix random_metzler(std::uint64_t seed, int dim);
SquareMatrix random_nonneg(std::uint64_t seed, int dim);

}  // namespace semilab
