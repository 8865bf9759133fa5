#include "semilab/matrix_oracle.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace semilab {

namespace {

constexpr int kMaxDim = 8;

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

SquareMatrix::SquareMatrix(int n) : n_(n), data_(static_cast<std::size_t>(n) * n, 0.0) {
    if (n < 1 || n > kMaxDim) throw std::invalid_argument("matrix dimension must be in [1, 8]");
}

SquareMatrix SquareMatrix::identity(int n) {
    SquareMatrix m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

SquareMatrix SquareMatrix::operator+(const SquareMatrix& other) const {
    if (n_ != other.n_) throw std::invalid_argument("matrix size mismatch");
    SquareMatrix out(n_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] + other.data_[i];
    return out;
}

SquareMatrix SquareMatrix::operator-(const SquareMatrix& other) const {
    return *this + other.scaled(-1.0);
}

SquareMatrix SquareMatrix::operator*(const SquareMatrix& other) const {
    if (n_ != other.n_) throw std::invalid_argument("matrix size mismatch");
    SquareMatrix out(n_);
    for (int i = 0; i < n_; ++i)
        for (int k = 0; k < n_; ++k) {
            const double aik = at(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < n_; ++j) out.at(i, j) += aik * other.at(k, j);
        }
    return out;
}

SquareMatrix SquareMatrix::scaled(double a) const {
    SquareMatrix out(n_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = a * data_[i];
    return out;
}

double SquareMatrix::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

double SquareMatrix::min_entry() const {
    double m = data_.empty() ? 0.0 : data_[0];
    for (double v : data_) m = std::min(m, v);
    return m;
}

double SquareMatrix::l1_induced_norm() const {
    double worst = 0.0;
    for (int j = 0; j < n_; ++j) {
        double col = 0.0;
        for (int i = 0; i < n_; ++i) col += std::abs(at(i, j));
        worst = std::max(worst, col);
    }
    return worst;
}

bool is_metzler(const SquareMatrix& a) {
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < a.size(); ++j)
            if (i != j && a.at(i, j) < 0.0) return false;
    return true;
}

bool entrywise_nonneg(const SquareMatrix& a, double tolerance) {
    return a.min_entry() >= -tolerance;
}

bool entrywise_leq(const SquareMatrix& a, const SquareMatrix& b, double tolerance) {
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < a.size(); ++j)
            if (a.at(i, j) > b.at(i, j) + tolerance) return false;
    return true;
}

MatrixSystem::MatrixSystem(SquareMatrix a, SquareMatrix b)
    : generator(std::move(a)), perturbation(std::move(b)) {
    if (generator.size() != perturbation.size())
        throw std::invalid_argument("system matrices must share a dimension");
    if (!is_metzler(generator))
        throw std::invalid_argument("generator must be Metzler");
    if (!entrywise_nonneg(perturbation))
        throw std::invalid_argument("perturbation must be entrywise nonnegative");
}

SquareMatrix expm(const SquareMatrix& m, double t) {
    if (t < 0.0) throw std::invalid_argument("expm: t must be >= 0");
    const int n = m.size();
    SquareMatrix x = m.scaled(t);
    int squarings = 0;
    double norm = x.l1_induced_norm();
    while (norm > 0.5) {
        x = x.scaled(0.5);
        norm *= 0.5;
        ++squarings;
    }
    // truncated series on the scaled matrix; terms decay at least like 1/k! 2^k
    SquareMatrix sum = SquareMatrix::identity(n);
    SquareMatrix term = SquareMatrix::identity(n);
    for (int k = 1; k <= 40; ++k) {
        term = (term * x).scaled(1.0 / k);
        sum = sum + term;
        if (term.max_abs() < 1e-18 * std::max(1.0, sum.max_abs())) break;
    }
    for (int s = 0; s < squarings; ++s) sum = sum * sum;
    return sum;
}

SquareMatrix inverse(const SquareMatrix& m) {
    const int n = m.size();
    SquareMatrix a = m;
    SquareMatrix inv = SquareMatrix::identity(n);
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a.at(r, col)) > std::abs(a.at(pivot, col))) pivot = r;
        if (a.at(pivot, col) == 0.0) throw std::runtime_error("matrix is singular");
        if (pivot != col) {
            for (int j = 0; j < n; ++j) {
                std::swap(a.at(pivot, j), a.at(col, j));
                std::swap(inv.at(pivot, j), inv.at(col, j));
            }
        }
        const double d = a.at(col, col);
        for (int j = 0; j < n; ++j) {
            a.at(col, j) /= d;
            inv.at(col, j) /= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a.at(r, col);
            if (f == 0.0) continue;
            for (int j = 0; j < n; ++j) {
                a.at(r, j) -= f * a.at(col, j);
                inv.at(r, j) -= f * inv.at(col, j);
            }
        }
    }
    return inv;
}

SquareMatrix matrix_resolvent(const SquareMatrix& a, double lambda) {
    return inverse(SquareMatrix::identity(a.size()).scaled(lambda) - a);
}

NeumannComparison neumann_vs_direct(const SquareMatrix& a, const SquareMatrix& b, double lambda,
                                    int terms) {
    const SquareMatrix r = matrix_resolvent(a, lambda);
    const SquareMatrix br = b * r;
    const double ratio = br.l1_induced_norm();
    if (ratio >= 1.0)
        throw std::runtime_error("neumann comparison refused: contraction ratio is not below 1");
    SquareMatrix partial = SquareMatrix::identity(a.size());
    SquareMatrix power = SquareMatrix::identity(a.size());
    for (int k = 1; k <= terms; ++k) {
        power = br * power;
        partial = partial + power;
    }
    const SquareMatrix series = r * partial;
    const SquareMatrix direct = inverse(
        SquareMatrix::identity(a.size()).scaled(lambda) - a - b);
    NeumannComparison cmp;
    cmp.ratio = ratio;
    cmp.difference = (series - direct).max_abs();
    cmp.tail_bound = std::pow(ratio, terms + 1) / (1.0 - ratio) * r.l1_induced_norm();
    return cmp;
}

SquareMatrix random_metzler(std::uint64_t seed, int dim) {
    std::mt19937_64 rng(seed);
    SquareMatrix a(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            if (i != j) a.at(i, j) = uniform01(rng);
    for (int i = 0; i < dim; ++i) {
        double row = 0.0;
        for (int j = 0; j < dim; ++j)
            if (i != j) row += a.at(i, j);
        a.at(i, i) = -row - uniform01(rng);  // sub-generator: strictly diagonally dominant
    }
    return a;
}

SquareMatrix random_nonneg(std::uint64_t seed, int dim) {
    std::mt19937_64 rng(seed);
    SquareMatrix b(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) b.at(i, j) = uniform01(rng);
    return b;
}

VoigtReport voigt_property_test(int trials, std::uint64_t seed, int dim) {
    if (trials < 1) throw std::invalid_argument("voigt test needs at least one trial");
    VoigtReport report;
    report.trials = trials;
    for (int trial = 0; trial < trials; ++trial) {
        const SquareMatrix a = random_metzler(seed ^ (0x9e3779b97f4a7c15ull * (2 * trial + 1)), dim);
        const SquareMatrix b = random_nonneg(seed ^ (0xd1b54a32d192ed03ull * (2 * trial + 2)), dim);
        const double lambda = a.l1_induced_norm() + b.l1_induced_norm() + 1.0;
        const SquareMatrix sum = a + b;
        bool ok = entrywise_nonneg(inverse(SquareMatrix::identity(dim).scaled(lambda) - sum), 1e-12);
        for (double t : {0.1, 1.0, 5.0}) ok = ok && entrywise_nonneg(expm(sum, t), 1e-12);
        if (!ok) ++report.failures;
    }
    return report;
}

SquareMatrix dyson_matrix_sum(const SquareMatrix& a, const SquareMatrix& b, double t, int levels,
                              int quad_nodes) {
    if (!(t > 0.0)) throw std::invalid_argument("dyson sum needs t > 0");
    if (levels < 1 || quad_nodes < 8) throw std::invalid_argument("bad series parameters");
    const int n = a.size();
    const int m = quad_nodes;
    const double dt = t / m;
    const SquareMatrix e1 = expm(a, dt);

    std::vector<SquareMatrix> level;
    level.reserve(static_cast<std::size_t>(m) + 1);
    level.push_back(SquareMatrix::identity(n));
    for (int j = 0; j < m; ++j) level.push_back(e1 * level.back());

    std::vector<SquareMatrix> acc = level;
    for (int k = 1; k <= levels; ++k) {
        std::vector<SquareMatrix> v;
        v.reserve(level.size());
        for (const SquareMatrix& u : level) v.push_back(b * u);
        std::vector<SquareMatrix> next;
        next.reserve(level.size());
        next.push_back(SquareMatrix(n));
        SquareMatrix pending = v[0].scaled(0.5);
        for (int i = 1; i <= m; ++i) {
            const SquareMatrix prefix = e1 * pending;
            next.push_back((prefix + v[static_cast<std::size_t>(i)].scaled(0.5)).scaled(dt));
            pending = prefix + v[static_cast<std::size_t>(i)];
        }
        level = std::move(next);
        for (std::size_t j = 0; j < acc.size(); ++j) acc[j] = acc[j] + level[j];
    }
    return acc.back();
}

double dyson_vs_expm(const SquareMatrix& a, const SquareMatrix& b, double t, int levels,
                     int quad_nodes) {
    const SquareMatrix series = dyson_matrix_sum(a, b, t, levels, quad_nodes);
    return (series - expm(a + b, t)).max_abs();
}

}  // namespace semilab
