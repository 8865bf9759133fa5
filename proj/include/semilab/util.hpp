#pragma once

#include <cmath>
#include <cstdlib>
#include <functional>
#include <span>
#include <string>
#include <thread>
#include <vector>

namespace semilab {

inline constexpr double kPi = 3.14159265358979323846;

// Compensated (Kahan) accumulator. The lattice identities in the test surface
// are checked to 1e-12 on grids with ~2e4 nodes, so plain left-to-right
// summation noise (~n*eps) is not acceptable.
class KahanSum {
public:
    void add(double x) {
        const double y = x - comp_;
        const double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double kahan_total(std::span<const double> xs) {
    KahanSum s;
    for (double x : xs) s.add(x);
    return s.value();
}

// Composite trapezoid over uniformly spaced samples with spacing h.
inline double trapezoid(std::span<const double> samples, double h) {
    if (samples.size() < 2) return 0.0;
    KahanSum s;
    s.add(0.5 * samples.front());
    for (std::size_t i = 1; i + 1 < samples.size(); ++i) s.add(samples[i]);
    s.add(0.5 * samples.back());
    return h * s.value();
}

// Number of worker threads: SEMIGROUP_LAB_THREADS caps it when set.
inline unsigned thread_budget() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* cap = std::getenv("SEMIGROUP_LAB_THREADS")) {
        const long v = std::strtol(cap, nullptr, 10);
        if (v >= 1 && static_cast<unsigned>(v) < hw) hw = static_cast<unsigned>(v);
    }
    return hw;
}

// Index-parallel loop with deterministic work assignment. Results must be
// written to preallocated slots; the caller observes them in index order.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
    const unsigned workers = thread_budget();
    if (workers <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace semilab
