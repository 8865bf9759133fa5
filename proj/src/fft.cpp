#include "semilab/fft.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

#include "semilab/util.hpp"

namespace semilab::detail {

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

namespace {

// Twiddle tables per transform size, trig-evaluated per entry. A running
// product w *= wlen drifts by O(n * eps), which is visible against the
// 1e-12 lattice tolerances at the sizes used here.
const std::vector<std::complex<double>>& twiddles(std::size_t n) {
    static std::mutex mutex;
    static std::map<std::size_t, std::vector<std::complex<double>>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<std::complex<double>> tw(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
        const double angle = -2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
        tw[k] = {std::cos(angle), std::sin(angle)};
    }
    return cache.emplace(n, std::move(tw)).first->second;
}

}  // namespace

void fft_pow2(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("fft size must be a power of two");
    if (n == 1) return;

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    const auto& tw = twiddles(n);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                std::complex<double> w = tw[k * stride];
                if (inverse) w = std::conj(w);
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
    if (inverse) {
        const double inv = 1.0 / static_cast<double>(n);
        for (auto& x : a) x *= inv;
    }
}

std::vector<double> linear_convolve_fft(std::span<const double> a, std::span<const double> b) {
    const std::size_t out_len = a.size() + b.size() - 1;
    const std::size_t s = next_pow2(out_len);
    std::vector<std::complex<double>> fa(s), fb(s);
    for (std::size_t i = 0; i < a.size(); ++i) fa[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) fb[i] = b[i];
    fft_pow2(fa, false);
    fft_pow2(fb, false);
    for (std::size_t i = 0; i < s; ++i) fa[i] *= fb[i];
    fft_pow2(fa, true);
    std::vector<double> out(out_len);
    for (std::size_t i = 0; i < out_len; ++i) out[i] = fa[i].real();
    return out;
}

std::vector<double> linear_convolve_direct(std::span<const double> a, std::span<const double> b) {
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double ai = a[i];
        if (ai == 0.0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += ai * b[j];
    }
    return out;
}

}  // namespace semilab::detail
