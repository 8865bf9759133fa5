#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace semilab::detail {

// Smallest power of two >= n.
std::size_t next_pow2(std::size_t n);

// In-place iterative radix-2 transform; size must be a power of two.
void fft_pow2(std::vector<std::complex<double>>& a, bool inverse);

// Full linear convolution, length a.size() + b.size() - 1.
std::vector<double> linear_convolve_fft(std::span<const double> a, std::span<const double> b);
std::vector<double> linear_convolve_direct(std::span<const double> a, std::span<const double> b);

}  // namespace semilab::detail
