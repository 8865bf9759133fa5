#include "semilab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "semilab/fft.hpp"
#include "semilab/util.hpp"

namespace semilab {

namespace {
// Samples below kDropout * peak contribute beneath the 1e-10 agreement
// contract between the direct and transform paths.
constexpr double kDropout = 1e-18;
// Direct summation beats the FFT for kernels supported on few samples.
constexpr int kDirectSupportLimit = 340;
}  // namespace

double HeatKernel::operator()(double x) const {
    return std::exp(-x * x / (2.0 * t)) / std::sqrt(2.0 * kPi * t);
}

double HeatKernel::width() const { return std::sqrt(t); }

double ResolventKernel::operator()(double x) const {
    const double c = std::sqrt(2.0 * lambda);
    return std::exp(-c * std::abs(x)) / c;
}

double ResolventKernel::width() const { return 1.0 / std::sqrt(2.0 * lambda); }

double eval_heat(double t, double x) { return HeatKernel(t)(x); }

double eval_resolvent_kernel(double lambda, double x) { return ResolventKernel(lambda)(x); }

ConvolutionOperator::ConvolutionOperator(const GridSpec& grid, std::function<double(double)> kernel,
                                         ConvolutionMethod method)
    : grid_(grid), kernel_(std::move(kernel)), method_(method) {
    const int n = grid_.size();
    const double h = grid_.spacing();
    samples_.resize(static_cast<std::size_t>(2 * n - 1));
    double peak = 0.0;
    for (int k = 0; k < 2 * n - 1; ++k) {
        const double v = kernel_((k - (n - 1)) * h);
        samples_[static_cast<std::size_t>(k)] = v;
        peak = std::max(peak, std::abs(v));
        if (v < 0.0) nonnegative_ = false;
    }
    support_radius_ = 0;
    const double floor = kDropout * peak;
    for (int k = 0; k < 2 * n - 1; ++k) {
        if (std::abs(samples_[static_cast<std::size_t>(k)]) > floor)
            support_radius_ = std::max(support_radius_, std::abs(k - (n - 1)));
    }
    // reversed copy of the live window, so the direct path runs unit-stride
    const std::size_t lo = static_cast<std::size_t>((n - 1) - support_radius_);
    const std::size_t hi = static_cast<std::size_t>((n - 1) + support_radius_);
    reversed_window_.assign(samples_.rbegin() + (samples_.size() - 1 - hi),
                            samples_.rbegin() + (samples_.size() - lo));
}

std::vector<double> ConvolutionOperator::convolve_samples(std::span<const double> input,
                                                          int pad) const {
    if (input.size() != static_cast<std::size_t>(grid_.size() + 2 * pad))
        throw std::invalid_argument("convolution input length does not match grid");
    ConvolutionMethod m = method_;
    if (m == ConvolutionMethod::Auto)
        m = (2 * support_radius_ + 1 <= kDirectSupportLimit) ? ConvolutionMethod::Direct
                                                             : ConvolutionMethod::Fft;
    return m == ConvolutionMethod::Direct ? convolve_direct(input, pad)
                                          : convolve_fft(input, pad);
}

std::vector<double> ConvolutionOperator::convolve_direct(std::span<const double> input,
                                                         int pad) const {
    const int n = grid_.size();
    const double h = grid_.spacing();
    const int r = support_radius_;
    std::vector<double> out(static_cast<std::size_t>(n), 0.0);
    const int in_len = static_cast<int>(input.size());
    // out_i = h * sum_j K((i + pad - j) h) * input[j]; reversed_window_[u]
    // holds K((u - r) h) mirrored, so both reads run forward in j.
    for (int i = 0; i < n; ++i) {
        const int j_lo = std::max(0, i + pad - r);
        const int j_hi = std::min(in_len - 1, i + pad + r);
        const double* win = reversed_window_.data() + (j_lo - (i + pad - r));
        const double* in = input.data() + j_lo;
        double acc = 0.0;
        for (int j = 0; j <= j_hi - j_lo; ++j) acc += win[j] * in[j];
        out[static_cast<std::size_t>(i)] = h * acc;
    }
    return out;
}

const std::vector<std::complex<double>>& ConvolutionOperator::kernel_fft(
    std::size_t fft_size) const {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = fft_cache_.find(fft_size);
    if (it != fft_cache_.end()) return it->second;
    // live window only: samples_[(n-1) - r .. (n-1) + r]
    const std::size_t lo = static_cast<std::size_t>(grid_.size() - 1 - support_radius_);
    std::vector<std::complex<double>> fk(fft_size);
    for (int u = 0; u <= 2 * support_radius_; ++u)
        fk[static_cast<std::size_t>(u)] = samples_[lo + static_cast<std::size_t>(u)];
    detail::fft_pow2(fk, false);
    return fft_cache_.emplace(fft_size, std::move(fk)).first->second;
}

std::vector<double> ConvolutionOperator::convolve_fft(std::span<const double> input,
                                                      int pad) const {
    const int n = grid_.size();
    const double h = grid_.spacing();
    const int r = support_radius_;
    const std::size_t s = detail::next_pow2(input.size() + 2 * static_cast<std::size_t>(r));
    const auto& fk = kernel_fft(s);
    std::vector<std::complex<double>> fi(s);
    for (std::size_t i = 0; i < input.size(); ++i) fi[i] = input[i];
    detail::fft_pow2(fi, false);
    for (std::size_t i = 0; i < s; ++i) fi[i] *= fk[i];
    detail::fft_pow2(fi, true);
    // Output node i sits at truncated-convolution index i + pad + r.
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = h * fi[static_cast<std::size_t>(i + pad + r)].real();
    return out;
}

Measure ConvolutionOperator::apply(const Measure& mu) const {
    if (mu.grid() != grid_) throw std::invalid_argument("measure grid does not match operator");
    const int n = grid_.size();
    std::vector<double> out(static_cast<std::size_t>(n), 0.0);
    if (mu.has_density()) out = convolve_samples(mu.density());
    for (const Atom& a : mu.atoms()) {
        for (int i = 0; i < n; ++i)
            out[static_cast<std::size_t>(i)] += a.weight * kernel_(grid_.node(i) - a.location);
    }
    // A nonnegative kernel maps positive measures to positive densities; the
    // transform path can leave -1e-17-scale noise, which we floor away.
    if (nonnegative_ && mu.is_positive()) {
        for (double& v : out) v = std::max(v, 0.0);
    }
    return Measure::from_samples(grid_, std::move(out));
}

std::vector<double> convolve(const GridSpec& grid, const std::function<double(double)>& kernel,
                             const Measure& mu, ConvolutionMethod method) {
    if (mu.grid() != grid) throw std::invalid_argument("measure grid does not match request");
    const Measure pushed = ConvolutionOperator(grid, kernel, method).apply(mu);
    if (!pushed.has_density()) return std::vector<double>(static_cast<std::size_t>(grid.size()), 0.0);
    return {pushed.density().begin(), pushed.density().end()};
}

}  // namespace semilab
