#pragma once

#include <complex>
#include <functional>
#include <map>
#include <mutex>
#include <span>
#include <vector>

#include "semilab/grid.hpp"
#include "semilab/measure.hpp"

namespace semilab {

// Centered Gaussian density of variance t: (2*pi*t)^{-1/2} e^{-x^2/(2t)}.
struct HeatKernel {
    double t;
    explicit HeatKernel(double t_) : t(t_) {
        if (!(t > 0.0)) throw std::invalid_argument("heat kernel needs t > 0");
    }
    double operator()(double x) const;
    double width() const;  // standard deviation sqrt(t)
};

// xi_lambda(x) = (2*lambda)^{-1/2} e^{-sqrt(2*lambda)|x|}; integrates to 1/lambda.
struct ResolventKernel {
    double lambda;
    explicit ResolventKernel(double lambda_) : lambda(lambda_) {
        if (!(lambda > 0.0)) throw std::invalid_argument("resolvent kernel needs lambda > 0");
    }
    double operator()(double x) const;
    double total_mass() const { return 1.0 / lambda; }
    double width() const;  // decay length 1/sqrt(2*lambda)
};

double eval_heat(double t, double x);
double eval_resolvent_kernel(double lambda, double x);

enum class ConvolutionMethod { Auto, Direct, Fft };

// Pushes a fixed kernel against measures on a fixed grid:
//   out_i = sum_atoms w_j * K(x_i - y_j)  +  h * (K (*) density)_i.
// The kernel is sampled once on the offset range [-2L, 2L]; tails beyond that
// are dropped. Atom contributions always use the exact evaluator. Building the
// operator is the expensive part; apply() is meant to be called repeatedly.
class ConvolutionOperator {
public:
    ConvolutionOperator(const GridSpec& grid, std::function<double(double)> kernel,
                        ConvolutionMethod method = ConvolutionMethod::Auto);

    const GridSpec& grid() const { return grid_; }

    Measure apply(const Measure& mu) const;

    // h * discrete convolution of the kernel with `input`, where input index j
    // sits at coordinate -L + (j - pad) * h. Standard density input has pad = 0;
    // apply_T_star feeds an extended sampling with pad = n - 1 per side.
    std::vector<double> convolve_samples(std::span<const double> input, int pad = 0) const;

    std::span<const double> kernel_samples() const { return samples_; }
    bool kernel_nonnegative() const { return nonnegative_; }

private:
    std::vector<double> convolve_fft(std::span<const double> input, int pad) const;
    std::vector<double> convolve_direct(std::span<const double> input, int pad) const;
    const std::vector<std::complex<double>>& kernel_fft(std::size_t fft_size) const;

    GridSpec grid_;
    std::function<double(double)> kernel_;
    std::vector<double> samples_;  // 2n-1 offsets, index k at (k - (n-1)) * h
    bool nonnegative_ = true;
    int support_radius_ = 0;  // samples beyond it are below the dropout threshold
    std::vector<double> reversed_window_;
    ConvolutionMethod method_;
    mutable std::mutex cache_mutex_;
    mutable std::map<std::size_t, std::vector<std::complex<double>>> fft_cache_;
};

// One-shot form of the operator above (matches the low-level contract tests).
std::vector<double> convolve(const GridSpec& grid, const std::function<double(double)>& kernel,
                             const Measure& mu, ConvolutionMethod method = ConvolutionMethod::Auto);

}  // namespace semilab
