#include "semilab/test_function.hpp"

#include <cmath>

namespace semilab {

const std::vector<TestFunction>& dictionary() {
    static const std::vector<TestFunction> dict = [] {
        std::vector<TestFunction> v;
        v.emplace_back(
            "const1", [](double) { return 1.0; }, 1.0, Smoothness::Smooth, true,
            [](double) { return 0.0; }, [](double) { return 0.0; });
        v.emplace_back(
            "cos_1", [](double x) { return std::cos(x); }, 1.0, Smoothness::Smooth, false,
            [](double x) { return -std::sin(x); }, [](double x) { return -std::cos(x); });
        v.emplace_back(
            "cos_2", [](double x) { return std::cos(2.0 * x); }, 1.0, Smoothness::Smooth, false,
            [](double x) { return -2.0 * std::sin(2.0 * x); },
            [](double x) { return -4.0 * std::cos(2.0 * x); });
        v.emplace_back(
            "sin_1", [](double x) { return std::sin(x); }, 1.0, Smoothness::Smooth, false,
            [](double x) { return std::cos(x); }, [](double x) { return -std::sin(x); });
        v.emplace_back(
            "gauss_bump", [](double x) { return std::exp(-x * x); }, 1.0, Smoothness::Smooth, true,
            [](double x) { return -2.0 * x * std::exp(-x * x); },
            [](double x) { return (4.0 * x * x - 2.0) * std::exp(-x * x); });
        v.emplace_back(
            "tanh_1", [](double x) { return std::tanh(x); }, 1.0, Smoothness::Smooth, false,
            [](double x) {
                const double c = std::cosh(x);
                return 1.0 / (c * c);
            },
            [](double x) {
                const double t = std::tanh(x);
                const double c = std::cosh(x);
                return -2.0 * t / (c * c);
            });
        return v;
    }();
    return dict;
}

const TestFunction& dictionary_fn(const std::string& name) {
    for (const auto& f : dictionary()) {
        if (f.name() == name) return f;
    }
    throw std::out_of_range("unknown test function: " + name);
}

std::vector<const TestFunction*> nonnegative_dictionary() {
    std::vector<const TestFunction*> out;
    for (const auto& f : dictionary()) {
        if (f.nonnegative()) out.push_back(&f);
    }
    return out;
}

}  // namespace semilab
