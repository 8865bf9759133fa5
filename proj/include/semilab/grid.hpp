#pragma once

#include <stdexcept>

namespace semilab {

// Symmetric uniform grid on [-L, L] with an odd number of nodes, so that 0 is
// a node and kinked integrands (|x|, e^{-|x|}, ...) keep their kink on a node.
class GridSpec {
public:
    GridSpec(double half_width, int n) : half_width_(half_width), n_(n) {
        if (!(half_width > 0.0)) throw std::invalid_argument("GridSpec: half_width must be > 0");
        if (n < 3 || n % 2 == 0) throw std::invalid_argument("GridSpec: n must be odd and >= 3");
    }

    double half_width() const { return half_width_; }
    int size() const { return n_; }
    double spacing() const { return 2.0 * half_width_ / (n_ - 1); }
    double node(int i) const { return -half_width_ + i * spacing(); }
    int center_index() const { return (n_ - 1) / 2; }

    bool contains(double x) const { return x >= -half_width_ && x <= half_width_; }

    friend bool operator==(const GridSpec& a, const GridSpec& b) {
        return a.half_width_ == b.half_width_ && a.n_ == b.n_;
    }
    friend bool operator!=(const GridSpec& a, const GridSpec& b) { return !(a == b); }

private:
    double half_width_;
    int n_;
};

}  // namespace semilab
