#include "tanhwave/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace tanhwave {

namespace {
bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
} // namespace

Grid1D::Grid1D(int num_points, double length) : n_(num_points), length_(length) {
    if (!power_of_two(num_points))
        throw std::invalid_argument("Grid1D: num_points must be a power of two");
    if (!(length > 0.0))
        throw std::invalid_argument("Grid1D: length must be positive");
    dx_ = length_ / n_;
    dk_ = 2.0 * M_PI / length_;
    k_.resize(n_);
    for (int i = 0; i < n_; ++i)
        k_[i] = dk_ * mode_of_index(i);
}

double Grid1D::max_wavenumber() const { return dk_ * (n_ / 2); }

int Grid1D::index_of_mode(int m) const {
    if (m < -n_ / 2 || m >= n_ / 2)
        throw std::out_of_range("Grid1D: mode outside grid");
    return m >= 0 ? m : m + n_;
}

bool Grid1D::same_as(const Grid1D& other) const {
    return n_ == other.n_ && length_ == other.length_;
}

GridPtr make_grid(int num_points, double length) {
    return std::make_shared<const Grid1D>(num_points, length);
}

} // namespace tanhwave
