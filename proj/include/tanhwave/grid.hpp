#pragma once

#include <memory>
#include <vector>

namespace tanhwave {

// Uniform periodic grid on [0, L). Wavenumbers are stored in FFT order:
// index i holds k = 2*pi*m/L with m = i for i < n/2 and m = i - n otherwise,
// so the Nyquist mode (i = n/2) is the single self-conjugate entry m = -n/2.
class Grid1D {
  public:
    Grid1D(int num_points, double length);

    int num_points() const { return n_; }
    double length() const { return length_; }
    double spacing() const { return dx_; }
    double x(int i) const { return dx_ * i; }

    const std::vector<double>& wavenumbers() const { return k_; }
    double wavenumber(int i) const { return k_[i]; }
    double wavenumber_spacing() const { return dk_; }
    double max_wavenumber() const; // largest |k| on the grid

    // Signed integer mode m in [-n/2, n/2) -> storage index.
    int index_of_mode(int m) const;
    int mode_of_index(int i) const { return i < n_ / 2 ? i : i - n_; }

    // Largest retained |m| under the 2/3 rule; n is a power of two, so
    // 3*dealias_limit() < n holds and quadratic products are alias-free.
    int dealias_limit() const { return n_ / 3; }
    double dealias_cutoff() const { return dk_ * dealias_limit(); }

    bool same_as(const Grid1D& other) const;

  private:
    int n_;
    double length_;
    double dx_;
    double dk_;
    std::vector<double> k_;
};

using GridPtr = std::shared_ptr<const Grid1D>;

GridPtr make_grid(int num_points, double length);

} // namespace tanhwave
