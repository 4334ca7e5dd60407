#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace nlkg {

// Periodic box [0, L)^d with n lattice points per side (n a power of two),
// row-major storage, axis 0 slowest. Wavenumbers follow FFT ordering
// k = (2 pi / L) m, m in {0, .., n/2-1, -n/2, .., -1}. Even-symbol
// operators (|k|^2, (1+|k|^2)^{s/2}) use the Nyquist mode with its full
// magnitude; odd operators (single derivatives) zero it so real fields map
// to real fields.
class BoxGrid {
 public:
  BoxGrid(int d, double length, std::size_t n);

  int dim() const { return d_; }
  double length() const { return length_; }
  std::size_t points_per_side() const { return n_; }
  std::size_t total() const { return total_; }
  double spacing() const { return length_ / static_cast<double>(n_); }
  double cell_volume() const { return cell_vol_; }
  std::vector<std::size_t> dims() const {
    return std::vector<std::size_t>(d_, n_);
  }

  double coord(std::size_t i) const {
    return static_cast<double>(i) * spacing();
  }
  // index of x along the given axis for a flat row-major index
  std::size_t axis_index(std::size_t flat, int axis) const;

  // |k|^2 per flat index
  const std::vector<double>& k_squared() const { return k2_; }

  // distance from the box center respecting periodicity (for radial
  // embeddings and exterior-energy balls)
  std::vector<double> center_distance() const;

  std::vector<double> sample(
      const std::function<double(const std::vector<double>&)>& f) const;
  // radial profile about the box center, periodic distance
  std::vector<double> sample_radial(
      const std::function<double(double)>& profile) const;

  double integrate(const std::vector<double>& v) const;
  double integrate_product(const std::vector<double>& a,
                           const std::vector<double>& b) const;

  std::vector<std::complex<double>> to_spectral(
      const std::vector<double>& u) const;
  std::vector<double> to_physical_real(
      std::vector<std::complex<double>> spec) const;

  // spectral derivative along one axis (Nyquist zeroed)
  std::vector<double> partial(const std::vector<double>& u, int axis) const;
  // (1 - Laplacian)^{power/2} for power = +1 or -1
  std::vector<double> apply_bracket(const std::vector<double>& u,
                                    int power) const;
  // integral of |grad u|^2 via the spectral symbol
  double gradient_sq_integral(const std::vector<double>& u) const;

  void check_size(std::size_t m) const;

 private:
  int d_;
  double length_, cell_vol_;
  std::size_t n_, total_;
  std::vector<double> k_axis_;  // wavenumber by per-axis index
  std::vector<double> k2_;
};

}  // namespace nlkg
