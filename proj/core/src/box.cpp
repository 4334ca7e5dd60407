#include "nlkg/box.hpp"

#include <cmath>

#include "nlkg/errors.hpp"
#include "nlkg/fft.hpp"
#include "nlkg/radial.hpp"

namespace nlkg {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

BoxGrid::BoxGrid(int d, double length, std::size_t n) : d_(d) {
  if (d < 1 || d > 3)
    throw ParamOutOfRange("box grids support d in {1,2,3}");
  if (!(length > 0.0) || !std::isfinite(length))
    throw ParamOutOfRange("box length must be positive and finite");
  if (n < 8 || !is_pow2(n))
    throw ParamOutOfRange("points per side must be a power of two >= 8");
  length_ = length;
  n_ = n;
  total_ = 1;
  for (int a = 0; a < d_; ++a) total_ *= n_;
  cell_vol_ = std::pow(length_ / static_cast<double>(n_), d_);

  k_axis_.resize(n_);
  const double base = 2.0 * M_PI / length_;
  for (std::size_t m = 0; m < n_; ++m) {
    const auto sm = static_cast<long long>(m);
    const auto half = static_cast<long long>(n_ / 2);
    k_axis_[m] = base * static_cast<double>(sm < half ? sm : sm - 2 * half);
  }

  k2_.assign(total_, 0.0);
  std::size_t stride = total_;
  for (int a = 0; a < d_; ++a) {
    stride /= n_;
    for (std::size_t i = 0; i < total_; ++i) {
      const std::size_t ia = (i / stride) % n_;
      k2_[i] += k_axis_[ia] * k_axis_[ia];
    }
  }
}

std::size_t BoxGrid::axis_index(std::size_t flat, int axis) const {
  std::size_t stride = 1;
  for (int a = d_ - 1; a > axis; --a) stride *= n_;
  return (flat / stride) % n_;
}

std::vector<double> BoxGrid::center_distance() const {
  std::vector<double> out(total_);
  const double half = 0.5 * length_;
  for (std::size_t i = 0; i < total_; ++i) {
    double s = 0.0;
    for (int a = 0; a < d_; ++a) {
      double dx = coord(axis_index(i, a)) - half;
      s += dx * dx;
    }
    out[i] = std::sqrt(s);
  }
  return out;
}

std::vector<double> BoxGrid::sample(
    const std::function<double(const std::vector<double>&)>& f) const {
  std::vector<double> out(total_);
  std::vector<double> x(d_);
  for (std::size_t i = 0; i < total_; ++i) {
    for (int a = 0; a < d_; ++a) x[a] = coord(axis_index(i, a));
    out[i] = f(x);
  }
  return out;
}

std::vector<double> BoxGrid::sample_radial(
    const std::function<double(double)>& profile) const {
  std::vector<double> r = center_distance();
  for (auto& v : r) v = profile(v);
  return r;
}

void BoxGrid::check_size(std::size_t m) const {
  if (m != total_)
    throw GridMismatch("vector length " + std::to_string(m) +
                       " does not match box size " + std::to_string(total_));
}

double BoxGrid::integrate(const std::vector<double>& v) const {
  check_size(v.size());
  double sum = 0.0, comp = 0.0;
  for (double x : v) {
    if (!std::isfinite(x)) throw NonFiniteIntegrand("non-finite box value");
    double y = x - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum * cell_vol_;
}

double BoxGrid::integrate_product(const std::vector<double>& a,
                                  const std::vector<double>& b) const {
  check_size(a.size());
  check_size(b.size());
  double sum = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double x = a[i] * b[i];
    if (!std::isfinite(x)) throw NonFiniteIntegrand("non-finite box value");
    double y = x - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum * cell_vol_;
}

std::vector<std::complex<double>> BoxGrid::to_spectral(
    const std::vector<double>& u) const {
  check_size(u.size());
  std::vector<std::complex<double>> a(total_);
  for (std::size_t i = 0; i < total_; ++i) a[i] = {u[i], 0.0};
  fft_nd_inplace(a, dims(), false);
  return a;
}

std::vector<double> BoxGrid::to_physical_real(
    std::vector<std::complex<double>> spec) const {
  check_size(spec.size());
  fft_nd_inplace(spec, dims(), true);
  std::vector<double> out(total_);
  for (std::size_t i = 0; i < total_; ++i) out[i] = spec[i].real();
  return out;
}

std::vector<double> BoxGrid::partial(const std::vector<double>& u,
                                     int axis) const {
  if (axis < 0 || axis >= d_) throw ParamOutOfRange("axis out of range");
  auto spec = to_spectral(u);
  std::size_t stride = 1;
  for (int a = d_ - 1; a > axis; --a) stride *= n_;
  for (std::size_t i = 0; i < total_; ++i) {
    const std::size_t ia = (i / stride) % n_;
    // Nyquist carries no usable sign information for odd symbols
    const double k = (ia == n_ / 2) ? 0.0 : k_axis_[ia];
    spec[i] *= std::complex<double>(0.0, k);
  }
  return to_physical_real(std::move(spec));
}

std::vector<double> BoxGrid::apply_bracket(const std::vector<double>& u,
                                           int power) const {
  if (power != 1 && power != -1)
    throw ParamOutOfRange("bracket power must be +1 or -1");
  auto spec = to_spectral(u);
  for (std::size_t i = 0; i < total_; ++i) {
    const double s = std::sqrt(1.0 + k2_[i]);
    spec[i] *= (power == 1) ? s : 1.0 / s;
  }
  return to_physical_real(std::move(spec));
}

double BoxGrid::gradient_sq_integral(const std::vector<double>& u) const {
  auto spec = to_spectral(u);
  double sum = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < total_; ++i) {
    double x = k2_[i] * std::norm(spec[i]);
    double y = x - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  // Parseval with the unnormalized transform: integral = vol/N^2 * sum,
  // and cell_vol = vol/N already
  return sum * cell_vol_ / static_cast<double>(total_);
}

}  // namespace nlkg
