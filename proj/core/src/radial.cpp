#include "nlkg/radial.hpp"

#include <cmath>

#include "nlkg/errors.hpp"

namespace nlkg {

double unit_sphere_area(int d) {
  if (d < 1) throw ParamOutOfRange("dimension must be positive");
  return 2.0 * std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d);
}

RadialGrid::RadialGrid(int d, double r_max, std::size_t n) : d_(d) {
  if (d < 1) throw ParamOutOfRange("dimension must be positive");
  if (!(r_max > 0.0) || !std::isfinite(r_max))
    throw ParamOutOfRange("r_max must be positive and finite");
  if (n < 8) throw ParamOutOfRange("radial grid needs at least 8 points");
  r_max_ = r_max;
  h_ = r_max / static_cast<double>(n);
  r_.resize(n);
  w_.resize(n);
  const double area = unit_sphere_area(d);
  for (std::size_t j = 0; j < n; ++j) {
    r_[j] = (static_cast<double>(j) + 0.5) * h_;
    w_[j] = area * std::pow(r_[j], d - 1) * h_;
  }
}

std::vector<double> RadialGrid::sample(
    const std::function<double(double)>& f) const {
  std::vector<double> v(r_.size());
  for (std::size_t j = 0; j < r_.size(); ++j) v[j] = f(r_[j]);
  return v;
}

void RadialGrid::check_size(std::size_t m) const {
  if (m != r_.size())
    throw GridMismatch("vector length " + std::to_string(m) +
                       " does not match grid size " +
                       std::to_string(r_.size()));
}

double weighted_sum(const std::vector<double>& w,
                    const std::vector<double>& v) {
  if (w.size() != v.size())
    throw GridMismatch("weight/value length mismatch");
  double sum = 0.0, comp = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    double term = w[j] * v[j];
    if (!std::isfinite(term))
      throw NonFiniteIntegrand("non-finite term at index " +
                               std::to_string(j));
    double y = term - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

double RadialGrid::integrate(const std::vector<double>& v) const {
  check_size(v.size());
  return weighted_sum(w_, v);
}

double RadialGrid::integrate_product(const std::vector<double>& a,
                                     const std::vector<double>& b) const {
  check_size(a.size());
  check_size(b.size());
  double sum = 0.0, comp = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    double term = w_[j] * a[j] * b[j];
    if (!std::isfinite(term))
      throw NonFiniteIntegrand("non-finite term at index " +
                               std::to_string(j));
    double y = term - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

std::vector<double> RadialGrid::derivative(const std::vector<double>& v) const {
  check_size(v.size());
  const std::size_t n = v.size();
  std::vector<double> dv(n);
  const double inv2h = 1.0 / (2.0 * h_);
  dv[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) * inv2h;
  for (std::size_t j = 1; j + 1 < n; ++j)
    dv[j] = (v[j + 1] - v[j - 1]) * inv2h;
  dv[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) * inv2h;
  return dv;
}

}  // namespace nlkg
