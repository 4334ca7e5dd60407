#pragma once

#include <functional>
#include <vector>

namespace nlkg {

// Surface area of the unit sphere in R^d (d = 1 gives 2, the two-point
// "sphere", so 1-d integrals over the whole line come out right for even
// functions).
double unit_sphere_area(int d);

// Midpoint-rule radial grid on (0, r_max): nodes r_j = (j + 1/2) h with
// h = r_max / n, weights w_j = |S^{d-1}| r_j^{d-1} h. Radial integrals of
// functions with integrand linear in r are exact up to roundoff; everything
// else converges at second order. The midpoint offset keeps the r = 0
// coordinate singularity off the grid.
class RadialGrid {
 public:
  RadialGrid(int d, double r_max, std::size_t n);

  int dim() const { return d_; }
  double r_max() const { return r_max_; }
  double spacing() const { return h_; }
  std::size_t size() const { return r_.size(); }
  const std::vector<double>& nodes() const { return r_; }
  const std::vector<double>& weights() const { return w_; }

  std::vector<double> sample(const std::function<double(double)>& f) const;

  // Compensated sum of w_j * v_j. Throws NonFiniteIntegrand if any term is
  // not finite.
  double integrate(const std::vector<double>& v) const;

  // Same with an extra pointwise factor (avoids allocating a product
  // vector in the hot paths).
  double integrate_product(const std::vector<double>& a,
                           const std::vector<double>& b) const;

  // Second-order first derivative: centered in the interior, one-sided
  // three-point stencils at both ends.
  std::vector<double> derivative(const std::vector<double>& v) const;

 private:
  void check_size(std::size_t m) const;

  int d_;
  double r_max_, h_;
  std::vector<double> r_, w_;
};

// Compensated (Kahan) summation of w[i] * v[i]; exposed because several
// modules accumulate weighted sums over multi-million point grids where a
// naive left-to-right sum loses too many digits.
double weighted_sum(const std::vector<double>& w, const std::vector<double>& v);

}  // namespace nlkg
