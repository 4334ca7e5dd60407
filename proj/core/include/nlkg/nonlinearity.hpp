#pragma once

#include <string>
#include <vector>

namespace nlkg {

// C^2 cutoff profile: 1 for s <= 1, 0 for s >= 2, quintic smoothstep in
// between (the quintic is the lowest-degree polynomial joint that is C^2 at
// both ends). chi_R(x) = cutoff_chi(|x|/R).
double cutoff_chi(double s);

enum class NonlinearityKind { PowerSum, CriticalPower, Exponential2D };

struct PowerTerm {
  double lambda;  // coefficient, > 0
  double q;       // power, in (2 + 4/d, 2 + 4/(d-2)]
};

// The attractive nonlinearities the solvers accept: sums of powers
// sum lambda_k |u|^{q_k} in any dimension, the single critical power
// |u|^{2+4/(d-2)}/(2+4/(d-2)) for d >= 3, and the two-dimensional
// exponential family lambda |u|^p e^{kappa0 u^2 + gamma |u|}. All are even
// in u with f(0) = f'(0) = f''(0) = 0.
class NonlinearityModel {
 public:
  static NonlinearityModel power_sum(int d, std::vector<PowerTerm> terms);
  static NonlinearityModel single_power(int d, double q, double lambda = 1.0);
  static NonlinearityModel critical_power(int d);
  static NonlinearityModel exponential_2d(double lambda, double p,
                                          double kappa0, double gamma);

  NonlinearityKind kind() const { return kind_; }
  int dim() const { return d_; }

  struct FVals {
    double f, fp, fpp, Df;  // Df = u f'(u)
  };
  FVals eval(double u) const;
  double f(double u) const;
  double fprime(double u) const;

  // Small/large split f = f_S + f_L with f_S = chi(|u|/cutoff) f.
  double f_small(double u) const;
  double f_large(double u) const;
  double cutoff_radius() const { return cutoff_; }
  void set_cutoff_radius(double r);

  // Largest |u| the evaluators accept before AmplitudeOverflow; finite for
  // the exponential family (where exp(kappa0 u^2) would overflow), huge
  // otherwise.
  double amplitude_cap() const { return cap_; }
  // Steepest effective power q with f ~ |u|^q at large amplitude; drives
  // time-step control in the evolvers.
  double max_power() const;

  // exponential family parameters (only meaningful for Exponential2D)
  double exp_p() const { return p_; }
  double exp_kappa0() const { return kappa0_; }
  double exp_gamma() const { return gamma_; }
  const std::vector<PowerTerm>& terms() const { return terms_; }

  std::string describe() const;

 private:
  NonlinearityModel() = default;

  NonlinearityKind kind_ = NonlinearityKind::PowerSum;
  int d_ = 1;
  std::vector<PowerTerm> terms_;               // PowerSum / CriticalPower
  double lambda_ = 1.0, p_ = 0.0, kappa0_ = 0.0, gamma_ = 0.0;
  double cutoff_ = 1.0;
  double cap_ = 0.0;
};

// Sampled verification of the monotonicity/convexity class conditions
// (D - q_low - eps) f >= 0 and (D - 2)(D - q_low - eps) f >= 0 with
// q_low = 2 + 4/d. Both constraints are affine in eps at each sample, so
// the largest admissible eps is solved exactly per sample and minimized
// over the set (no grid search needed).
struct GrowthSample {
  double u;
  double bound1;  // largest eps allowed by the first condition at u
  double bound2;  // largest eps allowed by the second condition at u
  bool ok;        // both bounds nonnegative
};

struct GrowthReport {
  double eps_max = 0.0;
  bool pass = false;
  std::vector<GrowthSample> samples;
};

// Throws ModelOutsideClass when even eps = 0 fails somewhere (the model is
// rejected for variational use).
GrowthReport verify_growth_conditions(const NonlinearityModel& model, int d,
                                      const std::vector<double>& u_samples);

// Log-spaced amplitude samples covering small and large |u| up to the
// model's cap (or `hi` when smaller).
std::vector<double> default_growth_samples(const NonlinearityModel& model,
                                           double hi = 10.0, int count = 200);

}  // namespace nlkg
