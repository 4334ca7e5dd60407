#pragma once

#include <string>
#include <vector>

#include "nlkg/box.hpp"
#include "nlkg/nonlinearity.hpp"
#include "nlkg/radial.hpp"
#include "nlkg/scaling.hpp"

namespace nlkg {

// (u, u_dot) sampled on a shared grid (radial or box, per the functions used)
struct StatePair {
  std::vector<double> u0;
  std::vector<double> u1;
};

// ---- radial functionals ----

double l2_sq(const RadialGrid& g, const std::vector<double>& u);
double gradient_sq(const RadialGrid& g, const std::vector<double>& u);
double h1_sq(const RadialGrid& g, const std::vector<double>& u);

// F(phi) = integral of f(phi)
double F_integral(const RadialGrid& g, const NonlinearityModel& model,
                  const std::vector<double>& u);

// J^{(c)}(phi) = (|grad phi|^2 + c phi^2)/2 - f(phi) integrated
double static_energy(const RadialGrid& g, const NonlinearityModel& model,
                     const std::vector<double>& u, double c = 1.0);

// E(u) = integral of (u1^2 + |grad u0|^2 + c u0^2)/2 - f(u0)
double energy(const RadialGrid& g, const NonlinearityModel& model,
              const StatePair& s, double c = 1.0);

// quadratic part of E (no nonlinear term)
double quadratic_energy(const RadialGrid& g, const StatePair& s, double c = 1.0);

struct KParts {
  double KQ = 0.0;  // quadratic part: positive weights on the H^1 terms
  double KN = 0.0;  // nonlinear part
  double K() const { return KQ + KN; }
};

// K_{alpha,beta}(phi): derivative of J along the scaling family, in closed
// form. Evaluates for any real pair; admissibility matters only for the
// sign-based classification built on top.
KParts K_parts(const RadialGrid& g, const NonlinearityModel& model,
               const std::vector<double>& u, const ScalingPair& sp,
               double c = 1.0);
double K_functional(const RadialGrid& g, const NonlinearityModel& model,
                    const std::vector<double>& u, const ScalingPair& sp,
                    double c = 1.0);

// H_{alpha,beta} = J - K_{alpha,beta}/mu_max: the positive-definite
// replacement for J on the constraint K = 0.
double H_functional(const RadialGrid& g, const NonlinearityModel& model,
                    const std::vector<double>& u, const ScalingPair& sp,
                    double c = 1.0);

// derivative of F along the scaling family: integral of alpha*u f'(u) + d beta f(u)
double Dab_F(const RadialGrid& g, const NonlinearityModel& model,
             const std::vector<double>& u, const ScalingPair& sp);

// cubic interpolation of a midpoint-grid radial profile at arbitrary r:
// even reflection through r = 0, zero beyond the grid edge
double radial_interp(const RadialGrid& g, const std::vector<double>& u,
                     double r);

// ---- rescaling ----

// phi^lambda(x) = e^{alpha lambda} phi(e^{-beta lambda} x), resampled on the
// same grid by cubic interpolation with zero extension beyond r_max.
struct RescaleResult {
  std::vector<double> values;
  bool truncation_loss = false;  // >1e-8 of the L^2 mass fell off the grid
  double mass_outside_frac = 0.0;
};
RescaleResult rescale(const RadialGrid& g, const std::vector<double>& u,
                      const ScalingPair& sp, double lambda);

struct LandscapeRow {
  double lambda, J, K, F;
};
struct LandscapeTable {
  std::vector<LandscapeRow> rows;
  bool kq_nondecreasing = true;
  bool j_increasing_while_k_positive = true;
  bool truncation_loss = false;
};
LandscapeTable landscape(const RadialGrid& g, const NonlinearityModel& model,
                         const std::vector<double>& u, const ScalingPair& sp,
                         const std::vector<double>& lambdas, double c = 1.0);

// Root of K along the scaling ray through phi, or along the amplitude ray
// nu phi when the pair is the d=2 exceptional one (alpha = 0). Bisection
// bracket then secant polish until |K| <= tol * K^Q.
struct NehariResult {
  double parameter = 0.0;  // lambda* (scaling ray) or nu* (amplitude ray)
  bool amplitude_ray = false;
  std::vector<double> projected;
};
NehariResult nehari_project(const RadialGrid& g, const NonlinearityModel& model,
                            const std::vector<double>& u, const ScalingPair& sp,
                            double c = 1.0, double tol = 1e-8);

// ---- classification ----

enum class Label { KPlus, KMinus, AboveThreshold };

std::string label_name(Label l);

struct Verdict {
  Label label = Label::AboveThreshold;
  double E = 0.0;
  double m = 0.0;
  double K = 0.0;
  double KQ = 0.0;
  bool threshold_adjacent = false;  // |E - m| within the tie band
  // filled on KPlus verdicts: J <= h1_half <= (1 + d/2) J must hold when
  // K_{1,0}(u0) >= 0 (the free-energy equivalence)
  double J = 0.0;
  double h1_half = 0.0;
  bool free_energy_ok = true;
  double grad_plus_kinetic = 0.0;  // |grad u0|^2 + |u1|^2, for the 2d
                                   // exponential-case bound against 2m
};

Verdict classify(const RadialGrid& g, const NonlinearityModel& model,
                 const StatePair& s, const ScalingPair& sp, double m,
                 double c = 1.0);

// ---- box-side functionals (time evolution monitors) ----

double box_F(const BoxGrid& g, const NonlinearityModel& model,
             const std::vector<double>& u);
double box_energy(const BoxGrid& g, const NonlinearityModel& model,
                  const StatePair& s, double c = 1.0);
double box_quadratic_energy(const BoxGrid& g, const StatePair& s, double c = 1.0);
KParts box_K_parts(const BoxGrid& g, const NonlinearityModel& model,
                   const std::vector<double>& u, const ScalingPair& sp,
                   double c = 1.0);
double box_K(const BoxGrid& g, const NonlinearityModel& model,
             const std::vector<double>& u, const ScalingPair& sp, double c = 1.0);

Verdict box_classify(const BoxGrid& g, const NonlinearityModel& model,
                     const StatePair& s, const ScalingPair& sp, double m,
                     double c = 1.0);

// pointwise energy density e(u) = (u1^2 + |grad u0|^2 + u0^2)/2 - f(u0)
std::vector<double> box_energy_density(const BoxGrid& g,
                                       const NonlinearityModel& model,
                                       const StatePair& s);

// ---- localized virial / momentum diagnostics ----

struct Diagnostics {
  std::vector<double> P;    // momentum, d components
  std::vector<double> X_R;  // localized center of energy, d components
  double V_R = 0.0;         // localized virial
  double E_R = 0.0;         // exterior energy outside |x - c| >= R
};

// Momentum is global; X_R and V_R use the cutoff chi(|x - center|/R) about
// the box center; the exterior energy excludes the ball |x - c_center| < R.
Diagnostics diagnostics(const BoxGrid& g, const NonlinearityModel& model,
                        const StatePair& s, double R,
                        const std::vector<double>& c_center);

}  // namespace nlkg
