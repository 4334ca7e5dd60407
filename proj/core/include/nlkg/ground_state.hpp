#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlkg/functionals.hpp"
#include "nlkg/nonlinearity.hpp"
#include "nlkg/radial.hpp"
#include "nlkg/scaling.hpp"

namespace nlkg {

struct ShootConfig {
  double r_max = 0.0;      // 0: pick by dimension
  std::size_t n = 0;       // 0: default 131072
  double bracket_tol = 1e-13;  // bisection width relative to Q(0)
  double trust = 1e-3;     // switch to the analytic tail once |Q| < trust*Q(0)
  double a_init = 1.0;     // starting guess for Q(0)
};

struct GroundStateResult {
  RadialGrid grid;
  std::vector<double> Q;
  double c = 1.0;       // mass coefficient in -Q'' - (d-1)/r Q' + cQ = f'(Q)
  double m = 0.0;       // J^{(c)}(Q)
  double Q0 = 0.0;      // shooting amplitude
  double residual = 0.0;  // sup norm of the equation residual on the grid
  struct KEntry {
    ScalingPair sp;
    double K, KQ;
  };
  std::vector<KEntry> K_table;  // K_{alpha,beta}(Q) over sampled pairs
};

// Radial shooting for the static equation. Bisection on Q(0) between
// overshoot (Q crosses zero or exceeds 2 Q(0)) and undershoot (Q turns back
// up while positive); the r -> 0 singularity is absorbed by a series start
// and the far field is glued to the linearized decay once |Q| drops below
// the trust fraction.
GroundStateResult shoot(const NonlinearityModel& model, int d, double c = 1.0,
                        const ShootConfig& cfg = {});

// Explicit static profile for the critical power, normalized to Q(0) = 1:
// Q(r) = (1 + r^2/(d(d-2)))^{-(d-2)/2}, d >= 3.
double aubin_talenti(int d, double r);

// Threshold for the critical power, computed by two quadrature routes that
// share nothing but the profile: (i) the massless static energy of Q,
// (ii) the Sobolev-quotient form A^{d/2} / (d B^{(d-2)/2}).
struct CriticalThreshold {
  double m = 0.0;            // route (i)
  double m_sobolev = 0.0;    // route (ii)
  double A = 0.0, B = 0.0;   // |grad Q|^2 and |Q|^{2^*} integrals
  double r_max = 0.0;
  std::size_t n = 0;
};
CriticalThreshold critical_threshold(int d, double r_max = 0.0,
                                     std::size_t n = 0);

// Trudinger-Moser ratio estimate: maximize 2F(phi)/|phi|_{L2}^2 under
// |grad phi| <= A over parametric radial families (Gaussians, sech bumps,
// truncated-logarithm bumps). A lower bound by construction.
struct TMEstimate {
  double A = 0.0;
  double ratio = 0.0;
  double threshold = 0.0;  // sqrt(4 pi / kappa0), infinite when kappa0 = 0
  double stability_margin = 0.0;  // rel. change under family_size halving
  std::string family;             // winning family
  std::vector<double> witness;    // on tm_grid()
  double witness_r_max = 0.0;
  std::size_t witness_n = 0;
};
TMEstimate tm_ratio(const NonlinearityModel& model, double A,
                    int family_size = 16);

// m and the mass coefficient for any accepted model: subcritical powers by
// shooting at c = 1; the critical power by the explicit profile; the 2d
// exponential family at c = min(1, estimated TM ratio at the threshold).
struct ThresholdResult {
  double m = 0.0;
  double c = 1.0;
  std::optional<GroundStateResult> ground_state;
  std::optional<CriticalThreshold> critical;
  double tm_estimate = 0.0;   // exponential case only
  bool tm_ambiguous = false;  // estimate within 10% of 1: c is uncertain
};
ThresholdResult compute_m(const NonlinearityModel& model, int d,
                          const ShootConfig& cfg = {});

// Constrained descent: minimize H_{alpha,beta} over {K = 0} by explicit
// gradient steps with re-projection onto the constraint after each step.
// Cross-validates the shooting threshold from above.
struct MinimizerResult {
  std::vector<double> phi;
  double H = 0.0;
  int iterations = 0;
};
MinimizerResult gradient_flow_minimizer(const NonlinearityModel& model,
                                        const RadialGrid& g,
                                        const ScalingPair& sp,
                                        std::vector<double> init,
                                        double c = 1.0);

}  // namespace nlkg
