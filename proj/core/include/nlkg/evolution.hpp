#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "nlkg/box.hpp"
#include "nlkg/functionals.hpp"
#include "nlkg/nonlinearity.hpp"

namespace nlkg {

// First-order form of the wave equation: v = <grad> u - i u', where <grad>
// is the Fourier multiplier sqrt(c + |k|^2). The free flow rotates each
// mode exactly; the nonlinear kick only touches Im v, so u is frozen during
// it and the kick is exact as well.
struct EvolState {
  BoxGrid grid;
  double t = 0.0;
  double c = 1.0;
  std::vector<std::complex<double>> v;
  std::vector<double> u, udot;  // caches derived from v
};

EvolState make_state(const BoxGrid& g, const StatePair& s, double c = 1.0);

// rebuild the u / udot caches from v (after editing v by hand)
void refresh_fields(EvolState& st);

// exact free propagator e^{i t <grad>} mode by mode
std::vector<std::complex<double>> free_propagate(
    const BoxGrid& g, std::vector<std::complex<double>> v, double t,
    double c = 1.0);

// one Strang step: half kick, exact free flow, half kick
void step(EvolState& st, double dt, const NonlinearityModel& model);

// accuracy-motivated default step: min(0.1, 0.5/(1 + stiffness)) where the
// stiffness is the amplitude-dependent frequency scale of the nonlinearity
double default_dt(const NonlinearityModel& model, double uinf);

struct RunSample {
  double t = 0.0;
  double E = 0.0, EQ = 0.0;
  double y = 0.0, ydot = 0.0, yddot = 0.0;  // |u|_{L2}^2 and its derivatives
  double uinf = 0.0;
  double K10 = 0.0, Kdm2 = 0.0;
};

enum class Outcome { Dispersed, BlewUp, Undecided };
const char* outcome_name(Outcome o);

struct BlowupCertificate {
  bool fired = false;
  double delta = 0.0;  // yddot >= 2 delta > 0 on the trailing window
  double window_start = 0.0, window_end = 0.0;
  double cap = 0.0;    // amplitude bound whose crossing ended the run
  double t_cap = 0.0;  // when it was crossed
};

struct DispersalCertificate {
  bool fired = false;
  std::vector<double> increments;  // |w_i - w_{i-1}| / |v(0)| at checkpoints
  std::vector<std::complex<double>> v_plus;  // limiting free profile
  double t_limit = 0.0;
};

// backward-free-propagated checkpoint data w(t_i) = e^{-i t_i <grad>} v(t_i)
struct CheckpointHistory {
  std::vector<double> times;
  std::vector<double> increments;
  std::vector<std::complex<double>> last_w;
  double v0_norm = 0.0;
};

struct RunRecord {
  std::vector<RunSample> samples;
  StatePair final_state;  // (u, udot) when the run ended
  double t_final = 0.0;
  Outcome outcome = Outcome::Undecided;
  BlowupCertificate blowup;
  DispersalCertificate dispersal;
  CheckpointHistory history;
  bool threshold_adjacent = false;  // |E - m_ref| <= 1e-3 m_ref at t = 0
  bool wraparound_risk = false;     // box too small for unit speed over T
  bool cap_exceeded = false;
  double t_cap = 0.0;
  double amplitude_cap = 0.0;
};

struct EvolveConfig {
  double T = 10.0;
  double dt = 0.0;  // 0: default_dt from the initial amplitude
  double sample_dt = 0.05;
  int checkpoints = 12;
  double scatter_tol = 1e-3;
  double amplitude_cap = 50.0;  // tightened to the model cap if that is lower
  double c = 1.0;
  double m_reference = 0.0;    // > 0: flag threshold-adjacent runs
  double support_radius = 0.0;  // > 0: skip estimating it from the data
};

// integrate to cfg.T or until a detector ends the run early
RunRecord evolve(const BoxGrid& g, const NonlinearityModel& model,
                 const StatePair& s0, const EvolveConfig& cfg);

// d=3 radial evolution reduced to the half line: w = r u solves the 1d wave
// equation with Dirichlet ends, integrated in a sine basis on (0, R) with
// `interior` nodes (interior + 1 a power of two). Initial data are sampled
// from the given profiles.
RunRecord evolve_radial3(const NonlinearityModel& model,
                         const std::function<double(double)>& u0,
                         const std::function<double(double)>& u1, double R,
                         std::size_t interior, const EvolveConfig& cfg);

// detectors, re-runnable on a finished record
BlowupCertificate detect_blowup(const RunRecord& rec);
DispersalCertificate detect_dispersal(const CheckpointHistory& hist,
                                      double scatter_tol = 1e-3);

}  // namespace nlkg
