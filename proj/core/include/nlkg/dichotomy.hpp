#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nlkg/evolution.hpp"
#include "nlkg/functionals.hpp"
#include "nlkg/ground_state.hpp"
#include "nlkg/nonlinearity.hpp"
#include "nlkg/scaling.hpp"

namespace nlkg {

// ---- sign test vs. long-time behaviour, run as a batch ----

// One initial datum, given as radial profiles about the box center.
struct SweepDatum {
  std::string name;
  std::function<double(double)> u0;
  std::function<double(double)> u1;
};

struct SweepSpec {
  NonlinearityModel model;
  int d = 1;

  // box integrator (d = 1, 2, 3)
  double box_length = 80.0;
  std::size_t box_n = 4096;

  // reduced radial integrator (d = 3 only)
  bool use_radial3 = false;
  double radial_extent = 32.0;
  std::size_t radial_interior = 4095;

  int pair_count = 20;   // admissible pairs, both boundary rays included
  std::vector<double> ground_state_scales{0.5, 0.8, 0.95, 1.05, 1.2, 2.0};
  int random_bumps = 0;  // extra subthreshold bumps appended to the data list
  unsigned seed = 1u;
  // c and m_reference are filled in by run_dichotomy from the computed
  // threshold, so the sign test and the runs share one equation
  EvolveConfig run;

  explicit SweepSpec(NonlinearityModel m) : model(std::move(m)) {}
};

struct DichotomyRow {
  std::string name;
  double E = 0.0;
  double EQ = 0.0;
  Label predicted = Label::AboveThreshold;
  bool pairs_agree = true;     // same label under every audited pair
  double K10 = 0.0;            // K_{1,0} of the datum
  Outcome observed = Outcome::Undecided;
  bool agree = false;          // prediction matched the run (see run_dichotomy)
  bool excluded = false;       // undecided-at-threshold row, reported not failed
  bool threshold_adjacent = false;
  bool small_data = false;     // EQ <= 0.01 m: must come out KPlus
  bool k_sign_held = true;     // sign of K_{1,0} constant along the samples
  double t_cap = 0.0;          // blow-up rows: last time before the cap
  double delta = 0.0;          // blow-up rows: fitted convexity margin
  double last_increment = -1.0;  // dispersal rows: final Cauchy increment
};

struct DichotomyReport {
  double m = 0.0;
  double c = 1.0;
  std::vector<ScalingPair> pairs;
  std::vector<DichotomyRow> rows;
  int disagreements = 0;         // hard prediction/run mismatches
  int parameter_violations = 0;  // rows whose label depended on the pair
  int excluded_rows = 0;
  double elapsed_seconds = 0.0;
};

// Classifies every datum under every pair, runs each one once, and compares.
// KMinus rows must blow up (with a refined rerun when the first pass is too
// coarse to certify), KPlus rows must disperse; an undecided KPlus run inside
// the threshold band is excluded from the failure count but kept in the rows.
// A label that differs between pairs is counted in parameter_violations and
// the row is judged against the majority label.
DichotomyReport run_dichotomy(const SweepSpec& spec);

// ---- uniform lower bound on |K| below the threshold ----

struct KGapRow {
  int field = -1;
  ScalingPair pair;
  double J = 0.0;
  double K = 0.0;
  double KQ = 0.0;
  double gap = 0.0;       // mu_max (m - J)
  bool violation = false; // K strictly inside (-gap, 0)
};

struct KGapTable {
  double delta = 0.0;        // fitted: min K/KQ over rows with 0 <= K < gap
  double min_margin = 0.0;   // negative rows: min of (-K) - gap
  int violations = 0;
  std::size_t rows_audited = 0;
  std::vector<KGapRow> rows; // only the rows that pin delta, the margin, or violate
};

// Audits K >= min(mu_max (m - J), delta K^Q) or K <= -mu_max (m - J) over the
// given subthreshold fields and pairs. Fields with J >= m are skipped. Pairs
// with d = 2, alpha = 0 are outside the bound's hypotheses and are refused.
KGapTable k_gap_audit(const RadialGrid& g, const NonlinearityModel& model,
                      double m, const std::vector<std::vector<double>>& fields,
                      const std::vector<ScalingPair>& pairs, double c = 1.0);

// Deterministic family of smooth radial fields with J < m (resampled and
// shrunk until subthreshold), for feeding the audit.
std::vector<std::vector<double>> random_subthreshold_fields(
    const RadialGrid& g, const NonlinearityModel& model, double m,
    int count, unsigned seed, double c = 1.0);

// ---- witness families for J unbounded below outside the admissible cone ----

struct UnboundedRow {
  double nu = 0.0;      // amplitude parameter
  double lambda = 1.0;  // dilation parameter
  double xi = 0.0;      // modulation wavenumber (oscillatory case)
  double J = 0.0;
};

struct UnboundedWitness {
  int construction = 0;  // 1: amplitude+dilation, 2: pure dilation, 3: modulated
  ScalingPair pair;      // as given (before any sign flip)
  double q = 0.0;
  double m_reference = 0.0;
  std::vector<UnboundedRow> rows;  // strictly decreasing J
  bool monotone = false;
  bool crossed = false;  // J dropped below -10 m_reference
  double xi_lattice = 0.0;  // final modulation snapped to the reference box
};

// For a pair with neither (alpha, beta) nor (-alpha, -beta) admissible,
// tabulates an explicit family with K = 0 and J decreasing without bound
// for the pure power |u|^q. Admissible input (either sign) is refused with
// PreconditionViolation; q outside the construction's window raises
// ParamOutOfRange; an amplitude constraint with no root raises
// EmptyConstraint.
UnboundedWitness appendix_a_scan(int d, const ScalingPair& pair, double q,
                                 double m_reference);

// ---- two-sided comparability of E and EQ under K_{1,0} >= 0 ----

struct EnergyEquivalenceRow {
  int field = -1;
  double E = 0.0;
  double EQ = 0.0;
  double K10 = 0.0;
};

struct EnergyEquivalenceTable {
  double min_lower_slack = 0.0;  // min of EQ - E
  double min_upper_slack = 0.0;  // min of (1 + d/2) E - EQ
  int violations = 0;
  std::size_t rows_audited = 0;
  std::vector<EnergyEquivalenceRow> rows;  // extremal and violating rows
};

// Checks E <= EQ <= (1 + d/2) E on every field with K_{1,0} >= 0; fields with
// K_{1,0} < 0 are skipped (the bound assumes nonnegative K_{1,0}).
EnergyEquivalenceTable energy_equivalence_audit(
    const RadialGrid& g, const NonlinearityModel& model,
    const std::vector<StatePair>& fields, double c = 1.0);

}  // namespace nlkg
