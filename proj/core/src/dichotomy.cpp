#include "nlkg/dichotomy.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "nlkg/radial.hpp"

namespace nlkg {

namespace {

Label majority_label(const std::vector<Label>& labels) {
  int counts[3] = {0, 0, 0};
  for (Label l : labels) counts[static_cast<int>(l)]++;
  int best = 0;
  for (int i = 1; i < 3; ++i)
    if (counts[i] > counts[best]) best = i;
  return static_cast<Label>(best);
}

bool k_sign_constant(const std::vector<RunSample>& samples, Label predicted,
                     double k_ref) {
  const double tol = 1e-6 * (1.0 + std::abs(k_ref));
  for (const auto& s : samples) {
    if (predicted == Label::KPlus && s.K10 < -tol) return false;
    if (predicted == Label::KMinus && s.K10 > tol) return false;
  }
  return true;
}

}  // namespace

DichotomyReport run_dichotomy(const SweepSpec& spec) {
  const auto t_start = std::chrono::steady_clock::now();
  if (spec.use_radial3 && spec.d != 3)
    throw ParamOutOfRange("run_dichotomy: reduced radial integrator is 3d only");

  DichotomyReport rep;

  // threshold for the model; reuse the shot profile as the data source
  ShootConfig shoot_cfg;
  const ThresholdResult tr = compute_m(spec.model, spec.d, shoot_cfg);
  rep.m = tr.m;
  rep.c = tr.c;
  if (!tr.ground_state)
    throw PreconditionViolation(
        "run_dichotomy: model has no shot ground state to scale");
  const GroundStateResult& gs = *tr.ground_state;

  rep.pairs = admissible_pair_sweep(spec.d, spec.pair_count);

  // data list: scaled ground states, then seeded bumps
  std::vector<SweepDatum> data;
  for (double s : spec.ground_state_scales) {
    std::ostringstream name;
    name << "scaled_Q_" << s;
    const auto& gq = gs.grid;
    const auto& Q = gs.Q;
    data.push_back(SweepDatum{
        name.str(),
        [s, &gq, &Q](double r) { return s * radial_interp(gq, Q, r); },
        [](double) { return 0.0; }});
  }
  const double r_cls =
      spec.use_radial3 ? spec.radial_extent : 0.5 * spec.box_length;
  RadialGrid gcls(spec.d, r_cls, 32768);
  if (spec.random_bumps > 0) {
    auto bumps = random_subthreshold_fields(gcls, spec.model, rep.m,
                                            spec.random_bumps, spec.seed,
                                            rep.c);
    for (int i = 0; i < spec.random_bumps; ++i) {
      std::ostringstream name;
      name << "bump_" << i;
      auto vals = bumps[i];
      data.push_back(SweepDatum{
          name.str(),
          [vals, &gcls](double r) { return radial_interp(gcls, vals, r); },
          [](double) { return 0.0; }});
    }
  }

  EvolveConfig run_cfg = spec.run;
  run_cfg.c = rep.c;
  run_cfg.m_reference = rep.m;

  for (const auto& datum : data) {
    DichotomyRow row;
    row.name = datum.name;

    // sign-test prediction under every pair
    StatePair s_cls{gcls.sample(datum.u0), gcls.sample(datum.u1)};
    std::vector<Label> labels;
    bool tie_band = false;
    for (const auto& sp : rep.pairs) {
      Verdict v = classify(gcls, spec.model, s_cls, sp, rep.m, rep.c);
      labels.push_back(v.label);
      tie_band = tie_band || v.threshold_adjacent;
      row.E = v.E;
    }
    row.predicted = majority_label(labels);
    row.pairs_agree =
        std::all_of(labels.begin(), labels.end(),
                    [&](Label l) { return l == row.predicted; });
    if (!row.pairs_agree) rep.parameter_violations++;
    row.EQ = quadratic_energy(gcls, s_cls, rep.c);
    row.K10 = K_functional(gcls, spec.model, s_cls.u0, ScalingPair{1.0, 0.0},
                           rep.c);
    row.small_data = row.EQ <= 0.01 * rep.m;
    row.threshold_adjacent = tie_band;

    // one run per datum, refined once if the cap hit before the convexity
    // monitor had enough samples to certify
    auto run_once = [&](const EvolveConfig& cfg) {
      if (spec.use_radial3)
        return evolve_radial3(spec.model, datum.u0, datum.u1,
                              spec.radial_extent, spec.radial_interior, cfg);
      BoxGrid g(spec.d, spec.box_length, spec.box_n);
      StatePair s0{g.sample_radial(datum.u0), g.sample_radial(datum.u1)};
      return evolve(g, spec.model, s0, cfg);
    };
    RunRecord rec = run_once(run_cfg);
    if (rec.cap_exceeded && !rec.blowup.fired) {
      EvolveConfig fine = run_cfg;
      fine.sample_dt = std::max(rec.t_cap / 150.0, 1e-4);
      fine.T = std::min(run_cfg.T, 1.5 * rec.t_cap + 1.0);
      rec = run_once(fine);
    }

    row.observed = rec.outcome;
    row.threshold_adjacent = row.threshold_adjacent || rec.threshold_adjacent;
    row.t_cap = rec.t_cap;
    row.delta = rec.blowup.delta;
    if (!rec.history.increments.empty())
      row.last_increment = rec.history.increments.back();
    if (!rec.samples.empty()) {
      row.E = rec.samples.front().E;
      row.EQ = rec.samples.front().EQ;
    }

    switch (row.predicted) {
      case Label::KMinus:
        row.agree = (row.observed == Outcome::BlewUp);
        break;
      case Label::KPlus:
        if (row.observed == Outcome::Dispersed) {
          row.agree = true;
        } else if (row.observed == Outcome::Undecided &&
                   row.threshold_adjacent) {
          row.agree = false;
          row.excluded = true;  // cannot certify t -> infinity at the edge
        } else {
          row.agree = false;
        }
        break;
      case Label::AboveThreshold:
        row.agree = true;  // control row, no prediction to test
        break;
    }
    if (row.predicted != Label::AboveThreshold)
      row.k_sign_held = k_sign_constant(rec.samples, row.predicted, row.K10);

    if (row.excluded)
      rep.excluded_rows++;
    else if (!row.agree)
      rep.disagreements++;
    rep.rows.push_back(std::move(row));
  }

  rep.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  return rep;
}

KGapTable k_gap_audit(const RadialGrid& g, const NonlinearityModel& model,
                      double m, const std::vector<std::vector<double>>& fields,
                      const std::vector<ScalingPair>& pairs, double c) {
  const int d = g.dim();
  for (const auto& sp : pairs) {
    require_admissible(sp, d);
    if (d == 2 && sp.alpha == 0.0)
      throw PreconditionViolation(
          "k_gap_audit: the (d,alpha)=(2,0) pair admits no uniform gap");
  }

  KGapTable table;
  table.delta = std::numeric_limits<double>::infinity();
  table.min_margin = std::numeric_limits<double>::infinity();
  std::optional<KGapRow> delta_row, margin_row;

  for (std::size_t fi = 0; fi < fields.size(); ++fi) {
    const auto& phi = fields[fi];
    const double J = static_energy(g, model, phi, c);
    if (!(J < m)) continue;  // the bound only speaks below the threshold
    for (const auto& sp : pairs) {
      KParts kp = K_parts(g, model, phi, sp, c);
      if (kp.KQ < 1e-14 * (1.0 + std::abs(m))) continue;  // zero field
      KGapRow row;
      row.field = static_cast<int>(fi);
      row.pair = sp;
      row.J = J;
      row.K = kp.K();
      row.KQ = kp.KQ;
      row.gap = sp.mu_max(d) * (m - J);
      table.rows_audited++;
      if (row.K >= 0.0) {
        if (row.K < row.gap) {
          const double ratio = row.K / row.KQ;
          if (ratio < table.delta) {
            table.delta = ratio;
            delta_row = row;
          }
        }
      } else {
        const double margin = -row.K - row.gap;
        if (margin < table.min_margin) {
          table.min_margin = margin;
          margin_row = row;
        }
        const double tol = 1e-9 * (row.KQ + std::abs(row.K) + row.gap);
        if (margin < -tol) {
          row.violation = true;
          table.violations++;
          table.rows.push_back(row);
        }
      }
    }
  }
  if (!std::isfinite(table.delta)) table.delta = 1.0;  // unconstrained fit
  if (!std::isfinite(table.min_margin)) table.min_margin = 0.0;
  if (delta_row) table.rows.push_back(*delta_row);
  if (margin_row) table.rows.push_back(*margin_row);
  return table;
}

std::vector<std::vector<double>> random_subthreshold_fields(
    const RadialGrid& g, const NonlinearityModel& model, double m,
    int count, unsigned seed, double c) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double a_cap = std::min(4.0, 0.45 * model.amplitude_cap());

  std::vector<std::vector<double>> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    // half the family starts large (negative action, K < 0 side), half small
    const bool large = (i % 2 == 0);
    double A = large ? (1.0 + unif(rng) * (a_cap - 1.0))
                     : (0.05 + 0.6 * unif(rng));
    const double w = 0.6 + 2.4 * unif(rng);
    const double r0 = 3.0 * unif(rng);
    const double b = -0.5 + unif(rng);
    const double eta = 3.0 * unif(rng);
    std::vector<double> phi;
    for (int tries = 0; tries < 80; ++tries) {
      phi = g.sample([&](double r) {
        const double shell = std::exp(-((r - r0) / w) * ((r - r0) / w));
        const double core =
            b * std::exp(-(r / (0.7 * w)) * (r / (0.7 * w))) * std::cos(eta * r);
        return A * (shell + core);
      });
      const double J = static_energy(g, model, phi, c);
      if (std::isfinite(J) && J < m * (1.0 - 1e-6)) break;
      A *= 0.7;
    }
    out.push_back(std::move(phi));
  }
  return out;
}

// ---- witness families ----

namespace {

// Simpson rule for an even-extent 1d integral.
template <typename F>
double simpson(const F& f, double X, int n) {
  const double h = 2.0 * X / n;
  double acc = f(-X) + f(X);
  for (int i = 1; i < n; ++i)
    acc += f(-X + i * h) * ((i % 2) ? 4.0 : 2.0);
  return acc * h / 3.0;
}

struct GaussianBase {
  double A = 0.0, M = 0.0, F = 0.0;  // gradient, mass, |phi|^q integrals
};

GaussianBase gaussian_base(int d, double q) {
  RadialGrid g(d, 12.0, 8192);
  auto phi = g.sample([](double r) { return std::exp(-r * r); });
  GaussianBase base;
  base.A = gradient_sq(g, phi);
  base.M = l2_sq(g, phi);
  std::vector<double> pq(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) pq[i] = std::pow(phi[i], q);
  base.F = g.integrate(pq);
  return base;
}

// Keeps the longest strictly decreasing suffix ending at the first row that
// crosses the floor, and drops everything before it.
void finish_table(UnboundedWitness& w, double floor) {
  auto& rows = w.rows;
  std::size_t stop = rows.size();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].J < floor) {
      stop = i + 1;
      break;
    }
  }
  rows.resize(stop);
  std::size_t start = 0;
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (!(rows[i].J < rows[i - 1].J)) start = i;
  rows.erase(rows.begin(), rows.begin() + start);
  w.monotone = rows.size() >= 2;
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (!(rows[i].J < rows[i - 1].J)) w.monotone = false;
  w.crossed = !rows.empty() && rows.back().J < floor;
}

// modulated-profile 1d factors at wavenumber xi, bump exp(-t^2)
struct ModFactors {
  double mass;   // integral of cos^2(xi t) e^{-2t^2}
  double grad1;  // integral of (xi sin(xi t) + 2t cos(xi t))^2 e^{-2t^2}
  double fq;     // integral of |cos(xi t)|^q e^{-q t^2}
};

ModFactors mod_factors(double xi, double q) {
  const double X = 12.0;
  const int n = 12000;
  ModFactors mf;
  mf.mass = simpson(
      [xi](double t) {
        const double ct = std::cos(xi * t);
        return ct * ct * std::exp(-2.0 * t * t);
      },
      X, n);
  mf.grad1 = simpson(
      [xi](double t) {
        const double s = xi * std::sin(xi * t) + 2.0 * t * std::cos(xi * t);
        return s * s * std::exp(-2.0 * t * t);
      },
      X, n);
  mf.fq = simpson(
      [xi, q](double t) {
        return std::pow(std::abs(std::cos(xi * t)), q) *
               std::exp(-q * t * t);
      },
      X, n);
  return mf;
}

}  // namespace

UnboundedWitness appendix_a_scan(int d, const ScalingPair& pair, double q,
                                 double m_reference) {
  if (pair.alpha == 0.0 && pair.beta == 0.0)
    throw ParamOutOfRange("appendix_a_scan: (0,0) is not a direction");
  const ScalingPair neg{-pair.alpha, -pair.beta};
  if (pair.admissible(d) || neg.admissible(d)) {
    std::ostringstream os;
    os << "appendix_a_scan: " << pair.str() << " or its negation is admissible"
       << " in d=" << d << "; no unbounded direction exists there";
    throw PreconditionViolation(os.str());
  }
  const double q_hi =
      d >= 3 ? 2.0 * d / (d - 2.0) : std::numeric_limits<double>::infinity();
  if (!(q > 2.0 && q < q_hi))
    throw ParamOutOfRange("appendix_a_scan: exponent outside (2, 2d/(d-2))");

  // normalize the direction so the spatial weight is positive; the constraint
  // K = 0 and the action J are unchanged by the flip
  ScalingPair wp = pair;
  if (wp.beta < 0.0) wp = ScalingPair{-wp.alpha, -wp.beta};
  const double mw = wp.mass_weight(d);
  const double gw = wp.grad_weight(d);
  const double p = q - 2.0;
  const double kn_coeff = wp.alpha * q + d * wp.beta;  // alpha p + mass weight

  UnboundedWitness w;
  w.pair = pair;
  w.q = q;
  w.m_reference = m_reference;
  const double floor = -10.0 * std::abs(m_reference);

  if (gw >= 0.0) {
    // amplitude root of the zero-weight part, then dilation; when the spatial
    // weight also vanishes the dilation alone drives J down
    if (kn_coeff <= 0.0)
      throw EmptyConstraint(
          "appendix_a_scan: amplitude constraint has no nontrivial zero");
    const GaussianBase b0 = gaussian_base(d, q);
    const double s = std::pow(mw * b0.M / (2.0 * kn_coeff * b0.F), 1.0 / p);
    const double As = s * s * b0.A;
    const double Ms = s * s * b0.M;
    const double Fs = std::pow(s, q) * b0.F;
    if (gw > 0.0) {
      w.construction = 1;
      for (int j = 0; j < 60; ++j) {
        const double nu = 1.0 + 0.5 * std::pow(0.4, j);
        const double k1 = 0.5 * gw * nu * nu * As;
        const double k2 =
            0.5 * mw * nu * nu * Ms - kn_coeff * std::pow(nu, q) * Fs;
        if (!(k2 < 0.0)) continue;
        const double lam = std::sqrt(-k1 / k2);
        const double J = 0.5 * nu * nu * std::pow(lam, d - 2) * As +
                         std::pow(lam, d) *
                             (0.5 * nu * nu * Ms - std::pow(nu, q) * Fs);
        if (!std::isfinite(J)) break;
        w.rows.push_back(UnboundedRow{nu, lam, 0.0, J});
        if (J < floor) break;
      }
    } else {
      w.construction = 2;
      const double lam_min2 = (d - 2.0) * As / (2.0 * d * (Fs - 0.5 * Ms));
      double lam = 1.05 * std::sqrt(std::max(1.0, lam_min2));
      for (int j = 0; j < 400; ++j, lam *= std::sqrt(2.0)) {
        const double J = 0.5 * std::pow(lam, d - 2) * As +
                         std::pow(lam, d) * (0.5 * Ms - Fs);
        if (!std::isfinite(J)) break;
        w.rows.push_back(UnboundedRow{s, lam, 0.0, J});
        if (J < floor) break;
      }
    }
  } else {
    // mixed signs: oscillate across the zero set, K(nu, xi) = 0 solved in xi
    w.construction = 3;
    if (!(kn_coeff < 0.0 && wp.alpha * p + 2.0 * wp.beta > 0.0))
      throw ParamOutOfRange(
          "appendix_a_scan: exponent outside the modulation window for this "
          "pair");
    const double X = 12.0;
    const int n1 = 12000;
    const double Ig2 = simpson(
        [](double t) { return std::exp(-2.0 * t * t); }, X, n1);
    const double Q2 = simpson(
        [](double t) { return 4.0 * t * t * std::exp(-2.0 * t * t); }, X, n1);
    const double Gq = simpson(
        [q](double t) { return std::exp(-q * t * t); }, X, n1);
    const double tgauss = std::pow(Ig2, d - 1);
    const double tgauss2 = (d >= 2) ? std::pow(Ig2, d - 2) : 0.0;

    auto eval = [&](double nu, double xi) {
      const ModFactors mf = mod_factors(xi, q);
      const double M = nu * nu * mf.mass * tgauss;
      const double A =
          nu * nu * (mf.grad1 * tgauss + (d - 1) * mf.mass * Q2 * tgauss2);
      const double F = std::pow(nu, q) * mf.fq * std::pow(Gq, d - 1);
      const double K = 0.5 * gw * A + 0.5 * mw * M - kn_coeff * F;
      const double J = 0.5 * A + 0.5 * M - F;
      return std::pair<double, double>(K, J);
    };

    // lattice cap: modulation resolvable with >= 8 points per wavelength on
    // the reference box
    const double href = 16.0 / 2048.0;
    const double xi_cap = 2.0 * M_PI / (8.0 * href);

    double nu = 1.0;
    for (int tries = 0; tries < 60 && eval(nu, 0.0).first <= 0.0; ++tries)
      nu *= 2.0;
    if (eval(nu, 0.0).first <= 0.0)
      throw EmptyConstraint(
          "appendix_a_scan: no positive-K starting amplitude found");

    for (int j = 0; j < 96; ++j, nu *= std::pow(2.0, 0.125)) {
      if (eval(nu, 0.0).first <= 0.0) continue;
      double lo = 0.0, hi = 1.0;
      int grow = 0;
      while (eval(nu, hi).first > 0.0 && grow++ < 24) hi *= 2.0;
      if (eval(nu, hi).first > 0.0) break;  // no sign change in reach
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (eval(nu, mid).first > 0.0 ? lo : hi) = mid;
      }
      const double xi = 0.5 * (lo + hi);
      if (xi > xi_cap) break;
      const double J = eval(nu, xi).second;
      if (!std::isfinite(J)) break;
      w.rows.push_back(UnboundedRow{nu, 1.0, xi, J});
      if (J < floor) break;
    }
    if (!w.rows.empty()) {
      const double Lref = 16.0;
      const double xi_last = w.rows.back().xi;
      w.xi_lattice =
          std::round(xi_last * Lref / (2.0 * M_PI)) * 2.0 * M_PI / Lref;
    }
  }

  finish_table(w, floor);
  return w;
}

EnergyEquivalenceTable energy_equivalence_audit(
    const RadialGrid& g, const NonlinearityModel& model,
    const std::vector<StatePair>& fields, double c) {
  EnergyEquivalenceTable table;
  table.min_lower_slack = std::numeric_limits<double>::infinity();
  table.min_upper_slack = std::numeric_limits<double>::infinity();
  std::optional<EnergyEquivalenceRow> lo_row, hi_row;
  const double half_d = 0.5 * g.dim();

  for (std::size_t fi = 0; fi < fields.size(); ++fi) {
    const auto& s = fields[fi];
    EnergyEquivalenceRow row;
    row.field = static_cast<int>(fi);
    row.K10 = K_functional(g, model, s.u0, ScalingPair{1.0, 0.0}, c);
    if (row.K10 < 0.0) continue;  // the two-sided bound assumes K_{1,0} >= 0
    row.E = energy(g, model, s, c);
    row.EQ = quadratic_energy(g, s, c);
    table.rows_audited++;
    const double lower = row.EQ - row.E;
    const double upper = (1.0 + half_d) * row.E - row.EQ;
    const double tol = 1e-9 * (1.0 + row.EQ);
    if (lower < table.min_lower_slack) {
      table.min_lower_slack = lower;
      lo_row = row;
    }
    if (upper < table.min_upper_slack) {
      table.min_upper_slack = upper;
      hi_row = row;
    }
    if (lower < -tol || upper < -tol) {
      table.violations++;
      table.rows.push_back(row);
    }
  }
  if (!std::isfinite(table.min_lower_slack)) table.min_lower_slack = 0.0;
  if (!std::isfinite(table.min_upper_slack)) table.min_upper_slack = 0.0;
  if (lo_row) table.rows.push_back(*lo_row);
  if (hi_row) table.rows.push_back(*hi_row);
  return table;
}

}  // namespace nlkg
