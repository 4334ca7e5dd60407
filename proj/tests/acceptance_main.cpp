// Acceptance gate. Each numbered block exercises one headline numerical
// claim end to end, prints a single PASS/FAIL line, and the process exits
// with the number of failures. Blocks are self contained (each one computes
// the ground states it needs) so the stated runtime bounds are honest; the
// only shared state is the dichotomy report pair 7 hands to 8.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nlkg/dichotomy.hpp"
#include "nlkg/errors.hpp"
#include "nlkg/exponents.hpp"

namespace {

using namespace nlkg;
using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

struct CheckResult {
  bool pass = true;
  std::string detail;
};

struct Block {
  CheckResult res;
  std::ostringstream note;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      res.pass = false;
      if (!res.detail.empty()) res.detail += "; ";
      res.detail += what;
    }
  }
  CheckResult finish() {
    if (res.pass) res.detail = note.str();
    return res;
  }
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

// smooth radial bumps with randomized amplitude, width, center and ripple
std::vector<double> bump_field(const RadialGrid& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> A(0.2, 1.4), W(0.6, 2.5), R0(0.0, 3.0),
      ETA(0.0, 2.0);
  const double a = A(rng), w = W(rng), r0 = R0(rng), eta = ETA(rng);
  return g.sample([=](double r) {
    const double s = (r - r0) / w;
    return a * std::exp(-s * s) * std::cos(eta * r);
  });
}

// J(phi^lambda) evaluated exactly on the sampling grid: the quadratic terms
// scale by e^{grad_weight lambda} and e^{mass_weight lambda}, and the
// potential term is e^{d beta lambda} integral of f(e^{alpha lambda} phi).
// No resampling, so centered differences in lambda probe the K closed form
// at quadrature accuracy.
double j_along_ray(const RadialGrid& g, const NonlinearityModel& model,
                   const std::vector<double>& u, const ScalingPair& sp,
                   double lambda, double c) {
  const int d = g.dim();
  const double A = gradient_sq(g, u);
  const double M = l2_sq(g, u);
  const double ea = std::exp(sp.alpha * lambda);
  std::vector<double> fu(g.size());
  for (std::size_t i = 0; i < u.size(); ++i) fu[i] = model.f(ea * u[i]);
  const double Fl = std::exp(d * sp.beta * lambda) * g.integrate(fu);
  return std::exp(sp.grad_weight(d) * lambda) * A / 2.0 +
         c * std::exp(sp.mass_weight(d) * lambda) * M / 2.0 - Fl;
}

// fourth-order first and second lambda-derivatives of J along the ray
double ray_d1(const RadialGrid& g, const NonlinearityModel& model,
              const std::vector<double>& u, const ScalingPair& sp, double h,
              double c) {
  const auto j = [&](double la) { return j_along_ray(g, model, u, sp, la, c); };
  return (8.0 * (j(h) - j(-h)) - (j(2 * h) - j(-2 * h))) / (12.0 * h);
}
double ray_d2(const RadialGrid& g, const NonlinearityModel& model,
              const std::vector<double>& u, const ScalingPair& sp, double h,
              double c) {
  const auto j = [&](double la) { return j_along_ray(g, model, u, sp, la, c); };
  const double j0 = j(0.0);
  return (16.0 * (j(h) + j(-h) - 2 * j0) - (j(2 * h) + j(-2 * h) - 2 * j0)) /
         (12.0 * h * h);
}

// report pair stashed by block 7 for block 8
std::optional<DichotomyReport> g_dichotomy_d1, g_dichotomy_d3;

// ---- 1: critical-power threshold, two quadrature routes ----
CheckResult crit_critical_threshold() {
  Block b;
  for (int d : {3, 4, 5}) {
    const auto t0 = clock_type::now();
    const auto ct = critical_threshold(d);
    const double el = seconds_since(t0);
    const double rel = std::abs(ct.m - ct.m_sobolev) / ct.m;
    b.require(rel <= 1e-6,
              "d=" + std::to_string(d) + " routes differ rel=" + fmt("%.3g", rel));
    b.require(el < 10.0, "d=" + std::to_string(d) + " too slow " + fmt("%.1fs", el));
    b.note << "d" << d << " rel=" << fmt("%.2g", rel) << " ";
  }
  return b.finish();
}

// ---- 2: 1d |u|^8 ground state vs the closed-form solitary wave ----
CheckResult crit_soliton_1d() {
  Block b;
  const auto t0 = clock_type::now();
  const auto model = NonlinearityModel::single_power(1, 8.0);
  const auto gs = shoot(model, 1);
  // Q(r) = 2^{-1/6} sech^{1/3}(3r)
  const double amp = std::pow(2.0, -1.0 / 6.0);
  double sup = 0.0;
  for (std::size_t j = 0; j < gs.grid.size(); ++j) {
    const double r = gs.grid.nodes()[j];
    const double exact = amp * std::pow(1.0 / std::cosh(3.0 * r), 1.0 / 3.0);
    sup = std::max(sup, std::abs(gs.Q[j] - exact));
  }
  // threshold by quadrature of the analytic profile on an unrelated grid,
  // with the derivative in closed form
  const RadialGrid fine(1, 30.0, 1u << 16);
  const auto Q = fine.sample([=](double r) {
    return amp * std::pow(1.0 / std::cosh(3.0 * r), 1.0 / 3.0);
  });
  const auto Qp = fine.sample([=](double r) {
    return -amp * std::pow(1.0 / std::cosh(3.0 * r), 1.0 / 3.0) *
           std::tanh(3.0 * r);
  });
  std::vector<double> dens(fine.size());
  for (std::size_t j = 0; j < fine.size(); ++j)
    dens[j] = 0.5 * (Qp[j] * Qp[j] + Q[j] * Q[j]) - std::pow(Q[j], 8.0);
  const double m_exact = fine.integrate(dens);
  const double el = seconds_since(t0);

  const double rel_m = std::abs(gs.m - m_exact) / m_exact;
  b.require(sup <= 1e-8, "sup error " + fmt("%.3g", sup));
  b.require(rel_m <= 1e-7, "threshold rel err " + fmt("%.3g", rel_m));
  b.require(el < 5.0, "too slow " + fmt("%.1fs", el));
  b.note << "sup=" << fmt("%.2g", sup) << " m_rel=" << fmt("%.2g", rel_m)
         << " " << fmt("%.2fs", el);
  return b.finish();
}

// ---- 3: K_{alpha,beta}(Q) vanishes across the admissible cone ----
CheckResult crit_pohozaev() {
  Block b;
  const auto t0 = clock_type::now();
  for (int d : {1, 3}) {
    const auto model = d == 1 ? NonlinearityModel::single_power(1, 8.0)
                              : NonlinearityModel::single_power(3, 4.0);
    const auto gs = shoot(model, d);
    const auto pairs = admissible_pair_sweep(d, 20);
    b.require(pairs.size() >= 20, "pair sweep too small");
    double worst = 0.0;
    for (const auto& sp : pairs) {
      const auto kp = K_parts(gs.grid, model, gs.Q, sp);
      worst = std::max(worst, std::abs(kp.K()) / kp.KQ);
    }
    b.require(worst <= 1e-6,
              "d=" + std::to_string(d) + " |K|/K^Q=" + fmt("%.3g", worst));
    b.note << "d" << d << " worst=" << fmt("%.2g", worst) << " ";
  }
  const double el = seconds_since(t0);
  b.require(el < 5.0, "too slow " + fmt("%.1fs", el));
  b.note << fmt("%.2fs", el);
  return b.finish();
}

// ---- 4: K closed form vs centered differences of J along the ray ----
CheckResult crit_scaling_derivative() {
  Block b;
  const auto model = NonlinearityModel::single_power(3, 4.0);
  const RadialGrid g(3, 14.0, 4096);
  const auto pairs = admissible_pair_sweep(3, 10);
  std::mt19937_64 rng(401u);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto u = bump_field(g, rng);
    for (const auto& sp : pairs) {
      const double K = K_functional(g, model, u, sp);
      const double fd = ray_d1(g, model, u, sp, 1e-3, 1.0);
      const double rel =
          std::abs(K - fd) / std::max({std::abs(K), std::abs(fd), 1e-3});
      worst = std::max(worst, rel);
    }
  }
  b.require(worst <= 1e-5, "worst rel err " + fmt("%.3g", worst));
  b.note << "500 comparisons, worst=" << fmt("%.2g", worst);
  return b.finish();
}

// ---- 5: the two mountain-pass inequalities, zero violations ----
CheckResult crit_mountain_pass() {
  Block b;
  struct Suite {
    NonlinearityModel model;
    int d;
  };
  const Suite suites[] = {
      {NonlinearityModel::single_power(1, 8.0), 1},
      {NonlinearityModel::single_power(3, 4.0), 3},
      {NonlinearityModel::power_sum(3, {{0.3, 3.6}, {0.5, 5.0}}), 3},
      {NonlinearityModel::exponential_2d(1.0, 5.0, 1.0, 0.0), 2},
  };
  int checked = 0, violations = 0;
  for (const auto& s : suites) {
    const auto growth =
        verify_growth_conditions(s.model, s.d, default_growth_samples(s.model));
    b.require(growth.pass, s.model.describe() + " fails the growth conditions");
    if (!growth.pass) continue;
    const double eps = growth.eps_max;
    const RadialGrid g(s.d, 14.0, 4096);
    std::mt19937_64 rng(500u + s.d);
    const auto pairs = admissible_pair_sweep(s.d, 8);
    for (int i = 0; i < 12; ++i) {
      const auto u = bump_field(g, rng);
      const double J = static_energy(g, s.model, u);
      const double K10_df = Dab_F(g, s.model, u, {1.0, 0.0});  // int u f'(u)
      const double F = F_integral(g, s.model, u);
      const double A = gradient_sq(g, u);
      const double M = l2_sq(g, u);
      (void)K10_df;
      for (const auto& sp : pairs) {
        const double mu = sp.mu_max(s.d), ml = sp.mu_min(s.d);
        const double K = K_functional(g, s.model, u, sp);
        // (mu_max) J - K >= alpha eps F + |beta| min(M, A)
        {
          const double lhs = mu * J - K;
          const double rhs =
              sp.alpha * eps * F + std::abs(sp.beta) * std::min(M, A);
          const double slack = 1e-9 * std::max({1.0, std::abs(lhs), std::abs(rhs)});
          ++checked;
          if (lhs < rhs - slack) {
            ++violations;
            b.require(false, "monotonicity violated at pair " + sp.str());
          }
        }
        // -(D - mu_max)(D - mu_min) J >= (2 alpha eps / (d+1)) D F,
        // the differential operators realized as fourth-order differences
        {
          const double j1 = ray_d1(g, s.model, u, sp, 1e-3, 1.0);
          const double j2 = ray_d2(g, s.model, u, sp, 1e-3, 1.0);
          const double lhs = -(j2 - (mu + ml) * j1 + mu * ml * J);
          const double rhs =
              2.0 * sp.alpha * eps / (s.d + 1) * Dab_F(g, s.model, u, sp);
          const double slack = 1e-6 * std::max({1.0, std::abs(lhs), std::abs(rhs)});
          ++checked;
          if (lhs < rhs - slack) {
            ++violations;
            b.require(false, "convexity violated at pair " + sp.str());
          }
        }
      }
    }
  }
  b.note << checked << " inequality checks, " << violations << " violations";
  return b.finish();
}

// ---- 6: closed forms of H at the three named pairs ----
CheckResult crit_h_closed_forms() {
  Block b;
  int count = 0;
  double worst = 0.0;
  for (int d : {1, 3}) {
    const auto model = d == 1 ? NonlinearityModel::single_power(1, 8.0)
                              : NonlinearityModel::single_power(3, 4.0);
    const RadialGrid g(d, 14.0, 4096);
    std::mt19937_64 rng(600u + d);
    for (int i = 0; i < 50; ++i) {
      const auto u = bump_field(g, rng);
      const double A = gradient_sq(g, u);
      const double M = l2_sq(g, u);
      const double F = F_integral(g, model, u);
      const double Ufp = Dab_F(g, model, u, {1.0, 0.0});  // int u f'(u)
      const struct {
        ScalingPair sp;
        double closed;
      } cases[] = {
          {{1.0, 0.0}, Ufp / 2.0 - F},
          {{0.0, 1.0}, A / d},
          {{double(d), -2.0}, M / 2.0 + d / 4.0 * Ufp - (1.0 + d / 2.0) * F},
      };
      for (const auto& cs : cases) {
        const double H = H_functional(g, model, u, cs.sp);
        const double err =
            std::abs(H - cs.closed) / std::max(1.0, std::abs(H));
        worst = std::max(worst, err);
        ++count;
        if (err > 1e-10)
          b.require(false, "pair " + cs.sp.str() + " err " + fmt("%.3g", err));
      }
    }
  }
  b.note << count << " evaluations (100 fields x 3 pairs), worst="
         << fmt("%.2g", worst);
  return b.finish();
}

// ---- 7: sign test vs long-time behaviour, both integrators ----
CheckResult crit_dichotomy() {
  Block b;
  const auto t0 = clock_type::now();
  {
    SweepSpec spec(NonlinearityModel::single_power(1, 8.0));
    spec.d = 1;
    spec.box_length = 80.0;
    spec.box_n = 4096;
    spec.pair_count = 20;
    spec.run.T = 40.0;
    spec.run.sample_dt = 0.004;
    spec.run.checkpoints = 40;
    g_dichotomy_d1 = run_dichotomy(spec);
  }
  {
    SweepSpec spec(NonlinearityModel::single_power(3, 4.0, 0.25));  // |u|^4/4
    spec.d = 3;
    spec.use_radial3 = true;
    spec.radial_extent = 32.0;
    spec.radial_interior = 4095;
    spec.pair_count = 20;
    spec.run.T = 20.0;
    spec.run.sample_dt = 0.004;
    spec.run.checkpoints = 40;
    g_dichotomy_d3 = run_dichotomy(spec);
  }
  const double el = seconds_since(t0);
  int agreed = 0, total = 0;
  for (const auto* rep : {&*g_dichotomy_d1, &*g_dichotomy_d3}) {
    for (const auto& r : rep->rows) {
      ++total;
      if (r.agree && !r.excluded) ++agreed;
    }
    b.require(rep->disagreements == 0,
              "disagreements=" + std::to_string(rep->disagreements));
    b.require(rep->parameter_violations == 0, "label depended on the pair");
    b.require(rep->excluded_rows == 0,
              "excluded rows=" + std::to_string(rep->excluded_rows));
  }
  b.require(total == 12 && agreed == 12,
            std::to_string(agreed) + "/" + std::to_string(total) + " agreed");
  b.require(el < 1800.0, "too slow " + fmt("%.0fs", el));
  b.note << agreed << "/" << total << " agree, " << fmt("%.0fs", el);
  return b.finish();
}

// ---- 8: every blow-up verdict carries a convexity certificate ----
CheckResult crit_blowup_certificates() {
  Block b;
  if (!g_dichotomy_d1 || !g_dichotomy_d3) {
    b.require(false, "no dichotomy reports (block 7 did not run)");
    return b.finish();
  }
  int kminus = 0;
  for (const auto* rep : {&*g_dichotomy_d1, &*g_dichotomy_d3}) {
    for (const auto& r : rep->rows) {
      if (r.predicted != Label::KMinus) continue;
      ++kminus;
      b.require(r.observed == Outcome::BlewUp, r.name + " did not blow up");
      b.require(r.delta > 0.0, r.name + " missing a positive delta");
      b.require(r.t_cap > 0.0, r.name + " missing the cap time");
    }
  }
  b.require(kminus == 6, "expected 6 KMinus rows, saw " + std::to_string(kminus));
  b.note << kminus << " blow-up runs, all certified";
  return b.finish();
}

// ---- 9: energy and momentum conservation over T = 50 ----
CheckResult crit_conservation() {
  Block b;
  const auto model = NonlinearityModel::single_power(1, 8.0);
  const BoxGrid g(1, 80.0, 1024);
  const double xc = 40.0;

  struct Ref {
    const char* name;
    StatePair s;
  };
  std::vector<Ref> refs;
  refs.push_back(
      {"two-bump",
       {g.sample_radial([](double) { return 0.0; }), std::vector<double>()}});
  {
    // asymmetric data with nonzero momentum
    std::vector<double> u0(g.total()), u1(g.total());
    for (std::size_t i = 0; i < g.total(); ++i) {
      const double dx = g.coord(i) - xc;
      u0[i] = 0.5 * std::exp(-(dx - 3.0) * (dx - 3.0));
      u1[i] = 0.2 * std::exp(-dx * dx);
    }
    refs[0].s = {u0, u1};
  }
  {
    // subthreshold scaled ground state (disperses, never caps)
    const auto gs = shoot(model, 1);
    auto u0 = g.sample_radial([&](double r) {
      return 0.8 * radial_interp(gs.grid, gs.Q, r);
    });
    refs.push_back({"0.8Q", {u0, std::vector<double>(g.total(), 0.0)}});
  }

  for (auto& ref : refs) {
    auto st = make_state(g, ref.s);
    const double E0 = box_energy(g, model, {st.u, st.udot});
    const double EQ0 = box_quadratic_energy(g, {st.u, st.udot});
    const auto d0 = diagnostics(g, model, {st.u, st.udot}, 20.0, {xc});
    const double dt = 0.005;
    double drift = 0.0;
    for (int k = 0; k < 10000; ++k) {
      step(st, dt, model);
      if ((k + 1) % 200 == 0) {
        const double E = box_energy(g, model, {st.u, st.udot});
        drift = std::max(drift, std::abs(E - E0) / std::abs(E0));
      }
    }
    const auto d1 = diagnostics(g, model, {st.u, st.udot}, 20.0, {xc});
    const double pdrift = std::abs(d1.P[0] - d0.P[0]);
    b.require(drift <= 1e-6,
              std::string(ref.name) + " energy drift " + fmt("%.3g", drift));
    b.require(pdrift <= 1e-8 * EQ0,
              std::string(ref.name) + " momentum drift " + fmt("%.3g", pdrift));
    b.note << ref.name << " dE=" << fmt("%.1e", drift)
           << " dP=" << fmt("%.1e", pdrift / EQ0) << "E^Q ";
  }
  return b.finish();
}

// ---- 10: uniform lower bound on |K| below the threshold ----
CheckResult crit_k_gap() {
  Block b;
  const auto model = NonlinearityModel::single_power(1, 8.0);
  const auto tr = compute_m(model, 1);
  const RadialGrid g(1, 40.0, 16384);
  const auto fields = random_subthreshold_fields(g, model, tr.m, 500, 7u, tr.c);
  b.require(fields.size() == 500, "field family incomplete");
  const auto pairs = admissible_pair_sweep(1, 10);
  const auto gap = k_gap_audit(g, model, tr.m, fields, pairs, tr.c);
  b.require(gap.violations == 0,
            std::to_string(gap.violations) + " disjunction violations");
  b.require(gap.delta > 0.0, "fitted delta not positive");
  b.note << "500 fields x " << pairs.size()
         << " pairs, delta=" << fmt("%.3g", gap.delta)
         << " margin=" << fmt("%.3g", gap.min_margin);
  return b.finish();
}

// ---- 11: witness families outside the cone; no false positives inside ----
CheckResult crit_unbounded_witnesses() {
  Block b;
  const double m_ref = shoot(NonlinearityModel::single_power(3, 4.0), 3).m;
  const struct {
    ScalingPair pair;
    double q;
    int construction;
  } cases[] = {
      {{-1.0, 3.0}, 4.0, 1},
      {{-1.0, 2.0}, 4.0, 2},
      {{-1.0, 1.0}, 3.5, 3},
  };
  for (const auto& cs : cases) {
    const auto w = appendix_a_scan(3, cs.pair, cs.q, m_ref);
    b.require(w.construction == cs.construction,
              cs.pair.str() + " routed to construction " +
                  std::to_string(w.construction));
    b.require(w.monotone, cs.pair.str() + " J not monotone");
    b.require(w.crossed, cs.pair.str() + " J never crossed -10 m_ref");
  }
  int false_positives = 0;
  for (const auto& sp : admissible_pair_sweep(3, 10)) {
    try {
      appendix_a_scan(3, sp, 4.0, m_ref);
      ++false_positives;  // an admissible pair must be refused
    } catch (const PreconditionViolation&) {
    }
  }
  b.require(false_positives == 0,
            std::to_string(false_positives) + " admissible pairs scanned");
  b.note << "3 constructions crossed, 10 admissible pairs refused";
  return b.finish();
}

// ---- 12: exact exponent relations on the invariant grid ----
CheckResult crit_exponent_relations() {
  Block b;
  const auto t0 = clock_type::now();
  int rows = 0;
  for (int d : {3, 4, 5, 6}) {
    const Rational p1 = range_p1(d).midpoint();
    for (const Rational& p2 : {range_p2(d).midpoint(), range_p2(d).hi}) {
      const auto rep = verify_relations(d, p1, p2);
      ++rows;
      b.require(rep.pass && rep.num_failed_required() == 0,
                "d=" + std::to_string(d) + " p2=" + p2.str() + " failed");
    }
  }
  const double el = seconds_since(t0);
  b.require(el < 1.0, "too slow " + fmt("%.2fs", el));
  b.note << rows << " grid rows exact, " << fmt("%.3fs", el);
  return b.finish();
}

// ---- 13: 2d exponential-case threshold and kinetic bounds ----
CheckResult crit_exponential_bounds() {
  Block b;
  const double pi = std::acos(-1.0);
  const auto model = NonlinearityModel::exponential_2d(1.0, 5.0, 1.0, 0.0);
  const auto tr = compute_m(model, 2);
  b.require(tr.m <= 2.0 * pi + 1e-6, "m=" + fmt("%.6f", tr.m) + " above 2 pi");

  const RadialGrid g(2, 16.0, 2048);
  const ScalingPair sp{1.0, 0.0};
  int kplus = 0;
  for (double a :
       {0.05, 0.1, 0.2, 0.3, 0.45, 0.6, 0.8, 1.0, 1.2, 1.5, 2.0, 2.5}) {
    for (double w : {0.8, 1.4}) {
      for (double bcoef : {0.0, 0.3}) {
        const auto u0 =
            g.sample([=](double r) { return a * std::exp(-r * r / (w * w)); });
        const auto u1 =
            g.sample([=](double r) { return bcoef * a * std::exp(-r * r); });
        const auto v = classify(g, model, {u0, u1}, sp, tr.m, tr.c);
        if (v.label != Label::KPlus) continue;
        ++kplus;
        b.require(v.grad_plus_kinetic < 4.0 * pi,
                  "KPlus state at the Trudinger-Moser energy");
        b.require(v.grad_plus_kinetic < 2.0 * tr.m,
                  "KPlus state above the 2m kinetic bound");
      }
    }
  }
  b.require(kplus >= 5, "only " + std::to_string(kplus) + " KPlus states seen");
  b.note << "m=" << fmt("%.7f", tr.m) << " <= 2pi, " << kplus
         << " KPlus states bounded";
  return b.finish();
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    CheckResult (*run)();
  };
  const Criterion criteria[] = {
      {"critical threshold, two routes", crit_critical_threshold},
      {"1d closed-form ground state", crit_soliton_1d},
      {"K vanishes at Q across the cone", crit_pohozaev},
      {"K vs scaling derivative of J", crit_scaling_derivative},
      {"mountain-pass inequalities", crit_mountain_pass},
      {"H closed forms", crit_h_closed_forms},
      {"dichotomy suite", crit_dichotomy},
      {"blow-up convexity certificates", crit_blowup_certificates},
      {"energy and momentum conservation", crit_conservation},
      {"uniform K-bound audit", crit_k_gap},
      {"unbounded-J witness families", crit_unbounded_witnesses},
      {"exact exponent relations", crit_exponent_relations},
      {"exponential-case bounds", crit_exponential_bounds},
  };

  int failures = 0;
  int idx = 0;
  for (const auto& c : criteria) {
    ++idx;
    const auto t0 = clock_type::now();
    CheckResult res;
    try {
      res = c.run();
    } catch (const std::exception& e) {
      res.pass = false;
      res.detail = std::string("exception: ") + e.what();
    }
    const double el = seconds_since(t0);
    std::printf("[%s] %2d %-34s (%6.2fs) %s\n", res.pass ? "PASS" : "FAIL",
                idx, c.name, el, res.detail.c_str());
    std::fflush(stdout);
    if (!res.pass) ++failures;
  }
  std::printf("%d/13 criteria passed\n", 13 - failures);
  return failures;
}
