#include "nlkg/ground_state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nlkg/errors.hpp"

namespace nlkg {

namespace {

// ---- radial static ODE: Q'' = c Q - f'(Q) - (d-1)/r Q' ----

struct StaticOde {
  const NonlinearityModel& model;
  int d;
  double c;
  void operator()(double r, const double y[2], double dy[2]) const {
    dy[0] = y[1];
    double drag = 0.0;
    if (d > 1) drag = (d - 1) / r * y[1];
    dy[1] = c * y[0] - model.eval(y[0]).fp - drag;
  }
};

// series start absorbing the coordinate singularity:
// Q(r) = a + k2 r^2 + k4 r^4 + O(r^6) with 2d k2 = ca - f'(a) and
// 4(d+2) k4 = (c - f''(a)) k2
void series_start(const NonlinearityModel& model, int d, double c, double a,
                  double r, double y[2]) {
  const auto v = model.eval(a);
  const double k2 = (c * a - v.fp) / (2.0 * d);
  const double k4 = k2 * (c - v.fpp) / (4.0 * (d + 2));
  y[0] = a + r * r * (k2 + r * r * k4);
  y[1] = r * (2.0 * k2 + 4.0 * r * r * k4);
}

enum class Shot { Overshoot, Undershoot };

// Dormand-Prince 5(4) step; returns the embedded error estimate.
template <typename F>
double dp45_step(const F& f, double r, const double y[2], double h,
                 double y5[2]) {
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                      a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                      a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                      a65 = -5103.0 / 18656;
  static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                      b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                      e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
  double k1[2], k2[2], k3[2], k4[2], k5[2], k6[2], k7[2], t[2];
  f(r, y, k1);
  for (int i = 0; i < 2; ++i) t[i] = y[i] + h * a21 * k1[i];
  f(r + h / 5, t, k2);
  for (int i = 0; i < 2; ++i) t[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
  f(r + 3 * h / 10, t, k3);
  for (int i = 0; i < 2; ++i)
    t[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
  f(r + 4 * h / 5, t, k4);
  for (int i = 0; i < 2; ++i)
    t[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
  f(r + 8 * h / 9, t, k5);
  for (int i = 0; i < 2; ++i)
    t[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                       a65 * k5[i]);
  f(r + h, t, k6);
  for (int i = 0; i < 2; ++i)
    y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                        b6 * k6[i]);
  f(r + h, y5, k7);
  double err = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                          e6 * k6[i] + e7 * k7[i]);
    err = std::max(err, std::abs(e));
  }
  return err;
}

Shot classify_shot(const NonlinearityModel& model, int d, double c, double a,
                   double r_end) {
  const StaticOde ode{model, d, c};
  double r = 1e-6, y[2];
  series_start(model, d, c, a, r, y);
  double h = 1e-3;
  const double atol = 1e-14 * a, rtol = 1e-12;
  while (r < r_end - 1e-12) {
    const double step = std::min(h, r_end - r);
    double y5[2];
    const double err = dp45_step(ode, r, y, step, y5);
    const double scale = atol + rtol * std::max(std::abs(y[0]), a);
    if (err <= scale) {
      r += step;
      y[0] = y5[0];
      y[1] = y5[1];
      if (y[0] <= 0.0 || std::abs(y[0]) > 2.0 * a) return Shot::Overshoot;
      if (y[1] > 0.0 && y[0] > 0.0) return Shot::Undershoot;
    }
    const double ratio = err > 0.0 ? 0.9 * std::pow(scale / err, 0.2) : 5.0;
    h = step * std::clamp(ratio, 0.2, 5.0);
    h = std::min(h, 0.25);
    if (h < 1e-14) throw NumericalBreakdown("shooting step size underflow");
  }
  // still positive and decaying at r_end: the turnaround lies beyond it
  return Shot::Undershoot;
}

// single classical RK4 step (the sampling pass walks exactly onto the grid
// nodes, where the fifth-order local error at the node spacing is far below
// every tolerance in play)
template <typename F>
void rk4_step(const F& f, double r, double y[2], double h) {
  double k1[2], k2[2], k3[2], k4[2], t[2];
  f(r, y, k1);
  for (int i = 0; i < 2; ++i) t[i] = y[i] + 0.5 * h * k1[i];
  f(r + 0.5 * h, t, k2);
  for (int i = 0; i < 2; ++i) t[i] = y[i] + 0.5 * h * k2[i];
  f(r + 0.5 * h, t, k3);
  for (int i = 0; i < 2; ++i) t[i] = y[i] + h * k3[i];
  f(r + h, t, k4);
  for (int i = 0; i < 2; ++i)
    y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

// exact decaying solution of the linearized far field -T'' - (d-1)/r T' + cT
// = 0, up to normalization: e^{-sqrt(c) r} in 1d, r^{-(d-2)/2} K_{(d-2)/2}
// otherwise. Using the true Bessel profile instead of its asymptotic series
// keeps the glue residual below the sup-norm residual budget even when the
// trust switch happens at moderate radius.
double tail_factor(int d, double c, double r) {
  const double s = std::sqrt(c);
  if (d == 1) return std::exp(-s * r);
  const double nu = 0.5 * (d - 2);
  return std::pow(r, -nu) * std::cyl_bessel_k(nu, s * r);
}

}  // namespace

GroundStateResult shoot(const NonlinearityModel& model, int d, double c,
                        const ShootConfig& cfg) {
  if (d < 1) throw ParamOutOfRange("shoot: d < 1");
  if (!(c > 0.0)) throw ParamOutOfRange("shoot: mass c must be positive");
  const double r_max = cfg.r_max > 0.0 ? cfg.r_max : 40.0;
  const std::size_t n = cfg.n > 0 ? cfg.n : 131072;
  RadialGrid grid(d, r_max, n);

  // bracket the shooting amplitude
  double a = cfg.a_init > 0.0 ? cfg.a_init : 1.0;
  double a_lo = 0.0, a_hi = 0.0;
  {
    const Shot first = classify_shot(model, d, c, a, r_max);
    if (first == Shot::Undershoot) {
      a_lo = a;
      double t = a;
      for (int i = 0; i < 200 && a_hi == 0.0; ++i) {
        t *= 2.0;
        if (t > 0.25 * model.amplitude_cap())
          throw BracketFailure("no overshoot below the amplitude cap");
        if (classify_shot(model, d, c, t, r_max) == Shot::Overshoot)
          a_hi = t;
        else
          a_lo = t;
      }
    } else {
      a_hi = a;
      double t = a;
      for (int i = 0; i < 200 && a_lo == 0.0; ++i) {
        t *= 0.5;
        if (t < 1e-300) throw BracketFailure("no undershoot above zero");
        if (classify_shot(model, d, c, t, r_max) == Shot::Undershoot)
          a_lo = t;
        else
          a_hi = t;
      }
    }
    if (a_lo == 0.0 || a_hi == 0.0)
      throw BracketFailure("shooting outcomes do not bracket");
  }
  while (a_hi - a_lo > cfg.bracket_tol * a_hi) {
    const double mid = 0.5 * (a_lo + a_hi);
    if (classify_shot(model, d, c, mid, r_max) == Shot::Overshoot)
      a_hi = mid;
    else
      a_lo = mid;
  }
  const double a_star = 0.5 * (a_lo + a_hi);

  // sampling pass: fixed-step RK4 node to node, switching to the analytic
  // tail once the trust threshold is crossed (the bisected trajectory is
  // only reliable while |Q| stays well above the bracket width)
  GroundStateResult res{grid, std::vector<double>(n, 0.0), c, 0.0, a_star,
                        0.0, {}};
  const StaticOde ode{model, d, c};
  const auto& nodes = grid.nodes();
  // launch exactly on the first node: there the truncated series is already
  // accurate to roundoff, and the integrator never sees the region where the
  // 1/r coefficient is large compared to the node spacing
  double y[2];
  series_start(model, d, c, a_star, nodes[0], y);
  res.Q[0] = y[0];
  const double trust = cfg.trust * a_star;
  double r_t = 0.0, q_t = 0.0;
  std::size_t j_tail = n;
  if (std::abs(y[0]) < trust) {
    r_t = nodes[0];
    q_t = y[0];
    j_tail = 0;
  }
  for (std::size_t j = 1; j < n && j_tail == n; ++j) {
    const int sub = j < 5 ? 8 : 2;  // extra care while r is commensurate to h
    const double hh = (nodes[j] - nodes[j - 1]) / sub;
    for (int k = 0; k < sub; ++k) rk4_step(ode, nodes[j - 1] + k * hh, y, hh);
    res.Q[j] = y[0];
    if (std::abs(y[0]) < trust) {
      r_t = nodes[j];
      q_t = y[0];
      j_tail = j;
    }
  }
  if (j_tail < n - 1) {
    // Far field by backward integration of the full equation, seeded from
    // the linearized decay at the outer edge (where the nonlinearity is
    // negligible to machine precision). Backward integration of a decaying
    // solution is stable, so this reproduces the nonlinear corrections the
    // pure linear tail misses; the forward trajectory cannot be trusted out
    // here because the bisection residue rides the growing mode.
    const double anchor = tail_factor(d, c, r_t);
    std::size_t j_seed = n - 1;
    while (j_seed > j_tail + 1 &&
           !(q_t * tail_factor(d, c, nodes[j_seed]) / anchor > 1e-290))
      --j_seed;
    for (std::size_t j = j_seed + 1; j < n; ++j)
      res.Q[j] = q_t * tail_factor(d, c, nodes[j]) / anchor;
    const double rs = nodes[j_seed], dr = 1e-4;
    const double t0 = tail_factor(d, c, rs) / anchor * q_t;
    const double tp = (tail_factor(d, c, rs + dr) -
                       tail_factor(d, c, rs - dr)) /
                      (2.0 * dr) / anchor * q_t;
    double yb[2] = {t0, tp};
    std::vector<double> back(j_seed - j_tail);
    back[j_seed - j_tail - 1] = t0;
    for (std::size_t j = j_seed; j-- > j_tail + 1;) {
      double rr = nodes[j + 1];
      const int sub = 2;
      const double hh = (nodes[j] - rr) / sub;
      for (int k = 0; k < sub; ++k) rk4_step(ode, rr + k * hh, yb, hh);
      back[j - j_tail - 1] = yb[0];
    }
    // land on the anchor node and rescale so the branches agree there; the
    // factor differs from 1 only by the nonlinear remainder at trust level
    {
      double rr = nodes[j_tail + 1];
      const double hh = (nodes[j_tail] - rr) / 2;
      for (int k = 0; k < 2; ++k) rk4_step(ode, rr + k * hh, yb, hh);
    }
    if (!(yb[0] != 0.0) || !std::isfinite(yb[0]))
      throw NumericalBreakdown("backward tail pass degenerated");
    const double scale = q_t / yb[0];
    for (std::size_t j = j_tail + 1; j <= j_seed; ++j)
      res.Q[j] = back[j - j_tail - 1] * scale;
  } else {
    r_t = nodes[n - 1];
    q_t = res.Q[n - 1];
  }

  // residual of the static equation via fourth-order differences; even
  // reflection across r = 0, analytic tail beyond r_max
  {
    const double h = grid.spacing();
    const double anchor = tail_factor(d, c, r_t);
    auto val = [&](long j) -> double {
      if (j < 0) return res.Q[-j - 1];
      if (j >= long(n))
        return q_t * tail_factor(d, c, (j + 0.5) * h) / anchor;
      return res.Q[j];
    };
    double worst = 0.0;
    // Near the axis the 1/r Q' term amplifies stencil roundoff, so the first
    // few nodes interpolate Q as an even polynomial in s = r^2 instead:
    // Laplacian of P(r^2) is 2d P'(s) + 4s P''(s), with no 1/r division.
    {
      double sN[6], cN[6];
      for (int k = 0; k < 6; ++k) {
        sN[k] = nodes[k] * nodes[k];
        cN[k] = res.Q[k];
      }
      for (int lvl = 1; lvl < 6; ++lvl)
        for (int i = 5; i >= lvl; --i)
          cN[i] = (cN[i] - cN[i - 1]) / (sN[i] - sN[i - lvl]);
      for (int j = 0; j < 3; ++j) {
        const double x = sN[j];
        double P = cN[5], P1 = 0.0, P2 = 0.0;
        for (int k = 4; k >= 0; --k) {
          P2 = 2.0 * P1 + (x - sN[k]) * P2;
          P1 = P + (x - sN[k]) * P1;
          P = cN[k] + (x - sN[k]) * P;
        }
        const double lap = 2.0 * d * P1 + 4.0 * x * P2;
        worst = std::max(
            worst, std::abs(-lap + c * res.Q[j] - model.eval(res.Q[j]).fp));
      }
    }
    for (long j = 3; j < long(n); ++j) {
      const double qm2 = val(j - 2), qm1 = val(j - 1), q0 = val(j),
                   qp1 = val(j + 1), qp2 = val(j + 2);
      const double d1 = (qm2 - 8.0 * qm1 + 8.0 * qp1 - qp2) / (12.0 * h);
      const double d2 =
          (-qm2 + 16.0 * qm1 - 30.0 * q0 + 16.0 * qp1 - qp2) / (12.0 * h * h);
      double lap = d2;
      if (d > 1) lap += (d - 1) / nodes[j] * d1;
      const double resj = std::abs(-lap + c * q0 - model.eval(q0).fp);
      worst = std::max(worst, resj);
    }
    res.residual = worst;
  }

  // K over sampled admissible pairs from four shared quadratures
  {
    const double G = gradient_sq(grid, res.Q);
    const double M = l2_sq(grid, res.Q);
    std::vector<double> df(n), f(n);
    for (std::size_t j = 0; j < n; ++j) {
      const auto v = model.eval(res.Q[j]);
      df[j] = v.Df;
      f[j] = v.f;
    }
    const double Aint = grid.integrate(df);
    const double B = grid.integrate(f);
    res.m = 0.5 * (G + c * M) - B;
    for (const auto& sp : admissible_pair_sweep(d, 20)) {
      GroundStateResult::KEntry e;
      e.sp = sp;
      e.KQ = 0.5 * sp.grad_weight(d) * G + 0.5 * sp.mass_weight(d) * c * M;
      e.K = e.KQ - sp.alpha * Aint - d * sp.beta * B;
      res.K_table.push_back(e);
    }
  }
  return res;
}

double aubin_talenti(int d, double r) {
  if (d < 3) throw ParamOutOfRange("aubin_talenti: needs d >= 3");
  return std::pow(1.0 + r * r / (d * (d - 2.0)), -0.5 * (d - 2));
}

CriticalThreshold critical_threshold(int d, double r_max, std::size_t n) {
  if (d < 3) throw ParamOutOfRange("critical_threshold: needs d >= 3");
  if (r_max <= 0.0 || n == 0) {
    // truncation tails of the two quadratures cancel at second order in the
    // relative gap (A - B)/B, but the gap itself decays only algebraically,
    // so low dimensions need very wide grids
    switch (d) {
      case 3:
        r_max = 6000.0;
        n = std::size_t(1) << 23;
        break;
      case 4:
        r_max = 400.0;
        n = std::size_t(1) << 21;
        break;
      case 5:
        r_max = 150.0;
        n = std::size_t(1) << 20;
        break;
      default:
        r_max = 100.0;
        n = std::size_t(1) << 20;
        break;
    }
  }
  RadialGrid g(d, r_max, n);
  const double q = 2.0 + 4.0 / (d - 2);
  const double dd2 = d * (d - 2.0);
  std::vector<double> grad2(g.size()), pq(g.size());
  const auto& r = g.nodes();
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double base = 1.0 + r[j] * r[j] / dd2;
    // closed-form derivative of the profile
    const double dq = -(r[j] / d) * std::pow(base, -0.5 * d);
    grad2[j] = dq * dq;
    pq[j] = std::pow(base, -0.5 * (d - 2) * q);
  }
  CriticalThreshold out;
  out.A = g.integrate(grad2);
  out.B = g.integrate(pq);
  out.m = 0.5 * out.A - out.B / q;
  out.m_sobolev =
      std::pow(out.A, 0.5 * d) / (d * std::pow(out.B, 0.5 * (d - 2)));
  out.r_max = r_max;
  out.n = n;
  return out;
}

// ---- Trudinger-Moser ratio ----

namespace {

struct TMCandidate {
  double ratio = -std::numeric_limits<double>::infinity();
  double width = 0.0;
  std::vector<double> field;
};

// unit-amplitude profiles
std::vector<double> tm_profile(const RadialGrid& g, int family, double w) {
  switch (family) {
    case 0:
      return g.sample([&](double r) { return std::exp(-r * r / (2 * w * w)); });
    case 1:
      return g.sample([&](double r) { return 1.0 / std::cosh(r / w); });
    default: {
      const double r_out = 0.5 * g.r_max();
      const double den = std::log(r_out / w);
      return g.sample([&](double r) {
        if (r <= w) return 1.0;
        if (r >= r_out) return 0.0;
        return std::log(r_out / r) / den;
      });
    }
  }
}

double tm_eval(const RadialGrid& g, const NonlinearityModel& model, double A,
               int family, double w, std::vector<double>* field_out) {
  auto psi = tm_profile(g, family, w);
  const double gn = std::sqrt(gradient_sq(g, psi));
  if (!(gn > 0.0)) return -std::numeric_limits<double>::infinity();
  const double a = A / gn;
  if (a > 0.95 * model.amplitude_cap())
    throw AmplitudeOverflow("TM ascent pushed the amplitude to the cap");
  for (double& x : psi) x *= a;
  const double F = F_integral(g, model, psi);
  const double M = l2_sq(g, psi);
  if (field_out) *field_out = std::move(psi);
  return 2.0 * F / M;
}

TMCandidate tm_scan(const RadialGrid& g, const NonlinearityModel& model,
                    double A, int family, int count) {
  const double lo = family == 2 ? 0.02 : 0.05;
  const double hi = family == 2 ? 0.25 * g.r_max() : 10.0;
  TMCandidate best;
  for (int i = 0; i < count; ++i) {
    const double w = lo * std::pow(hi / lo, double(i) / (count - 1));
    const double val = tm_eval(g, model, A, family, w, nullptr);
    if (val > best.ratio) {
      best.ratio = val;
      best.width = w;
    }
  }
  // golden-section polish around the best width
  double a = best.width / 1.6, b = best.width * 1.6;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = tm_eval(g, model, A, family, x1, nullptr);
  double f2 = tm_eval(g, model, A, family, x2, nullptr);
  for (int it = 0; it < 24; ++it) {
    if (f1 > f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = tm_eval(g, model, A, family, x1, nullptr);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = tm_eval(g, model, A, family, x2, nullptr);
    }
  }
  const double w = f1 > f2 ? x1 : x2;
  TMCandidate out;
  out.width = w;
  out.ratio = tm_eval(g, model, A, family, w, &out.field);
  if (out.ratio < best.ratio) {  // polish should not lose to the scan
    out.width = best.width;
    out.ratio = tm_eval(g, model, A, family, best.width, &out.field);
  }
  return out;
}

}  // namespace

TMEstimate tm_ratio(const NonlinearityModel& model, double A, int family_size) {
  if (model.kind() != NonlinearityKind::Exponential2D)
    throw ParamOutOfRange("tm_ratio: model must be the 2d exponential family");
  if (!(A > 0.0)) throw ParamOutOfRange("tm_ratio: A must be positive");
  if (family_size < 4) throw ParamOutOfRange("tm_ratio: family_size < 4");
  const double k0 = model.exp_kappa0();
  const double threshold =
      k0 > 0.0 ? std::sqrt(4.0 * M_PI / k0)
               : std::numeric_limits<double>::infinity();
  if (A > threshold * (1.0 - 1e-6))
    throw ParamOutOfRange("tm_ratio: A exceeds the stable maximization cap");

  RadialGrid g(2, 60.0, std::size_t(1) << 15);
  static const char* names[3] = {"gaussian", "sech", "moser"};
  TMEstimate est;
  est.A = A;
  est.threshold = threshold;
  double best = -std::numeric_limits<double>::infinity();
  double best_half = -std::numeric_limits<double>::infinity();
  for (int fam = 0; fam < 3; ++fam) {
    const auto full = tm_scan(g, model, A, fam, family_size);
    const auto half = tm_scan(g, model, A, fam, std::max(4, family_size / 2));
    if (full.ratio > best) {
      best = full.ratio;
      est.family = names[fam];
      est.witness = full.field;
    }
    best_half = std::max(best_half, half.ratio);
  }
  est.ratio = best;
  est.stability_margin = std::abs(best - best_half) / std::max(best, 1e-300);
  est.witness_r_max = g.r_max();
  est.witness_n = g.size();
  return est;
}

ThresholdResult compute_m(const NonlinearityModel& model, int d,
                          const ShootConfig& cfg) {
  verify_growth_conditions(model, d, default_growth_samples(model));
  ThresholdResult out;
  switch (model.kind()) {
    case NonlinearityKind::PowerSum: {
      out.c = 1.0;
      out.ground_state = shoot(model, d, 1.0, cfg);
      out.m = out.ground_state->m;
      break;
    }
    case NonlinearityKind::CriticalPower: {
      out.c = 0.0;
      out.critical = critical_threshold(d);
      out.m = out.critical->m;
      break;
    }
    case NonlinearityKind::Exponential2D: {
      const double k0 = model.exp_kappa0();
      if (model.exp_gamma() >= 0.0) {
        // the ratio sup is infinite here, no estimation needed
        out.tm_estimate = std::numeric_limits<double>::infinity();
        out.c = 1.0;
      } else {
        const double A = std::sqrt(4.0 * M_PI / k0) * (1.0 - 1e-6);
        const auto est = tm_ratio(model, A, 16);
        if (est.stability_margin > 0.2)
          throw TMEstimateUnstable("TM ratio estimate not converged");
        out.tm_estimate = est.ratio;
        out.c = std::min(1.0, est.ratio);
        out.tm_ambiguous = std::abs(est.ratio - 1.0) <= 0.1;
      }
      out.ground_state = shoot(model, 2, out.c, cfg);
      out.m = out.ground_state->m;
      if (k0 > 0.0 && out.m > 2.0 * M_PI / k0 + 1e-6) {
        std::ostringstream os;
        os << "exponential threshold " << out.m
           << " exceeds its upper bound " << 2.0 * M_PI / k0;
        throw NumericalBreakdown(os.str());
      }
      break;
    }
  }
  return out;
}

// ---- projected descent on H ----

namespace {

std::vector<double> radial_laplacian(const RadialGrid& g,
                                     const std::vector<double>& u) {
  const std::size_t n = g.size();
  const double h = g.spacing();
  const int d = g.dim();
  const auto& r = g.nodes();
  std::vector<double> out(n);
  auto val = [&](long j) -> double {
    if (j < 0) return u[-j - 1];  // even reflection
    if (j >= long(n)) return 0.0;
    return u[j];
  };
  for (long j = 0; j < long(n); ++j) {
    const double d2 = (val(j - 1) - 2.0 * val(j) + val(j + 1)) / (h * h);
    const double d1 = (val(j + 1) - val(j - 1)) / (2.0 * h);
    out[j] = d2 + (d > 1 ? (d - 1) / r[j] * d1 : 0.0);
  }
  return out;
}

// solve (-lap + c) out = rhs on the grid: divergence-form stencil with cell
// edges at integer multiples of h (the r = 0 edge decouples naturally), zero
// beyond r_max. Weakly diagonally dominant tridiagonal system.
std::vector<double> helmholtz_solve(const RadialGrid& g, double c,
                                    const std::vector<double>& rhs) {
  const std::size_t n = g.size();
  const double h = g.spacing();
  const int d = g.dim();
  std::vector<double> lo(n), di(n), up(n), x(rhs);
  for (std::size_t j = 0; j < n; ++j) {
    const double rc = std::pow(g.nodes()[j], d - 1);
    const double el = std::pow(j * h, d - 1) / (h * h * rc);
    const double er = std::pow((j + 1) * h, d - 1) / (h * h * rc);
    lo[j] = -el;
    up[j] = -er;
    di[j] = el + er + c;
  }
  for (std::size_t j = 1; j < n; ++j) {
    const double w = lo[j] / di[j - 1];
    di[j] -= w * up[j - 1];
    x[j] -= w * x[j - 1];
  }
  x[n - 1] /= di[n - 1];
  for (std::size_t j = n - 1; j-- > 0;) x[j] = (x[j] - up[j] * x[j + 1]) / di[j];
  return x;
}

}  // namespace

MinimizerResult gradient_flow_minimizer(const NonlinearityModel& model,
                                        const RadialGrid& g,
                                        const ScalingPair& sp,
                                        std::vector<double> init, double c) {
  require_admissible(sp, g.dim());
  const int d = g.dim();
  const double mu = sp.mu_max(d);
  const double gw = sp.grad_weight(d), mw = sp.mass_weight(d);

  std::vector<double> phi;
  try {
    phi = nehari_project(g, model, init, sp, c).projected;
  } catch (const NoRoot& e) {
    throw MinimizerStalled(std::string("initial projection failed: ") +
                           e.what());
  }
  double H = H_functional(g, model, phi, sp, c);

  double tau = 1.0;
  int iters = 0;
  bool done = false;
  for (; iters < 3000 && !done; ++iters) {
    // gradient of H = J - K/mu at phi. Two corrections make the raw descent
    // usable: precondition by (-lap + c)^{-1} so the step size is not tied
    // to the grid spacing, and remove the component normal to {K = 0} (in
    // the preconditioned metric), since H is not stationary along the
    // projection ray and the re-projection would undo a normal step.
    const auto lap = radial_laplacian(g, phi);
    std::vector<double> grad(g.size()), kdir(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
      const auto v = model.eval(phi[j]);
      const double Jp = -lap[j] + c * phi[j] - v.fp;
      const double Kp = -gw * lap[j] + mw * c * phi[j] -
                        (sp.alpha * (v.fp + phi[j] * v.fpp) +
                         d * sp.beta * v.fp);
      grad[j] = Jp - Kp / mu;
      kdir[j] = Kp;
    }
    auto sg = helmholtz_solve(g, c, grad);
    const auto sk = helmholtz_solve(g, c, kdir);
    const double ksk = g.integrate_product(kdir, sk);
    if (ksk != 0.0) {
      const double sigma = g.integrate_product(kdir, sg) / ksk;
      for (std::size_t j = 0; j < g.size(); ++j) sg[j] -= sigma * sk[j];
    }
    bool moved = false;
    while (tau > 1e-12) {
      std::vector<double> trial(g.size());
      for (std::size_t j = 0; j < g.size(); ++j)
        trial[j] = phi[j] - tau * sg[j];
      std::vector<double> proj;
      try {
        proj = nehari_project(g, model, trial, sp, c).projected;
      } catch (const NoRoot&) {
        tau *= 0.5;
        continue;
      }
      const double Ht = H_functional(g, model, proj, sp, c);
      if (Ht < H) {
        const double gain = H - Ht;
        phi = std::move(proj);
        H = Ht;
        tau = std::min(tau * 1.3, 4.0);
        moved = true;
        done = gain <= 1e-10;
        break;
      }
      tau *= 0.5;
    }
    if (!moved) break;  // no descent direction at resolution: converged
  }
  MinimizerResult out;
  out.phi = std::move(phi);
  out.H = H;
  out.iterations = iters >= 3000 ? 3000 : iters;
  return out;
}

}  // namespace nlkg
