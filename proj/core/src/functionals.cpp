#include "nlkg/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>

#include "nlkg/errors.hpp"

namespace nlkg {

namespace {

void check_state(std::size_t expect, const StatePair& s) {
  if (s.u0.size() != expect || s.u1.size() != expect)
    throw GridMismatch("state size does not match grid");
}

// f, u f'(u), or alpha*u f' + d*beta*f evaluated pointwise into a vector
std::vector<double> map_f(const NonlinearityModel& model,
                          const std::vector<double>& u) {
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = model.eval(u[i]).f;
  return out;
}

std::vector<double> map_Dab_density(const NonlinearityModel& model,
                                    const std::vector<double>& u, double alpha,
                                    double dbeta) {
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto v = model.eval(u[i]);
    out[i] = alpha * v.Df + dbeta * v.f;
  }
  return out;
}

}  // namespace

double l2_sq(const RadialGrid& g, const std::vector<double>& u) {
  return g.integrate_product(u, u);
}

double gradient_sq(const RadialGrid& g, const std::vector<double>& u) {
  const auto du = g.derivative(u);
  return g.integrate_product(du, du);
}

double h1_sq(const RadialGrid& g, const std::vector<double>& u) {
  return gradient_sq(g, u) + l2_sq(g, u);
}

double F_integral(const RadialGrid& g, const NonlinearityModel& model,
                  const std::vector<double>& u) {
  return g.integrate(map_f(model, u));
}

double static_energy(const RadialGrid& g, const NonlinearityModel& model,
                     const std::vector<double>& u, double c) {
  return 0.5 * (gradient_sq(g, u) + c * l2_sq(g, u)) -
         F_integral(g, model, u);
}

double energy(const RadialGrid& g, const NonlinearityModel& model,
              const StatePair& s, double c) {
  check_state(g.size(), s);
  return static_energy(g, model, s.u0, c) + 0.5 * l2_sq(g, s.u1);
}

double quadratic_energy(const RadialGrid& g, const StatePair& s, double c) {
  check_state(g.size(), s);
  return 0.5 * (l2_sq(g, s.u1) + gradient_sq(g, s.u0) + c * l2_sq(g, s.u0));
}

KParts K_parts(const RadialGrid& g, const NonlinearityModel& model,
               const std::vector<double>& u, const ScalingPair& sp,
               double c) {
  const int d = g.dim();
  KParts kp;
  kp.KQ = 0.5 * sp.grad_weight(d) * gradient_sq(g, u) +
          0.5 * sp.mass_weight(d) * c * l2_sq(g, u);
  kp.KN = -g.integrate(map_Dab_density(model, u, sp.alpha, d * sp.beta));
  return kp;
}

double K_functional(const RadialGrid& g, const NonlinearityModel& model,
                    const std::vector<double>& u, const ScalingPair& sp,
                    double c) {
  return K_parts(g, model, u, sp, c).K();
}

double H_functional(const RadialGrid& g, const NonlinearityModel& model,
                    const std::vector<double>& u, const ScalingPair& sp,
                    double c) {
  const double mu = sp.mu_max(g.dim());
  if (!(mu > 0.0))
    throw InadmissiblePair("H needs mu_max > 0, got pair " + sp.str());
  return static_energy(g, model, u, c) -
         K_functional(g, model, u, sp, c) / mu;
}

double Dab_F(const RadialGrid& g, const NonlinearityModel& model,
             const std::vector<double>& u, const ScalingPair& sp) {
  return g.integrate(map_Dab_density(model, u, sp.alpha, g.dim() * sp.beta));
}

// Cubic Lagrange interpolation on the midpoint grid. Radial fields are even,
// so indices left of the first node reflect (node -1-k mirrors node k);
// indices past the last node read zero (exponential tails are assumed dead
// by r_max).
namespace {

double interp_cubic(const std::vector<double>& u, double h, double r) {
  const double x = r / h - 0.5;  // fractional node index
  const long i1 = static_cast<long>(std::floor(x));
  const long n = static_cast<long>(u.size());
  double val = 0.0;
  for (long m = i1 - 1; m <= i1 + 2; ++m) {
    double vm;
    if (m < 0)
      vm = (-m - 1) < n ? u[static_cast<std::size_t>(-m - 1)] : 0.0;
    else if (m >= n)
      vm = 0.0;
    else
      vm = u[static_cast<std::size_t>(m)];
    if (vm == 0.0) continue;
    double w = 1.0;
    for (long k = i1 - 1; k <= i1 + 2; ++k)
      if (k != m) w *= (x - k) / static_cast<double>(m - k);
    val += w * vm;
  }
  return val;
}

}  // namespace

double radial_interp(const RadialGrid& g, const std::vector<double>& u,
                     double r) {
  return interp_cubic(u, g.spacing(), std::abs(r));
}

RescaleResult rescale(const RadialGrid& g, const std::vector<double>& u,
                      const ScalingPair& sp, double lambda) {
  g.integrate(u);  // size + finiteness check
  const double amp = std::exp(sp.alpha * lambda);
  const double arg = std::exp(-sp.beta * lambda);
  RescaleResult out;
  out.values.resize(g.size());
  const auto& r = g.nodes();
  for (std::size_t j = 0; j < g.size(); ++j)
    out.values[j] = amp * interp_cubic(u, g.spacing(), arg * r[j]);
  // Fraction of the source L^2 mass that maps past r_max (only the
  // spreading direction loses anything).
  if (arg < 1.0) {
    const double edge = arg * g.r_max();
    double outside = 0.0, total = 0.0;
    const auto& w = g.weights();
    for (std::size_t j = 0; j < g.size(); ++j) {
      const double m = w[j] * u[j] * u[j];
      total += m;
      if (r[j] > edge) outside += m;
    }
    if (total > 0.0) {
      out.mass_outside_frac = outside / total;
      out.truncation_loss = out.mass_outside_frac > 1e-8;
    }
  }
  return out;
}

LandscapeTable landscape(const RadialGrid& g, const NonlinearityModel& model,
                         const std::vector<double>& u, const ScalingPair& sp,
                         const std::vector<double>& lambdas, double c) {
  LandscapeTable t;
  t.rows.reserve(lambdas.size());
  double prev_kq = 0.0, prev_j = 0.0, prev_k = 0.0;
  bool have_prev = false;
  for (double lam : lambdas) {
    const auto rs = rescale(g, u, sp, lam);
    t.truncation_loss = t.truncation_loss || rs.truncation_loss;
    const auto kp = K_parts(g, model, rs.values, sp, c);
    LandscapeRow row;
    row.lambda = lam;
    row.F = F_integral(g, model, rs.values);
    row.J = static_energy(g, model, rs.values, c);
    row.K = kp.K();
    if (have_prev) {
      const double wiggle = 1e-12 * (1.0 + std::abs(prev_kq));
      if (kp.KQ < prev_kq - wiggle) t.kq_nondecreasing = false;
      if (prev_k > 0.0 && row.K > 0.0 &&
          row.J < prev_j - 1e-12 * (1.0 + std::abs(prev_j)))
        t.j_increasing_while_k_positive = false;
    }
    prev_kq = kp.KQ;
    prev_j = row.J;
    prev_k = row.K;
    have_prev = true;
    t.rows.push_back(row);
  }
  return t;
}

NehariResult nehari_project(const RadialGrid& g, const NonlinearityModel& model,
                            const std::vector<double>& u, const ScalingPair& sp,
                            double c, double tol) {
  const int d = g.dim();
  NehariResult res;
  res.amplitude_ray = (d == 2 && sp.alpha == 0.0);

  auto eval_at = [&](double t) {
    std::vector<double> v;
    if (res.amplitude_ray) {
      v = u;
      for (double& x : v) x *= t;
    } else {
      v = rescale(g, u, sp, t).values;
    }
    return v;
  };
  auto K_at = [&](double t) { return K_functional(g, model, eval_at(t), sp, c); };

  const double t0 = res.amplitude_ray ? 1.0 : 0.0;
  const double k0 = K_at(t0);
  // Search window: scaling parameter in [-30, 30], amplitude in [2^-40, 2^40]
  // (subject to the model's own amplitude cap).
  double lo = t0, hi = t0, klo = k0, khi = k0;
  try {
    if (k0 > 0.0) {
      // roots live on the growing side
      double step = res.amplitude_ray ? 1.0 : 0.5;
      for (int it = 0; it < 60 && khi > 0.0; ++it) {
        lo = hi;
        klo = khi;
        hi = res.amplitude_ray ? hi * 2.0 : hi + step;
        step *= 1.3;
        if ((!res.amplitude_ray && hi > 30.0) ||
            (res.amplitude_ray && hi > 1e12))
          throw NoRoot("K stays positive over the whole search ray");
        khi = K_at(hi);
      }
    } else if (k0 < 0.0) {
      double step = res.amplitude_ray ? 0.5 : 0.5;
      for (int it = 0; it < 200 && klo < 0.0; ++it) {
        hi = lo;
        khi = klo;
        lo = res.amplitude_ray ? lo * 0.5 : lo - step;
        step *= 1.3;
        if ((!res.amplitude_ray && lo < -30.0) ||
            (res.amplitude_ray && lo < 1e-12))
          throw NoRoot("no sign change of K toward the origin");
        klo = K_at(lo);
      }
    }
  } catch (const AmplitudeOverflow&) {
    throw NoRoot("amplitude cap reached before K changed sign");
  }

  // bisection until the relative-to-K^Q tolerance is met, secant polish after
  double a = lo, b = hi, ka = klo, kb = khi, t = t0;
  if (k0 == 0.0) {
    t = t0;
  } else {
    for (int it = 0; it < 200; ++it) {
      t = 0.5 * (a + b);
      const double kt = K_at(t);
      const auto kp = K_parts(g, model, eval_at(t), sp, c);
      if (std::abs(kt) <= tol * kp.KQ) break;
      if ((kt > 0.0) == (ka > 0.0)) {
        a = t;
        ka = kt;
      } else {
        b = t;
        kb = kt;
      }
      if (it > 40 && a != b) {
        // secant step inside the bracket when bisection has localized it
        const double ts = (a * kb - b * ka) / (kb - ka);
        if (ts > std::min(a, b) && ts < std::max(a, b)) t = ts;
      }
    }
  }
  res.parameter = t;
  res.projected = eval_at(t);
  const auto kp = K_parts(g, model, res.projected, sp, c);
  if (std::abs(kp.K()) > tol * std::max(kp.KQ, 1e-300) * 10.0) {
    std::ostringstream os;
    os << "projection stalled: |K|=" << std::abs(kp.K())
       << " vs K^Q=" << kp.KQ;
    throw NumericalBreakdown(os.str());
  }
  return res;
}

std::string label_name(Label l) {
  switch (l) {
    case Label::KPlus:
      return "KPlus";
    case Label::KMinus:
      return "KMinus";
    default:
      return "AboveThreshold";
  }
}

namespace {

// Shared verdict assembly for radial and box states. K10/h1c feed the
// free-energy sandwich J <= |u0|_{H1c}^2 / 2 <= (1 + d/2) J, which must hold
// whenever K_{1,0}(u0) >= 0.
Verdict make_verdict(int d, double E, double m, double K, double KQ, double J,
                     double h1c, double K10, double grad_kin) {
  Verdict v;
  v.E = E;
  v.m = m;
  v.K = K;
  v.KQ = KQ;
  v.J = J;
  v.h1_half = 0.5 * h1c;
  v.grad_plus_kinetic = grad_kin;
  v.threshold_adjacent = std::abs(E - m) <= 1e-9 * m;
  if (E >= m || v.threshold_adjacent) {
    v.label = Label::AboveThreshold;
    return v;
  }
  v.label = K >= 0.0 ? Label::KPlus : Label::KMinus;
  if (v.label == Label::KPlus) {
    // below the threshold the sign of K is pair-independent, so a KPlus
    // verdict must come with K_{1,0} >= 0 and the sandwich
    const double slack = 1e-9 * (1.0 + std::abs(J)) + std::max(0.0, -K10);
    v.free_energy_ok = K10 >= -1e-7 * (1.0 + h1c) &&
                       J <= v.h1_half + slack &&
                       v.h1_half <= (1.0 + 0.5 * d) * J + slack;
  }
  return v;
}

}  // namespace

Verdict classify(const RadialGrid& g, const NonlinearityModel& model,
                 const StatePair& s, const ScalingPair& sp, double m,
                 double c) {
  if (!(m > 0.0)) throw ParamOutOfRange("classify: threshold m must be > 0");
  check_state(g.size(), s);
  const int d = g.dim();
  const double E = energy(g, model, s, c);
  const auto kp = K_parts(g, model, s.u0, sp, c);
  const double grad2 = gradient_sq(g, s.u0);
  const double h1c = grad2 + c * l2_sq(g, s.u0);
  const double J = 0.5 * h1c - F_integral(g, model, s.u0);
  const double K10 = K_functional(g, model, s.u0, ScalingPair{1.0, 0.0}, c);
  return make_verdict(d, E, m, kp.K(), kp.KQ, J, h1c, K10,
                      grad2 + l2_sq(g, s.u1));
}

// ---- box side ----

double box_F(const BoxGrid& g, const NonlinearityModel& model,
             const std::vector<double>& u) {
  return g.integrate(map_f(model, u));
}

double box_energy(const BoxGrid& g, const NonlinearityModel& model,
                  const StatePair& s, double c) {
  check_state(g.total(), s);
  return 0.5 * (g.integrate_product(s.u1, s.u1) + g.gradient_sq_integral(s.u0) +
                c * g.integrate_product(s.u0, s.u0)) -
         box_F(g, model, s.u0);
}

double box_quadratic_energy(const BoxGrid& g, const StatePair& s, double c) {
  check_state(g.total(), s);
  return 0.5 * (g.integrate_product(s.u1, s.u1) + g.gradient_sq_integral(s.u0) +
                c * g.integrate_product(s.u0, s.u0));
}

KParts box_K_parts(const BoxGrid& g, const NonlinearityModel& model,
                   const std::vector<double>& u, const ScalingPair& sp,
                   double c) {
  const int d = g.dim();
  KParts kp;
  kp.KQ = 0.5 * sp.grad_weight(d) * g.gradient_sq_integral(u) +
          0.5 * sp.mass_weight(d) * c * g.integrate_product(u, u);
  kp.KN = -g.integrate(map_Dab_density(model, u, sp.alpha, d * sp.beta));
  return kp;
}

double box_K(const BoxGrid& g, const NonlinearityModel& model,
             const std::vector<double>& u, const ScalingPair& sp, double c) {
  return box_K_parts(g, model, u, sp, c).K();
}

Verdict box_classify(const BoxGrid& g, const NonlinearityModel& model,
                     const StatePair& s, const ScalingPair& sp, double m,
                     double c) {
  if (!(m > 0.0)) throw ParamOutOfRange("classify: threshold m must be > 0");
  check_state(g.total(), s);
  const int d = g.dim();
  const double grad2 = g.gradient_sq_integral(s.u0);
  const double l2u0 = g.integrate_product(s.u0, s.u0);
  const double l2u1 = g.integrate_product(s.u1, s.u1);
  const double F = box_F(g, model, s.u0);
  const double h1c = grad2 + c * l2u0;
  const double J = 0.5 * h1c - F;
  const double E = J + 0.5 * l2u1;
  const auto kp = box_K_parts(g, model, s.u0, sp, c);
  const double K10 = box_K(g, model, s.u0, ScalingPair{1.0, 0.0}, c);
  return make_verdict(d, E, m, kp.K(), kp.KQ, J, h1c, K10, grad2 + l2u1);
}

std::vector<double> box_energy_density(const BoxGrid& g,
                                       const NonlinearityModel& model,
                                       const StatePair& s) {
  check_state(g.total(), s);
  std::vector<double> e(g.total());
  for (std::size_t i = 0; i < e.size(); ++i) {
    e[i] = 0.5 * (s.u1[i] * s.u1[i] + s.u0[i] * s.u0[i]) -
           model.eval(s.u0[i]).f;
  }
  for (int ax = 0; ax < g.dim(); ++ax) {
    const auto du = g.partial(s.u0, ax);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] += 0.5 * du[i] * du[i];
  }
  return e;
}

Diagnostics diagnostics(const BoxGrid& g, const NonlinearityModel& model,
                        const StatePair& s, double R,
                        const std::vector<double>& c_center) {
  check_state(g.total(), s);
  if (!(R > 0.0)) throw ParamOutOfRange("diagnostics: R must be positive");
  if (R > 0.5 * g.length())
    throw CutoffExceedsBox("cutoff radius exceeds half the box side");
  if (c_center.size() != static_cast<std::size_t>(g.dim()))
    throw GridMismatch("center dimension mismatch");

  const int d = g.dim();
  const std::size_t n = g.total();
  const double half = 0.5 * g.length();
  const double h = g.spacing();

  std::vector<std::vector<double>> du(d);
  for (int ax = 0; ax < d; ++ax) du[ax] = g.partial(s.u0, ax);

  Diagnostics out;
  out.P.resize(d);
  out.X_R.assign(d, 0.0);
  for (int ax = 0; ax < d; ++ax) out.P[ax] = g.integrate_product(s.u1, du[ax]);

  const auto e = box_energy_density(g, model, s);

  // one pass for the localized quantities
  std::vector<std::vector<double>> xr_integrand(
      d, std::vector<double>(n, 0.0));
  std::vector<double> vr_integrand(n, 0.0), er_integrand(n, 0.0);
  std::vector<double> delta(d);
  for (std::size_t i = 0; i < n; ++i) {
    double dist_ctr2 = 0.0, dist_c2 = 0.0;
    for (int ax = 0; ax < d; ++ax) {
      const double x = static_cast<double>(g.axis_index(i, ax)) * h;
      delta[ax] = x - half;
      dist_ctr2 += delta[ax] * delta[ax];
      const double dc = x - c_center[ax];
      dist_c2 += dc * dc;
    }
    const double chi = cutoff_chi(std::sqrt(dist_ctr2) / R);
    if (chi != 0.0) {
      double xdotgrad = 0.0;
      for (int ax = 0; ax < d; ++ax) {
        xr_integrand[ax][i] = chi * delta[ax] * e[i];
        xdotgrad += delta[ax] * du[ax][i];
      }
      vr_integrand[i] = chi * s.u1[i] * (2.0 * xdotgrad + d * s.u0[i]);
    }
    if (dist_c2 >= R * R) {
      const auto fv = model.eval(s.u0[i]);
      double grad2 = 0.0;
      for (int ax = 0; ax < d; ++ax) grad2 += du[ax][i] * du[ax][i];
      er_integrand[i] = s.u1[i] * s.u1[i] + grad2 + s.u0[i] * s.u0[i] +
                        std::abs(fv.f) + std::abs(fv.Df);
    }
  }
  for (int ax = 0; ax < d; ++ax) out.X_R[ax] = g.integrate(xr_integrand[ax]);
  out.V_R = g.integrate(vr_integrand);
  out.E_R = g.integrate(er_integrand);
  return out;
}

}  // namespace nlkg
