#include "nlkg/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <utility>

#include "nlkg/errors.hpp"
#include "nlkg/fft.hpp"
#include "nlkg/functionals.hpp"

namespace nlkg {

namespace {

using cd = std::complex<double>;

std::vector<double> bracket_symbol(const BoxGrid& g, double c) {
  const auto& k2 = g.k_squared();
  std::vector<double> s(k2.size());
  for (std::size_t i = 0; i < k2.size(); ++i) s[i] = std::sqrt(c + k2[i]);
  return s;
}

// flat index of -k for each flat index k (row-major, each axis i -> (n-i) mod n)
std::vector<std::size_t> reflection_table(const BoxGrid& g) {
  const std::size_t n = g.points_per_side();
  const int d = g.dim();
  std::vector<std::size_t> t(g.total());
  for (std::size_t i = 0; i < g.total(); ++i) {
    std::size_t rest = i, out = 0, stride = 1;
    for (int a = d - 1; a >= 0; --a) {
      const std::size_t ia = rest % n;
      rest /= n;
      out += ((n - ia) % n) * stride;
      stride *= n;
    }
    t[i] = out;
  }
  return t;
}

double max_abs(const std::vector<double>& u) {
  double m = 0.0;
  for (double x : u) m = std::max(m, std::abs(x));
  return m;
}

bool all_finite(const RunSample& s) {
  return std::isfinite(s.E) && std::isfinite(s.y) && std::isfinite(s.ydot) &&
         std::isfinite(s.yddot) && std::isfinite(s.uinf);
}

// Shared sampling / checkpoint / detector loop for both evolvers.  The engine
// exposes just enough: advance one step (throwing AmplitudeOverflow past the
// cap), produce monitors, and hand back the free-flow pullback of v for
// scattering increments.
struct EngineOps {
  std::function<void()> advance;
  std::function<RunSample()> sample;
  std::function<std::vector<cd>()> backward_w;
  std::function<double(const std::vector<cd>&, const std::vector<cd>&)> l2_diff;
  double v0_norm = 0.0;
};

RunRecord drive(EngineOps& ops, const EvolveConfig& cfg, long spp,
                double cap) {
  RunRecord rec;
  rec.amplitude_cap = cap;

  const long nsamples = std::max<long>(1, std::lround(std::ceil(cfg.T / cfg.sample_dt - 1e-9)));
  const long stride = std::max<long>(1, nsamples / std::max(1, cfg.checkpoints));

  rec.samples.push_back(ops.sample());
  rec.history.v0_norm = ops.v0_norm;

  std::vector<cd> prev_w;
  bool have_prev = false;

  for (long s = 1; s <= nsamples; ++s) {
    bool capped = false;
    try {
      for (long k = 0; k < spp; ++k) ops.advance();
    } catch (const AmplitudeOverflow&) {
      capped = true;
    }
    RunSample smp = ops.sample();
    if (capped) {
      rec.cap_exceeded = true;
      rec.t_cap = smp.t;
      rec.outcome = Outcome::BlewUp;
      if (all_finite(smp)) rec.samples.push_back(smp);
      break;
    }
    if (!all_finite(smp))
      throw NumericalBreakdown("non-finite field during evolution at t=" +
                               std::to_string(smp.t));
    rec.samples.push_back(smp);

    if (s % stride == 0 || s == nsamples) {
      auto w = ops.backward_w();
      rec.history.times.push_back(smp.t);
      if (have_prev)
        rec.history.increments.push_back(ops.l2_diff(w, prev_w) /
                                         ops.v0_norm);
      prev_w = std::move(w);
      have_prev = true;

      const auto& inc = rec.history.increments;
      if (inc.size() >= 3) {
        const std::size_t n = inc.size();
        const double worst =
            std::max({inc[n - 1], inc[n - 2], inc[n - 3]});
        if (worst <= cfg.scatter_tol) {
          rec.dispersal.fired = true;
          rec.dispersal.increments = inc;
          rec.dispersal.v_plus = prev_w;
          rec.dispersal.t_limit = smp.t;
          rec.outcome = Outcome::Dispersed;
          break;
        }
      }
    }
  }

  rec.history.last_w = std::move(prev_w);
  if (rec.cap_exceeded) {
    rec.blowup = detect_blowup(rec);
  }
  return rec;
}

}  // namespace

EvolState make_state(const BoxGrid& g, const StatePair& s, double c) {
  g.check_size(s.u0.size());
  g.check_size(s.u1.size());
  if (!(c > 0)) throw ParamOutOfRange("make_state: mass c must be positive");
  EvolState st{g, 0.0, c, {}, {}, {}};
  auto spec = g.to_spectral(s.u0);
  const auto sym = bracket_symbol(g, c);
  for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= sym[i];
  const auto bu = g.to_physical_real(std::move(spec));
  st.v.resize(g.total());
  for (std::size_t i = 0; i < st.v.size(); ++i)
    st.v[i] = cd(bu[i], -s.u1[i]);
  st.u = s.u0;
  st.udot = s.u1;
  return st;
}

void refresh_fields(EvolState& st) {
  const auto& g = st.grid;
  const auto sym = bracket_symbol(g, st.c);
  const auto refl = reflection_table(g);
  std::vector<cd> spec = st.v;
  fft_nd_inplace(spec, g.dims(), false);
  std::vector<cd> uspec(spec.size());
  for (std::size_t i = 0; i < spec.size(); ++i)
    uspec[i] = (spec[i] + std::conj(spec[refl[i]])) / (2.0 * sym[i]);
  fft_nd_inplace(uspec, g.dims(), true);
  st.u.resize(st.v.size());
  st.udot.resize(st.v.size());
  for (std::size_t i = 0; i < st.v.size(); ++i) {
    st.u[i] = uspec[i].real();
    st.udot[i] = -st.v[i].imag();
  }
}

std::vector<std::complex<double>> free_propagate(
    const BoxGrid& g, std::vector<std::complex<double>> v, double t,
    double c) {
  g.check_size(v.size());
  const auto sym = bracket_symbol(g, c);
  fft_nd_inplace(v, g.dims(), false);
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] *= std::polar(1.0, t * sym[i]);
  fft_nd_inplace(v, g.dims(), true);
  return v;
}

void step(EvolState& st, double dt, const NonlinearityModel& model) {
  const auto& g = st.grid;
  const std::size_t n = st.v.size();
  const auto sym = bracket_symbol(g, st.c);
  const auto refl = reflection_table(g);

  // half kick: only Im v moves, so u stays consistent through it
  const double h2 = 0.5 * dt;
  for (std::size_t i = 0; i < n; ++i) {
    st.v[i] -= cd(0.0, h2 * model.eval(st.u[i]).fp);
  }

  // exact free flow, then rebuild u from the even part of v-hat
  std::vector<cd> spec = st.v;
  fft_nd_inplace(spec, g.dims(), false);
  for (std::size_t i = 0; i < n; ++i)
    spec[i] *= std::polar(1.0, dt * sym[i]);
  std::vector<cd> uspec(n);
  for (std::size_t i = 0; i < n; ++i)
    uspec[i] = (spec[i] + std::conj(spec[refl[i]])) / (2.0 * sym[i]);
  fft_nd_inplace(spec, g.dims(), true);
  fft_nd_inplace(uspec, g.dims(), true);
  st.v = std::move(spec);
  for (std::size_t i = 0; i < n; ++i) st.u[i] = uspec[i].real();

  for (std::size_t i = 0; i < n; ++i) {
    st.v[i] -= cd(0.0, h2 * model.eval(st.u[i]).fp);
    st.udot[i] = -st.v[i].imag();
  }
  st.t += dt;
}

double default_dt(const NonlinearityModel& model, double uinf) {
  double x = 0.0;
  const double a = std::abs(uinf);
  if (model.kind() == NonlinearityKind::Exponential2D) {
    const double u = std::min(a, 0.99 * model.amplitude_cap());
    x = std::max(std::abs(model.eval(u).fpp), std::abs(model.eval(-u).fpp));
  } else {
    x = std::pow(a, model.max_power() - 2.0);
  }
  return std::min(0.1, 0.5 / (1.0 + x));
}

RunRecord evolve(const BoxGrid& g, const NonlinearityModel& model,
                 const StatePair& s0, const EvolveConfig& cfg) {
  if (!(cfg.T > 0)) throw ParamOutOfRange("evolve: T must be positive");
  if (!(cfg.sample_dt > 0))
    throw ParamOutOfRange("evolve: sample_dt must be positive");

  EvolState st = make_state(g, s0, cfg.c);
  const double cap = std::min(cfg.amplitude_cap, model.amplitude_cap());
  const double uinf0 = max_abs(st.u);
  if (uinf0 >= cap)
    throw ParamOutOfRange("evolve: initial data already beyond amplitude cap");
  double dt = cfg.dt > 0 ? cfg.dt : default_dt(model, uinf0);
  const long spp = std::max<long>(1, std::lround(std::ceil(cfg.sample_dt / dt - 1e-12)));
  dt = cfg.sample_dt / static_cast<double>(spp);

  const double cvol = g.cell_volume();
  const int d = g.dim();

  EngineOps ops;
  ops.advance = [&]() {
    step(st, dt, model);
    if (max_abs(st.u) > cap)
      throw AmplitudeOverflow("evolve: amplitude cap exceeded");
  };
  ops.sample = [&]() {
    RunSample smp;
    smp.t = st.t;
    double y = 0, yd = 0, ud2 = 0, vn2 = 0, F = 0, ufp = 0, um = 0;
    for (std::size_t i = 0; i < st.u.size(); ++i) {
      const double u = st.u[i], w = st.udot[i];
      y += u * u;
      yd += u * w;
      ud2 += w * w;
      vn2 += std::norm(st.v[i]);
      um = std::max(um, std::abs(u));
      const auto e = model.eval(u);
      F += e.f;
      ufp += u * e.fp;
    }
    y *= cvol; yd *= cvol; ud2 *= cvol; vn2 *= cvol; F *= cvol; ufp *= cvol;
    const double G = g.gradient_sq_integral(st.u);
    smp.y = y;
    smp.ydot = 2.0 * yd;
    smp.uinf = um;
    smp.EQ = 0.5 * vn2;
    smp.E = 0.5 * (ud2 + G + cfg.c * y) - F;
    smp.K10 = G + cfg.c * y - ufp;
    smp.Kdm2 = 2.0 * G - d * ufp + 2.0 * d * F;
    smp.yddot = 2.0 * ud2 - 2.0 * smp.K10;
    return smp;
  };
  ops.backward_w = [&]() { return free_propagate(g, st.v, -st.t, cfg.c); };
  ops.l2_diff = [&](const std::vector<cd>& a, const std::vector<cd>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
    return std::sqrt(cvol * s);
  };
  {
    double s = 0;
    for (const auto& z : st.v) s += std::norm(z);
    ops.v0_norm = std::sqrt(cvol * s);
  }

  RunRecord rec = drive(ops, cfg, spp, cap);
  rec.final_state = StatePair{st.u, st.udot};
  rec.t_final = st.t;

  // geometric reliability flags
  double rsupp = cfg.support_radius;
  if (rsupp <= 0) {
    const auto cd_ = g.center_distance();
    double peak = 0;
    for (std::size_t i = 0; i < s0.u0.size(); ++i)
      peak = std::max(peak, std::abs(s0.u0[i]) + std::abs(s0.u1[i]));
    for (std::size_t i = 0; i < s0.u0.size(); ++i)
      if (std::abs(s0.u0[i]) + std::abs(s0.u1[i]) > 1e-12 * peak)
        rsupp = std::max(rsupp, cd_[i]);
  }
  rec.wraparound_risk = 0.5 * g.length() < rsupp + cfg.T;
  if (cfg.m_reference > 0) {
    const double E0 = rec.samples.front().E;
    rec.threshold_adjacent =
        std::abs(E0 - cfg.m_reference) <= 1e-3 * cfg.m_reference;
  }
  return rec;
}

RunRecord evolve_radial3(const NonlinearityModel& model,
                         const std::function<double(double)>& u0,
                         const std::function<double(double)>& u1, double R,
                         std::size_t interior, const EvolveConfig& cfg) {
  if (model.dim() != 3)
    throw ParamOutOfRange("evolve_radial3: model must be three dimensional");
  if (!(cfg.T > 0)) throw ParamOutOfRange("evolve_radial3: T must be positive");
  if (!(cfg.sample_dt > 0))
    throw ParamOutOfRange("evolve_radial3: sample_dt must be positive");
  const std::size_t m = interior;
  if (m + 1 == 0 || ((m + 1) & m) != 0)
    throw ParamOutOfRange("evolve_radial3: interior+1 must be a power of two");

  const double h = R / static_cast<double>(m + 1);
  const double c = cfg.c;
  const double four_pi = 4.0 * M_PI;

  std::vector<double> r(m), ksym(m);
  for (std::size_t j = 0; j < m; ++j) {
    r[j] = h * static_cast<double>(j + 1);
    const double kp = M_PI * static_cast<double>(j + 1) / R;
    ksym[j] = std::sqrt(c + kp * kp);
  }

  // w = r u on the half-line with Dirichlet ends; v = <grad>_c w - i w_t
  std::vector<double> w(m), wdot(m);
  for (std::size_t j = 0; j < m; ++j) {
    w[j] = r[j] * u0(r[j]);
    wdot[j] = r[j] * u1(r[j]);
  }
  std::vector<cd> v(m);
  {
    auto spec = dst1(w);
    for (std::size_t k = 0; k < m; ++k) spec[k] *= ksym[k];
    auto bw = dst1_inverse(spec);
    for (std::size_t j = 0; j < m; ++j) v[j] = cd(bw[j], -wdot[j]);
  }

  const double cap = std::min(cfg.amplitude_cap, model.amplitude_cap());
  double uinf0 = 0;
  for (std::size_t j = 0; j < m; ++j)
    uinf0 = std::max(uinf0, std::abs(w[j] / r[j]));
  if (uinf0 >= cap)
    throw ParamOutOfRange(
        "evolve_radial3: initial data already beyond amplitude cap");
  double dt = cfg.dt > 0 ? cfg.dt : default_dt(model, uinf0);
  const long spp = std::max<long>(1, std::lround(std::ceil(cfg.sample_dt / dt - 1e-12)));
  dt = cfg.sample_dt / static_cast<double>(spp);

  double t = 0.0;

  auto kick = [&](double hdt) {
    for (std::size_t j = 0; j < m; ++j) {
      const double u = w[j] / r[j];
      v[j] -= cd(0.0, hdt * r[j] * model.eval(u).fp);
    }
  };
  auto freeflow = [&](double tau) {
    std::vector<double> re(m), im(m);
    for (std::size_t j = 0; j < m; ++j) {
      re[j] = v[j].real();
      im[j] = v[j].imag();
    }
    auto a = dst1(re);
    auto b = dst1(im);
    std::vector<double> wspec(m);
    for (std::size_t k = 0; k < m; ++k) {
      const double cs = std::cos(tau * ksym[k]), sn = std::sin(tau * ksym[k]);
      const double ar = a[k] * cs - b[k] * sn;
      const double br = a[k] * sn + b[k] * cs;
      a[k] = ar;
      b[k] = br;
      wspec[k] = ar / ksym[k];
    }
    auto rev = dst1_inverse(a);
    auto imv = dst1_inverse(b);
    auto wn = dst1_inverse(wspec);
    for (std::size_t j = 0; j < m; ++j) {
      v[j] = cd(rev[j], imv[j]);
      w[j] = wn[j];
    }
  };

  EngineOps ops;
  ops.advance = [&]() {
    kick(0.5 * dt);
    freeflow(dt);
    kick(0.5 * dt);
    for (std::size_t j = 0; j < m; ++j) wdot[j] = -v[j].imag();
    t += dt;
    double um = 0;
    for (std::size_t j = 0; j < m; ++j)
      um = std::max(um, std::abs(w[j] / r[j]));
    if (um > cap)
      throw AmplitudeOverflow("evolve_radial3: amplitude cap exceeded");
  };
  ops.sample = [&]() {
    RunSample smp;
    smp.t = t;
    double y = 0, yd = 0, ud2 = 0, vn2 = 0, F = 0, ufp = 0, um = 0;
    for (std::size_t j = 0; j < m; ++j) {
      const double u = w[j] / r[j];
      um = std::max(um, std::abs(u));
      y += w[j] * w[j];
      yd += w[j] * (-v[j].imag());
      ud2 += v[j].imag() * v[j].imag();
      vn2 += std::norm(v[j]);
      const auto e = model.eval(u);
      F += e.f * r[j] * r[j];
      ufp += u * e.fp * r[j] * r[j];
    }
    const double mu = four_pi * h;
    y *= mu; yd *= mu; ud2 *= mu; vn2 *= mu; F *= mu; ufp *= mu;
    // grad term: |nabla u|^2 integrates to 4 pi int w'^2 dr, evaluated spectrally
    auto spec = dst1(w);
    double G = 0;
    for (std::size_t k = 0; k < m; ++k) {
      const double kp = M_PI * static_cast<double>(k + 1) / R;
      G += kp * kp * spec[k] * spec[k];
    }
    G *= four_pi * 2.0 * h / static_cast<double>(m + 1);
    smp.y = y;
    smp.ydot = 2.0 * yd;
    smp.uinf = um;
    smp.EQ = 0.5 * vn2;
    smp.E = 0.5 * (ud2 + G + c * y) - F;
    smp.K10 = G + c * y - ufp;
    smp.Kdm2 = 2.0 * G - 3.0 * ufp + 6.0 * F;
    smp.yddot = 2.0 * ud2 - 2.0 * smp.K10;
    return smp;
  };
  ops.backward_w = [&]() {
    std::vector<double> re(m), im(m);
    for (std::size_t j = 0; j < m; ++j) {
      re[j] = v[j].real();
      im[j] = v[j].imag();
    }
    auto a = dst1(re);
    auto b = dst1(im);
    for (std::size_t k = 0; k < m; ++k) {
      const double cs = std::cos(t * ksym[k]), sn = std::sin(t * ksym[k]);
      const double ar = a[k] * cs + b[k] * sn;
      const double br = -a[k] * sn + b[k] * cs;
      a[k] = ar;
      b[k] = br;
    }
    auto rev = dst1_inverse(a);
    auto imv = dst1_inverse(b);
    std::vector<cd> out(m);
    for (std::size_t j = 0; j < m; ++j) out[j] = cd(rev[j], imv[j]);
    return out;
  };
  ops.l2_diff = [&](const std::vector<cd>& a, const std::vector<cd>& b) {
    double s = 0;
    for (std::size_t j = 0; j < m; ++j) s += std::norm(a[j] - b[j]);
    return std::sqrt(four_pi * h * s);
  };
  {
    double s = 0;
    for (const auto& z : v) s += std::norm(z);
    ops.v0_norm = std::sqrt(four_pi * h * s);
  }

  RunRecord rec = drive(ops, cfg, spp, cap);
  rec.final_state.u0.resize(m);
  rec.final_state.u1.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    rec.final_state.u0[j] = w[j] / r[j];
    rec.final_state.u1[j] = wdot[j] / r[j];
  }
  rec.t_final = t;

  double rsupp = cfg.support_radius;
  if (rsupp <= 0) {
    double peak = 0;
    for (std::size_t j = 0; j < m; ++j)
      peak = std::max(peak, std::abs(w[j]));
    // support read off the initial profile, not the evolved one
    for (std::size_t j = 0; j < m; ++j) {
      const double a0 = std::abs(r[j] * u0(r[j])) + std::abs(r[j] * u1(r[j]));
      if (a0 > 1e-12 * std::max(peak, 1.0)) rsupp = std::max(rsupp, r[j]);
    }
  }
  rec.wraparound_risk = R < rsupp + cfg.T;
  if (cfg.m_reference > 0) {
    const double E0 = rec.samples.front().E;
    rec.threshold_adjacent =
        std::abs(E0 - cfg.m_reference) <= 1e-3 * cfg.m_reference;
  }
  return rec;
}

BlowupCertificate detect_blowup(const RunRecord& rec) {
  BlowupCertificate cert;
  cert.cap = rec.amplitude_cap;
  cert.t_cap = rec.t_cap;
  if (!rec.cap_exceeded || rec.samples.size() < 100) return cert;
  const std::size_t n = rec.samples.size();
  const std::size_t start = n - n / 4;
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t i = start; i < n; ++i)
    lo = std::min(lo, rec.samples[i].yddot);
  if (lo > 0) {
    cert.fired = true;
    cert.delta = 0.5 * lo;
    cert.window_start = rec.samples[start].t;
    cert.window_end = rec.samples[n - 1].t;
  }
  return cert;
}

DispersalCertificate detect_dispersal(const CheckpointHistory& hist,
                                      double scatter_tol) {
  DispersalCertificate cert;
  cert.increments = hist.increments;
  const auto& inc = hist.increments;
  if (inc.size() < 3) return cert;
  const std::size_t n = inc.size();
  const double worst = std::max({inc[n - 1], inc[n - 2], inc[n - 3]});
  if (worst <= scatter_tol) {
    cert.fired = true;
    cert.v_plus = hist.last_w;
    cert.t_limit = hist.times.empty() ? 0.0 : hist.times.back();
  }
  return cert;
}

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Dispersed: return "Dispersed";
    case Outcome::BlewUp: return "BlewUp";
    case Outcome::Undecided: return "Undecided";
  }
  return "Undecided";
}

}  // namespace nlkg
