#include "nlkg/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nlkg/errors.hpp"

namespace nlkg {

double cutoff_chi(double s) {
  if (s <= 1.0) return 1.0;
  if (s >= 2.0) return 0.0;
  const double t = s - 1.0;
  return 1.0 - t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

namespace {

double sgn(double u) { return (u > 0.0) - (u < 0.0); }

// keep pow(|u|, q) comfortably inside double range
double power_cap(double q_max) { return std::exp(690.0 / q_max); }

}  // namespace

NonlinearityModel NonlinearityModel::power_sum(int d,
                                               std::vector<PowerTerm> terms) {
  if (d < 1) throw ParamOutOfRange("power_sum: dimension must be >= 1");
  if (terms.empty()) throw ParamOutOfRange("power_sum: no terms");
  const double q_low = 2.0 + 4.0 / d;
  const double q_high =
      d >= 3 ? 2.0 + 4.0 / (d - 2) : std::numeric_limits<double>::infinity();
  double q_max = 0.0;
  for (const auto& t : terms) {
    if (!(t.lambda > 0.0) || !std::isfinite(t.lambda))
      throw ParamOutOfRange("power_sum: coefficients must be positive");
    if (!(t.q > q_low) || !(t.q <= q_high)) {
      std::ostringstream os;
      os << "power_sum: power " << t.q << " outside (" << q_low << ", "
         << q_high << "] for d=" << d;
      throw ParamOutOfRange(os.str());
    }
    q_max = std::max(q_max, t.q);
  }
  NonlinearityModel m;
  m.kind_ = NonlinearityKind::PowerSum;
  m.d_ = d;
  m.terms_ = std::move(terms);
  m.cap_ = power_cap(q_max);
  return m;
}

NonlinearityModel NonlinearityModel::single_power(int d, double q,
                                                  double lambda) {
  return power_sum(d, {PowerTerm{lambda, q}});
}

NonlinearityModel NonlinearityModel::critical_power(int d) {
  if (d < 3) throw ParamOutOfRange("critical_power: needs d >= 3");
  const double q = 2.0 + 4.0 / (d - 2);
  NonlinearityModel m;
  m.kind_ = NonlinearityKind::CriticalPower;
  m.d_ = d;
  m.terms_ = {PowerTerm{1.0 / q, q}};
  m.cap_ = power_cap(q);
  return m;
}

NonlinearityModel NonlinearityModel::exponential_2d(double lambda, double p,
                                                    double kappa0,
                                                    double gamma) {
  if (!(lambda > 0.0)) throw ParamOutOfRange("exponential_2d: lambda <= 0");
  if (!(p > 4.0)) throw ParamOutOfRange("exponential_2d: needs p > 4");
  if (!(kappa0 >= 0.0) || !std::isfinite(kappa0) || !std::isfinite(gamma))
    throw ParamOutOfRange("exponential_2d: bad kappa0/gamma");
  // Convexity of the growth conditions needs
  //   8 kappa0 u^2 + 3 gamma u + 2(p - 4) > 0 for all u >= 0.
  if (gamma < 0.0) {
    if (kappa0 == 0.0)
      throw ParamOutOfRange(
          "exponential_2d: gamma < 0 with kappa0 = 0 leaves the growth "
          "conditions unbounded below");
    const double min_val = 2.0 * (p - 4.0) - 9.0 * gamma * gamma / (32.0 * kappa0);
    if (!(min_val > 0.0))
      throw ParamOutOfRange(
          "exponential_2d: 8 k0 u^2 + 3 g u + 2(p-4) dips below zero");
  }
  NonlinearityModel m;
  m.kind_ = NonlinearityKind::Exponential2D;
  m.d_ = 2;
  m.lambda_ = lambda;
  m.p_ = p;
  m.kappa0_ = kappa0;
  m.gamma_ = gamma;
  if (kappa0 > 0.0)
    m.cap_ = std::sqrt(700.0 / kappa0);
  else if (gamma > 0.0)
    m.cap_ = 700.0 / gamma;
  else
    m.cap_ = power_cap(p);
  return m;
}

NonlinearityModel::FVals NonlinearityModel::eval(double u) const {
  if (!std::isfinite(u)) throw NonFiniteIntegrand("eval: non-finite amplitude");
  const double s = std::abs(u);
  if (s == 0.0) return {0.0, 0.0, 0.0, 0.0};
  if (s > cap_) {
    std::ostringstream os;
    os << "amplitude " << s << " exceeds evaluation cap " << cap_;
    throw AmplitudeOverflow(os.str());
  }
  if (kind_ == NonlinearityKind::Exponential2D) {
    const double expo = p_ * std::log(s) + kappa0_ * s * s + gamma_ * s;
    if (expo > 700.0) {
      std::ostringstream os;
      os << "amplitude " << s << " overflows the exponential factor";
      throw AmplitudeOverflow(os.str());
    }
    const double f = lambda_ * std::exp(expo);
    const double w = p_ + 2.0 * kappa0_ * s * s + gamma_ * s;  // = D f / f
    const double wp = 4.0 * kappa0_ * s + gamma_;
    FVals v;
    v.f = f;
    v.fp = sgn(u) * f * w / s;
    v.fpp = (f / (s * s)) * (w * w + s * wp - w);
    v.Df = f * w;
    return v;
  }
  FVals v{0.0, 0.0, 0.0, 0.0};
  for (const auto& t : terms_) {
    const double aq = std::pow(s, t.q);
    v.f += t.lambda * aq;
    v.fp += t.lambda * t.q * std::pow(s, t.q - 1.0) * sgn(u);
    v.fpp += t.lambda * t.q * (t.q - 1.0) * std::pow(s, t.q - 2.0);
    v.Df += t.lambda * t.q * aq;
  }
  return v;
}

double NonlinearityModel::f(double u) const { return eval(u).f; }
double NonlinearityModel::fprime(double u) const { return eval(u).fp; }

double NonlinearityModel::f_small(double u) const {
  return cutoff_chi(std::abs(u) / cutoff_) * f(u);
}

double NonlinearityModel::f_large(double u) const {
  const double chi = cutoff_chi(std::abs(u) / cutoff_);
  return (1.0 - chi) * f(u);
}

void NonlinearityModel::set_cutoff_radius(double r) {
  if (!(r > 0.0)) throw ParamOutOfRange("cutoff radius must be positive");
  cutoff_ = r;
}

double NonlinearityModel::max_power() const {
  // Polynomial factor only; the exponential family grows faster than any
  // power, so callers sizing time steps should look at f'' directly.
  if (kind_ == NonlinearityKind::Exponential2D) return p_;
  double q = 0.0;
  for (const auto& t : terms_) q = std::max(q, t.q);
  return q;
}

std::string NonlinearityModel::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case NonlinearityKind::CriticalPower:
      os << "critical";
      break;
    case NonlinearityKind::Exponential2D:
      os << "exp:" << p_ << "," << kappa0_ << "," << gamma_;
      break;
    case NonlinearityKind::PowerSum:
      if (terms_.size() == 1 && terms_[0].lambda == 1.0) {
        os << "power:" << terms_[0].q;
      } else {
        os << "powersum:";
        for (size_t i = 0; i < terms_.size(); ++i) {
          if (i) os << ";";
          os << terms_[i].q << "," << terms_[i].lambda;
        }
      }
      break;
  }
  return os.str();
}

GrowthReport verify_growth_conditions(const NonlinearityModel& model, int d,
                                      const std::vector<double>& u_samples) {
  if (d < 1) throw ParamOutOfRange("verify_growth_conditions: d < 1");
  const double q_low = 2.0 + 4.0 / d;
  GrowthReport rep;
  rep.eps_max = std::numeric_limits<double>::infinity();
  rep.pass = true;
  for (double u : u_samples) {
    const double s = std::abs(u);
    if (s == 0.0) continue;
    const auto v = model.eval(s);
    if (!(v.f > 0.0)) continue;
    GrowthSample g;
    g.u = s;
    // Condition (D - q_low - eps) f >= 0 is affine in eps:
    //   eps <= Df/f - q_low.
    g.bound1 = v.Df / v.f - q_low;
    // Condition (D - 2)(D - q_low - eps) f >= 0 expands (D(Df) = uf' + u^2 f'')
    // to B - eps * C >= 0 with
    //   B = u^2 f'' - (1 + q_low) u f' + 2 q_low f,  C = u f' - 2 f.
    const double B =
        s * s * v.fpp - (1.0 + q_low) * s * v.fp + 2.0 * q_low * v.f;
    const double C = s * v.fp - 2.0 * v.f;
    if (C > 0.0)
      g.bound2 = B / C;
    else
      g.bound2 = B >= 0.0 ? std::numeric_limits<double>::infinity()
                          : -std::numeric_limits<double>::infinity();
    g.ok = g.bound1 >= 0.0 && g.bound2 >= 0.0;
    rep.eps_max = std::min(rep.eps_max, std::min(g.bound1, g.bound2));
    rep.pass = rep.pass && g.ok;
    rep.samples.push_back(g);
  }
  if (rep.samples.empty())
    throw ParamOutOfRange("verify_growth_conditions: no usable samples");
  if (!rep.pass || !(rep.eps_max > 0.0)) {
    double worst_u = 0.0, worst = std::numeric_limits<double>::infinity();
    for (const auto& g : rep.samples) {
      const double b = std::min(g.bound1, g.bound2);
      if (b < worst) {
        worst = b;
        worst_u = g.u;
      }
    }
    std::ostringstream os;
    os << "growth conditions fail at eps=0 near u=" << worst_u
       << " (margin " << worst << ")";
    throw ModelOutsideClass(os.str());
  }
  return rep;
}

std::vector<double> default_growth_samples(const NonlinearityModel& model,
                                           double hi, int count) {
  if (count < 2) throw ParamOutOfRange("default_growth_samples: count < 2");
  const double lo = 1e-4;
  double top = std::min(hi, 0.99 * model.amplitude_cap());
  if (!(top > lo)) top = 10.0 * lo;
  std::vector<double> out;
  out.reserve(count);
  const double ratio = std::log(top / lo);
  for (int i = 0; i < count; ++i)
    out.push_back(lo * std::exp(ratio * i / (count - 1)));
  return out;
}

}  // namespace nlkg
