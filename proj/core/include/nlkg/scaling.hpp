#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "nlkg/errors.hpp"

namespace nlkg {

// One member of the two-parameter scaling family
//   phi^lambda(x) = e^{alpha lambda} phi(e^{-beta lambda} x).
// The derivative of the action along this family is linear in (alpha, beta);
// the admissible cone below is where the sign of that derivative separates
// the two dynamical regimes.
struct ScalingPair {
  double alpha = 1.0;
  double beta = 0.0;

  // scaling weights of the two quadratic terms
  double mass_weight(int d) const { return 2.0 * alpha + d * beta; }
  double grad_weight(int d) const { return 2.0 * alpha + (d - 2) * beta; }

  double mu_max(int d) const { return std::max(mass_weight(d), grad_weight(d)); }
  double mu_min(int d) const { return std::min(mass_weight(d), grad_weight(d)); }

  bool admissible(int d) const {
    if (alpha == 0.0 && beta == 0.0) return false;
    return alpha >= 0.0 && mass_weight(d) >= 0.0 && grad_weight(d) >= 0.0;
  }

  // alpha = mu_min = 0 happens only at d = 2 with the pure spatial scaling;
  // several uniform bounds degenerate there and need separate handling.
  bool exceptional(int d) const {
    return admissible(d) && alpha == 0.0 && mu_min(d) == 0.0;
  }

  std::string str() const {
    std::ostringstream os;
    os << "(" << alpha << ", " << beta << ")";
    return os.str();
  }
};

inline void require_admissible(const ScalingPair& p, int d) {
  if (!p.admissible(d)) {
    std::ostringstream os;
    os << "scaling pair " << p.str() << " not admissible in d=" << d;
    throw InadmissiblePair(os.str());
  }
}

// The admissible cone is bounded by two rays (normalized to small integer
// coordinates): where the gradient weight vanishes and where the mass weight
// or the alpha >= 0 constraint activates.
inline std::vector<ScalingPair> boundary_rays(int d) {
  if (d == 1) return {{1.0, 2.0}, {1.0, -2.0}};
  if (d == 2) return {{0.0, 1.0}, {1.0, -1.0}};
  return {{0.0, 1.0}, {double(d), -2.0}};
}

// count >= 2 admissible pairs sweeping the cone interior, always including
// both boundary rays.
inline std::vector<ScalingPair> admissible_pair_sweep(int d, int count) {
  if (count < 2) throw ParamOutOfRange("admissible_pair_sweep: count < 2");
  const auto rays = boundary_rays(d);
  std::vector<ScalingPair> out;
  out.push_back(rays[0]);
  for (int i = 1; i + 1 < count; ++i) {
    const double t = double(i) / (count - 1);
    ScalingPair p{(1.0 - t) * rays[0].alpha + t * rays[1].alpha,
                  (1.0 - t) * rays[0].beta + t * rays[1].beta};
    out.push_back(p);
  }
  out.push_back(rays[1]);
  for (const auto& p : out) require_admissible(p, d);
  return out;
}

}  // namespace nlkg
