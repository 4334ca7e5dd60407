#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "nlkg/box.hpp"
#include "nlkg/errors.hpp"
#include "nlkg/functionals.hpp"
#include "nlkg/ground_state.hpp"
#include "nlkg/nonlinearity.hpp"
#include "nlkg/radial.hpp"
#include "nlkg/scaling.hpp"

using namespace nlkg;

namespace {

// deterministic smooth radial bumps with O(1) amplitudes
std::vector<std::vector<double>> random_fields(const RadialGrid& g, int count,
                                               unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> A(0.2, 1.4), W(0.6, 2.5),
      R0(0.0, 3.0), ETA(0.0, 2.0);
  std::vector<std::vector<double>> out;
  for (int i = 0; i < count; ++i) {
    const double a = A(rng), w = W(rng), r0 = R0(rng), eta = ETA(rng);
    out.push_back(g.sample([=](double r) {
      const double s = (r - r0) / w;
      return a * std::exp(-s * s) * std::cos(eta * r);
    }));
  }
  return out;
}

// J along the scaling ray from pre-computed base integrals; exact in the
// grid sense, so centered differences of it probe only the K closed form
double j_along_ray(const RadialGrid& g, const NonlinearityModel& model,
                   const std::vector<double>& u, const ScalingPair& sp,
                   double lambda, double c) {
  const int d = g.dim();
  const double A = gradient_sq(g, u), M = l2_sq(g, u);
  const double ea = std::exp(sp.alpha * lambda);
  std::vector<double> scaled(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) scaled[i] = ea * u[i];
  const double F = F_integral(g, model, scaled);
  return 0.5 * std::exp(sp.grad_weight(d) * lambda) * A +
         0.5 * c * std::exp(sp.mass_weight(d) * lambda) * M -
         std::exp(d * sp.beta * lambda) * F;
}

}  // namespace

TEST_CASE("quadratic functionals on a gaussian") {
  for (int d : {1, 2, 3}) {
    RadialGrid g(d, 14.0, 16384);
    const auto u = g.sample([](double r) { return std::exp(-r * r); });
    const double half = std::pow(M_PI / 2.0, 0.5 * d);
    // quadrature is superalgebraic for odd d (even integrand), second order
    // for d = 2; the gradient goes through the finite-difference derivative
    // and is second order everywhere
    CHECK(l2_sq(g, u) ==
          doctest::Approx(half).epsilon(d == 2 ? 1e-6 : 1e-10));
    CHECK(gradient_sq(g, u) == doctest::Approx(d * half).epsilon(1e-6));
    CHECK(h1_sq(g, u) ==
          doctest::Approx(l2_sq(g, u) + gradient_sq(g, u)).epsilon(1e-13));
  }
}

TEST_CASE("static energy assembles its three parts") {
  RadialGrid g(1, 14.0, 8192);
  const auto model = NonlinearityModel::single_power(1, 8.0, 0.7);
  const auto u = g.sample([](double r) { return 0.9 * std::exp(-r * r); });
  const double J = static_energy(g, model, u, 1.3);
  const double want = 0.5 * gradient_sq(g, u) + 0.5 * 1.3 * l2_sq(g, u) -
                      F_integral(g, model, u);
  CHECK(J == doctest::Approx(want).epsilon(1e-14));

  // F for a pure power on a gaussian: lambda a^q (pi/q)^{d/2} at width 1
  const double a = 0.9, q = 8.0;
  CHECK(F_integral(g, model, u) ==
        doctest::Approx(0.7 * std::pow(a, q) * std::sqrt(M_PI / q))
            .epsilon(1e-10));
}

TEST_CASE("energy splits into quadratic and nonlinear parts") {
  RadialGrid g(3, 14.0, 8192);
  const auto model = NonlinearityModel::single_power(3, 4.0, 0.25);
  StatePair s{g.sample([](double r) { return 0.8 * std::exp(-r * r); }),
              g.sample([](double r) { return 0.3 * std::exp(-2.0 * r * r); })};
  const double c = 0.8;
  CHECK(energy(g, model, s, c) ==
        doctest::Approx(quadratic_energy(g, s, c) - F_integral(g, model, s.u0))
            .epsilon(1e-13));
  CHECK(quadratic_energy(g, s, c) ==
        doctest::Approx(0.5 * (l2_sq(g, s.u1) + gradient_sq(g, s.u0) +
                               c * l2_sq(g, s.u0)))
            .epsilon(1e-13));
}

TEST_CASE("K closed form for a pure power") {
  RadialGrid g(3, 14.0, 8192);
  const double lam = 0.25, q = 4.0, c = 1.1;
  const auto model = NonlinearityModel::single_power(3, q, lam);
  const auto u = g.sample([](double r) { return 1.1 * std::exp(-r * r); });
  const double A = gradient_sq(g, u), M = l2_sq(g, u),
               F = F_integral(g, model, u);
  for (const ScalingPair sp :
       {ScalingPair{1.0, 0.0}, ScalingPair{0.0, 1.0}, ScalingPair{3.0, -2.0},
        ScalingPair{2.0, 0.5}}) {
    const auto parts = K_parts(g, model, u, sp, c);
    const double kq =
        0.5 * sp.grad_weight(3) * A + 0.5 * sp.mass_weight(3) * c * M;
    const double kn = -(sp.alpha * q + 3.0 * sp.beta) * F;
    CHECK(parts.KQ == doctest::Approx(kq).epsilon(1e-13));
    CHECK(parts.KN == doctest::Approx(kn).epsilon(1e-12));
    CHECK(K_functional(g, model, u, sp, c) ==
          doctest::Approx(parts.K()).epsilon(1e-13));
    CHECK(Dab_F(g, model, u, sp) ==
          doctest::Approx((sp.alpha * q + 3.0 * sp.beta) * F).epsilon(1e-12));
  }
}

TEST_CASE("K_{1,0} is the H1 norm minus the Euler term") {
  RadialGrid g(1, 14.0, 8192);
  const auto model = NonlinearityModel::single_power(1, 8.0);
  const auto u = g.sample([](double r) { return 0.7 * std::exp(-r * r / 2.0); });
  std::vector<double> ufp(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) ufp[i] = u[i] * model.fprime(u[i]);
  const double want = h1_sq(g, u) - g.integrate(ufp);
  CHECK(K_functional(g, model, u, {1.0, 0.0}) ==
        doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("K matches centered differences of J along the ray") {
  RadialGrid g(3, 16.0, 8192);
  const auto model = NonlinearityModel::single_power(3, 4.0, 0.25);
  const auto fields = random_fields(g, 10, 41);
  const auto pairs = admissible_pair_sweep(3, 6);
  const double h = 1e-3, c = 1.0;
  for (const auto& u : fields) {
    for (const auto& sp : pairs) {
      const double K = K_functional(g, model, u, sp, c);
      const double jp = j_along_ray(g, model, u, sp, h, c);
      const double jm = j_along_ray(g, model, u, sp, -h, c);
      const double jp2 = j_along_ray(g, model, u, sp, 2.0 * h, c);
      const double jm2 = j_along_ray(g, model, u, sp, -2.0 * h, c);
      const double fd = (8.0 * (jp - jm) - (jp2 - jm2)) / (12.0 * h);
      CHECK(std::abs(K - fd) <= 1e-5 * std::max({std::abs(K), std::abs(fd), 1e-3}));
    }
  }
}

TEST_CASE("H closed forms") {
  // H_{1,0} = int(u f'(u)/2 - f(u));  H_{0,1} = |grad u|^2 / d;
  // H_{d,-2} = c|u|^2/2 + (d/4) int u f'(u) - (1 + d/2) F
  for (int d : {1, 3}) {
    RadialGrid g(d, 14.0, 8192);
    const auto model = d == 1 ? NonlinearityModel::single_power(1, 8.0)
                              : NonlinearityModel::single_power(3, 4.0, 0.25);
    const double c = 1.2;
    for (const auto& u : random_fields(g, 20, 7 + d)) {
      std::vector<double> ufp(u.size()), integrand(u.size());
      for (std::size_t i = 0; i < u.size(); ++i) {
        ufp[i] = u[i] * model.fprime(u[i]);
        integrand[i] = 0.5 * ufp[i] - model.f(u[i]);
      }
      const double scale = 1.0 + std::abs(static_energy(g, model, u, c));
      CHECK(H_functional(g, model, u, {1.0, 0.0}, c) ==
            doctest::Approx(g.integrate(integrand)).epsilon(1e-10).scale(scale));
      // (0,1) is admissible only for d >= 2, but H is defined for any pair
      CHECK(H_functional(g, model, u, {0.0, 1.0}, c) ==
            doctest::Approx(gradient_sq(g, u) / d).epsilon(1e-10).scale(scale));
      const double hd2 = 0.5 * c * l2_sq(g, u) + 0.25 * d * g.integrate(ufp) -
                         (1.0 + 0.5 * d) * F_integral(g, model, u);
      CHECK(H_functional(g, model, u, {double(d), -2.0}, c) ==
            doctest::Approx(hd2).epsilon(1e-10).scale(scale));
    }
  }
}

TEST_CASE("radial interpolation") {
  RadialGrid g(3, 10.0, 2048);
  const auto u = g.sample([](double r) { return std::exp(-r * r); });
  for (double r : {0.37, 1.0, 2.2, 5.5}) {
    CHECK(radial_interp(g, u, r) ==
          doctest::Approx(std::exp(-r * r)).epsilon(1e-8));
  }
  CHECK(radial_interp(g, u, g.nodes()[100]) ==
        doctest::Approx(u[100]).epsilon(1e-12));
  // even reflection keeps the profile flat through r = 0
  CHECK(radial_interp(g, u, 1e-4) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(radial_interp(g, u, 11.0) == 0.0);
}

TEST_CASE("rescale scales the mass with the exact weight") {
  RadialGrid g(1, 40.0, 16384);
  const auto u = g.sample([](double r) { return std::exp(-r * r); });
  const ScalingPair sp{1.0, 0.5};
  const double lam = 0.3;
  const auto res = rescale(g, u, sp, lam);
  CHECK(!res.truncation_loss);
  CHECK(l2_sq(g, res.values) ==
        doctest::Approx(std::exp(sp.mass_weight(1) * lam) * l2_sq(g, u))
            .epsilon(1e-6));
  // identity at lambda = 0
  const auto same = rescale(g, u, sp, 0.0);
  for (std::size_t i = 0; i < u.size(); ++i)
    CHECK(same.values[i] == doctest::Approx(u[i]).epsilon(1e-12));
}

TEST_CASE("rescale flags truncation when mass leaves the grid") {
  RadialGrid g(1, 6.0, 512);
  const auto u = g.sample([](double r) { return std::exp(-r * r / 9.0); });
  const auto res = rescale(g, u, {0.0, 1.0}, 2.0);  // dilate well past r_max
  CHECK(res.truncation_loss);
  CHECK(res.mass_outside_frac > 1e-8);
}

TEST_CASE("landscape along an admissible ray has mountain-pass shape") {
  RadialGrid g(1, 30.0, 8192);
  const auto model = NonlinearityModel::single_power(1, 8.0);
  const auto gs = shoot(model, 1);
  const auto Q =
      g.sample([&](double r) { return radial_interp(gs.grid, gs.Q, r); });
  std::vector<double> lambdas;
  for (int i = -10; i <= 6; ++i) lambdas.push_back(0.1 * i);
  const auto tab = landscape(g, model, Q, {1.0, 0.0}, lambdas, 1.0);
  REQUIRE(tab.rows.size() == lambdas.size());
  CHECK(tab.kq_nondecreasing);
  CHECK(tab.j_increasing_while_k_positive);
  // J peaks where K crosses zero; at the ground state that is lambda = 0
  double jmax = -1e300;
  double lam_at_max = -1.0;
  for (const auto& row : tab.rows)
    if (row.J > jmax) {
      jmax = row.J;
      lam_at_max = row.lambda;
    }
  CHECK(std::abs(lam_at_max) <= 0.11);
  CHECK(jmax == doctest::Approx(gs.m).epsilon(1e-3));
}

TEST_CASE("nehari projection zeroes K") {
  RadialGrid g(1, 30.0, 8192);
  const auto model = NonlinearityModel::single_power(1, 8.0);
  const auto u = g.sample([](double r) { return 0.8 * std::exp(-r * r); });
  for (const ScalingPair sp : {ScalingPair{1.0, 0.0}, ScalingPair{1.0, 2.0}}) {
    const auto res = nehari_project(g, model, u, sp, 1.0, 1e-10);
    const double K = K_functional(g, model, res.projected, sp, 1.0);
    const double KQ = K_parts(g, model, res.projected, sp, 1.0).KQ;
    CHECK(std::abs(K) <= 1e-8 * KQ);
    CHECK(!res.amplitude_ray);
  }
}

TEST_CASE("nehari amplitude ray for the d=2 exceptional pair") {
  RadialGrid g(2, 20.0, 8192);
  const auto model = NonlinearityModel::single_power(2, 5.0);
  const auto u = g.sample([](double r) { return 0.5 * std::exp(-r * r); });
  const ScalingPair sp{0.0, 1.0};
  REQUIRE(sp.exceptional(2));
  const auto res = nehari_project(g, model, u, sp, 1.0, 1e-10);
  CHECK(res.amplitude_ray);
  const double K = K_functional(g, model, res.projected, sp, 1.0);
  CHECK(std::abs(K) <= 1e-8 * K_parts(g, model, res.projected, sp, 1.0).KQ);
}

TEST_CASE("classification of scaled ground states") {
  const auto model = NonlinearityModel::single_power(1, 8.0);
  const auto gs = shoot(model, 1);
  RadialGrid g(1, 40.0, 16384);
  auto scaled = [&](double s) {
    return StatePair{
        g.sample([&](double r) { return s * radial_interp(gs.grid, gs.Q, r); }),
        std::vector<double>(g.size(), 0.0)};
  };
  const ScalingPair sp{1.0, 0.0};

  const auto low = classify(g, model, scaled(0.5), sp, gs.m);
  CHECK(low.label == Label::KPlus);
  CHECK(low.E < gs.m);
  CHECK(low.K > 0.0);
  CHECK(low.free_energy_ok);
  CHECK(low.J <= low.h1_half + 1e-12);
  CHECK(low.h1_half <= (1.0 + 0.5 * 1.0) * low.J + 1e-12);

  const auto high = classify(g, model, scaled(1.05), sp, gs.m);
  CHECK(high.label == Label::KMinus);
  CHECK(high.E < gs.m);
  CHECK(high.K < 0.0);

  // the ground state itself is the threshold tie, resolved upward; judged
  // on the shooting grid so E reproduces m to roundoff (the tie band is
  // 1e-9 m, far tighter than any resampling error)
  const auto tie = classify(gs.grid, model,
                            {gs.Q, std::vector<double>(gs.grid.size(), 0.0)},
                            sp, gs.m);
  CHECK(tie.label == Label::AboveThreshold);
  CHECK(tie.threshold_adjacent);

  // a 3x amplified ground state has large negative energy: still KMinus
  const auto big = classify(g, model, scaled(3.0), sp, gs.m);
  CHECK(big.label == Label::KMinus);
  CHECK(big.E < 0.0);

  // kinetic energy pushes a subthreshold profile above m
  auto moving = scaled(0.5);
  moving.u1 = g.sample([&](double r) {
    return 2.0 * radial_interp(gs.grid, gs.Q, r);
  });
  const auto above = classify(g, model, moving, sp, gs.m);
  CHECK(above.E > gs.m);
  CHECK(above.label == Label::AboveThreshold);
}

TEST_CASE("box functionals agree with radial ones on sampled profiles") {
  const auto model = NonlinearityModel::single_power(1, 8.0);
  RadialGrid gr(1, 20.0, 32768);
  BoxGrid gb(1, 40.0, 2048);
  auto prof = [](double r) { return 0.8 * std::exp(-r * r); };
  auto dprof = [](double r) { return 0.3 * std::exp(-r * r / 2.0); };
  const StatePair sr{gr.sample(prof), gr.sample(dprof)};
  const StatePair sb{gb.sample_radial(prof), gb.sample_radial(dprof)};
  const double c = 1.4;

  // no-gradient quantities agree to quadrature accuracy; anything through
  // the gradient is limited by the radial side's second-order derivative
  // (the box side differentiates spectrally)
  CHECK(box_F(gb, model, sb.u0) ==
        doctest::Approx(F_integral(gr, model, sr.u0)).epsilon(1e-8));
  CHECK(box_energy(gb, model, sb, c) ==
        doctest::Approx(energy(gr, model, sr, c)).epsilon(5e-6));
  CHECK(box_quadratic_energy(gb, sb, c) ==
        doctest::Approx(quadratic_energy(gr, sr, c)).epsilon(5e-6));
  for (const ScalingPair sp : {ScalingPair{1.0, 0.0}, ScalingPair{1.0, -2.0}}) {
    CHECK(box_K(gb, model, sb.u0, sp, c) ==
          doctest::Approx(K_functional(gr, model, sr.u0, sp, c))
              .epsilon(5e-6));
    const auto pb = box_K_parts(gb, model, sb.u0, sp, c);
    const auto pr = K_parts(gr, model, sr.u0, sp, c);
    CHECK(pb.KQ == doctest::Approx(pr.KQ).epsilon(5e-6));
  }

  const auto vb = box_classify(gb, model, sb, {1.0, 0.0}, 0.667747562312);
  const auto vr = classify(gr, model, sr, {1.0, 0.0}, 0.667747562312);
  CHECK(vb.label == vr.label);
  CHECK(vb.E == doctest::Approx(vr.E).epsilon(5e-6));
}

TEST_CASE("energy density integrates to the energy") {
  BoxGrid g(1, 30.0, 1024);
  const auto model = NonlinearityModel::single_power(1, 8.0);
  const StatePair s{g.sample_radial([](double r) { return std::exp(-r * r); }),
                    g.sample_radial([](double r) { return 0.2 * std::exp(-r * r); })};
  const auto dens = box_energy_density(g, model, s);
  CHECK(g.integrate(dens) ==
        doctest::Approx(box_energy(g, model, s, 1.0)).epsilon(1e-12));
}

TEST_CASE("diagnostics") {
  BoxGrid g(1, 30.0, 1024);
  const auto model = NonlinearityModel::single_power(1, 8.0);
  const double xc = 15.0;
  const StatePair even{
      g.sample_radial([](double r) { return std::exp(-r * r); }),
      std::vector<double>(g.total(), 0.0)};

  // zero velocity: no momentum
  const auto d0 = diagnostics(g, model, even, 5.0, {xc});
  REQUIRE(d0.P.size() == 1);
  CHECK(d0.P[0] == doctest::Approx(0.0).epsilon(1e-12));

  // cutoff cannot exceed the half box
  CHECK_THROWS_AS(diagnostics(g, model, even, 16.0, {xc}), CutoffExceedsBox);

  // exterior energy recovers the full integrand as R -> 0 and dies off
  // once the ball covers the support. The exclusion is the open ball, and
  // xc sits on the lattice, so the center point itself stays excluded.
  const auto small = diagnostics(g, model, even, 1e-6, {xc});
  const auto grad = g.partial(even.u0, 0);
  const auto dist = g.center_distance();
  double tot = 0.0;
  for (std::size_t i = 0; i < g.total(); ++i) {
    if (dist[i] < 1e-6) continue;
    const double u = even.u0[i];
    tot += grad[i] * grad[i] + u * u + std::abs(model.f(u)) +
           std::abs(u * model.fprime(u));
  }
  tot *= g.cell_volume();
  CHECK(small.E_R == doctest::Approx(tot).epsilon(1e-10));
  const auto wide = diagnostics(g, model, even, 12.0, {xc});
  CHECK(wide.E_R < 1e-8);
}
