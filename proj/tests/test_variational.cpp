#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "heis/solver.hpp"
#include "heis/variational.hpp"
#include "support/test_support.hpp"

using namespace heis;
namespace ht = heis::testing;

namespace {

// theta + df for a smooth gauge function f (value-only coefficients, so
// the library falls back to finite differences).  The step is kept
// above the round-off regime: el_residual differentiates these values
// once more in time.
OneForm gauge_shift(const OneForm& theta,
                    const std::function<double(const GroupElement&)>& f) {
  constexpr double h = 1e-5;
  OneForm out;
  out.f1 = [theta, f](const GroupElement& p) {
    return theta.f1(p) +
           (f({p.x + h, p.y, p.z}) - f({p.x - h, p.y, p.z})) / (2 * h);
  };
  out.f2 = [theta, f](const GroupElement& p) {
    return theta.f2(p) +
           (f({p.x, p.y + h, p.z}) - f({p.x, p.y - h, p.z})) / (2 * h);
  };
  out.f3 = [theta, f](const GroupElement& p) {
    return theta.f3(p) +
           (f({p.x, p.y, p.z + h}) - f({p.x, p.y, p.z - h})) / (2 * h);
  };
  return out;
}

double smooth_gauge(const GroupElement& p) {
  return std::sin(p.x) * std::cos(0.5 * p.y) + 0.3 * p.z * p.z;
}

}  // namespace

TEST_CASE("default potential: worked coefficient values") {
  {
    const OneForm th = default_theta({0.0, 0.0, 0.7});
    const GroupElement p{1.0, 2.0, -3.0};
    CHECK(th.f1(p) == doctest::Approx(-0.7));        // -rho y / 2
    CHECK(th.f2(p) == doctest::Approx(0.35));        // rho x / 2
    CHECK(th.f3(p) == doctest::Approx(0.7));         // rho
  }
  {
    const OneForm th = default_theta({});
    const GroupElement p{0.4, -0.6, 1.0};
    CHECK(th.f1(p) == 0.0);
    CHECK(th.f2(p) == 0.0);
    CHECK(th.f3(p) == 0.0);
  }
  {
    const OneForm th = default_theta({1.0, 0.0, 0.0});
    const GroupElement p{1.5, 2.0, 0.3};
    CHECK(th.f1(p) == doctest::Approx(1.5));   // xy/2
    CHECK(th.f2(p) == doctest::Approx(0.0));
    CHECK(th.f3(p) == doctest::Approx(1.5));   // x
  }
}

TEST_CASE("potential check: matches, gauge shifts, mismatches") {
  for (int i = 0; i < 100; ++i) {
    const LorentzForce f = ht::random_force();
    CHECK(theta_check(default_theta(f), f));
  }
  const LorentzForce f{0.8, -0.5, 1.2};
  CHECK(theta_check(gauge_shift(default_theta(f), smooth_gauge), f));

  ThetaDiagnostics diag;
  CHECK_FALSE(theta_check(default_theta({1.0, 0.0, 1.0}),
                          {0.0, 0.0, 1.0}, &diag));
  CHECK(diag.max_violation >= 0.5);  // the beta condition reads 1 != 0
}

TEST_CASE("lagrangian values at tangent vectors") {
  // pure kinetic at the identity
  CHECK(lagrangian_eval(make_lagrangian({}), {0, 0, 0, 1, 0, 0}) ==
        doctest::Approx(0.5));
  // exact force: the central momentum picks up -rho
  CHECK(lagrangian_eval(make_lagrangian({0.0, 0.0, 0.8}),
                        {0, 0, 0, 0, 0, 1}) == doctest::Approx(0.5 - 0.8));
  // mixed force at (1,1,0) with central velocity: the default potential
  // contributes rho + beta x + alpha y = 2
  CHECK(lagrangian_eval(make_lagrangian({1.0, 0.0, 1.0}),
                        {1, 1, 0, 0, 0, 1}) == doctest::Approx(0.5 - 2.0));
  // dropping the closed rho dz part of the potential gives the variant
  // with value 1/2 - (beta x + alpha y); both are Lagrangians for the
  // same flow.
  LagrangianSpec spec = make_lagrangian({1.0, 0.0, 1.0});
  spec.theta = gauge_shift(spec.theta,
                           [](const GroupElement& p) { return -1.0 * p.z; });
  CHECK(lagrangian_eval(spec, {1, 1, 0, 0, 0, 1}) ==
        doctest::Approx(0.5 - 1.0).epsilon(1e-9));
}

TEST_CASE("euler-lagrange residuals vanish along magnetic trajectories") {
  for (const auto& [f, ic] :
       std::vector<std::pair<LorentzForce, InitialVelocity>>{
           {{1.0, 0.0, 1.0}, {0.0, 0.0, -1.0}},
           {{1.0, 0.0, 1.0}, {0.7, -0.3, 0.4}},
           {{0.0, 0.0, 1.0}, {1.0, 0.0, 0.0}},
           {{0.5, -0.4, 0.8}, {0.3, 0.2, 0.1}}}) {
    const Trajectory traj = solve(f, ic);
    const LagrangianSpec spec = make_lagrangian(f);
    double worst = 0.0;
    for (int i = 0; i <= 100; ++i) {
      const auto r = el_residual(spec, traj, 0.1 * i);
      worst = std::max({worst, std::abs(r[0]), std::abs(r[1]),
                        std::abs(r[2])});
    }
    CHECK(worst <= 1e-5);
  }
}

TEST_CASE("residual of the constant curve is zero") {
  const Trajectory still = solve_canonical({0.0, 0.0, 0.0}, 1.0);
  const auto r = el_residual(make_lagrangian({1.0, 0.0, 1.0}), still, 1.0);
  CHECK(std::abs(r[0]) <= 1e-12);
  CHECK(std::abs(r[1]) <= 1e-12);
  CHECK(std::abs(r[2]) <= 1e-12);
}

TEST_CASE("a geodesic is not an extremal of the magnetic lagrangian") {
  // generic geodesic fed to the F_{0,1} spec: the central equation still
  // holds but the horizontal ones pick up rho y', rho x' terms.
  const Trajectory geo = solve(LorentzForce{}, {1.0, 0.2, 0.3});
  const LagrangianSpec spec = make_lagrangian({0.0, 0.0, 1.0});
  double horizontal = 0.0, central = 0.0;
  for (double t : {0.5, 1.0, 2.0, 3.5}) {
    const auto r = el_residual(spec, geo, t);
    horizontal = std::max({horizontal, std::abs(r[0]), std::abs(r[1])});
    central = std::max(central, std::abs(r[2]));
  }
  CHECK(central <= 1e-6);
  CHECK(horizontal >= 1e-2);
}

TEST_CASE("gauge freedom: adding df leaves the residuals") {
  const LorentzForce f{1.0, 0.0, 1.0};
  const Trajectory traj = solve(f, {0.4, 0.1, -0.3});
  LagrangianSpec shifted = make_lagrangian(f);
  shifted.theta = gauge_shift(shifted.theta, smooth_gauge);
  double worst = 0.0;
  for (int i = 1; i <= 60; ++i) {
    const auto r = el_residual(shifted, traj, 0.1 * i);
    worst = std::max({worst, std::abs(r[0]), std::abs(r[1]), std::abs(r[2])});
  }
  CHECK(worst <= 1e-5);
}
