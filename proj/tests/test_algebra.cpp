#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "heis/algebra.hpp"
#include "support/test_support.hpp"

using namespace heis;
namespace ht = heis::testing;

namespace {

GroupElement random_element() {
  return {ht::uniform(-3, 3), ht::uniform(-3, 3), ht::uniform(-3, 3)};
}

double dist(const GroupElement& a, const GroupElement& b) {
  return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y),
                   std::abs(a.z - b.z)});
}

}  // namespace

TEST_CASE("group product: identity, inverse, worked value") {
  const GroupElement g{0.3, -1.2, 0.7};
  CHECK(dist(group_mul({}, g), g) == 0.0);
  CHECK(dist(group_mul(g, {}), g) == 0.0);
  CHECK(dist(group_mul(g, group_inverse(g)), {}) == 0.0);
  CHECK(dist(group_mul(group_inverse(g), g), {}) == 0.0);

  const GroupElement p = group_mul({1, 0, 0}, {0, 1, 0});
  CHECK(p.x == 1.0);
  CHECK(p.y == 1.0);
  CHECK(p.z == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("group product is associative on random samples") {
  for (int i = 0; i < 200; ++i) {
    const GroupElement a = random_element(), b = random_element(),
                       c = random_element();
    CHECK(dist(group_mul(group_mul(a, b), c), group_mul(a, group_mul(b, c))) <=
          1e-12);
  }
}

TEST_CASE("bracket: [e1,e2]=e3, antisymmetry, central e3") {
  const AlgebraVector e1{1, 0, 0}, e2{0, 1, 0}, e3{0, 0, 1};
  const AlgebraVector b = bracket(e1, e2);
  CHECK(b.c1 == 0.0);
  CHECK(b.c2 == 0.0);
  CHECK(b.c3 == 1.0);
  const AlgebraVector v{0.4, -0.9, 2.0};
  CHECK(norm(bracket(v, v)) == 0.0);
  CHECK(norm(bracket(e3, e1)) == 0.0);
  for (int i = 0; i < 50; ++i) {
    const AlgebraVector u{ht::uniform(-2, 2), ht::uniform(-2, 2),
                          ht::uniform(-2, 2)};
    const AlgebraVector w{ht::uniform(-2, 2), ht::uniform(-2, 2),
                          ht::uniform(-2, 2)};
    CHECK(bracket(u, w).c3 == doctest::Approx(-bracket(w, u).c3));
  }
}

TEST_CASE("left frame velocity and metric") {
  const AlgebraVector at_e = left_frame_velocity({}, {0.7, -0.1, 0.4});
  CHECK(at_e.c1 == 0.7);
  CHECK(at_e.c2 == -0.1);
  CHECK(at_e.c3 == 0.4);

  const AlgebraVector central = left_frame_velocity({1.0, 2.0, 0.3}, {0, 0, 1});
  CHECK(central.c1 == 0.0);
  CHECK(central.c2 == 0.0);
  CHECK(central.c3 == 1.0);

  // At (0,2,0) the horizontal velocity e1 picks up a central component:
  // squared length is (1 + y^2/4) x'^2 = 2.
  const AlgebraVector v = left_frame_velocity({0.0, 2.0, 0.0}, {1, 0, 0});
  CHECK(v.c1 == 1.0);
  CHECK(v.c2 == 0.0);
  CHECK(v.c3 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(norm(v) * norm(v) == doctest::Approx(2.0).epsilon(1e-15));

  for (int i = 0; i < 50; ++i) {
    const GroupElement g = random_element();
    const CoordinateVelocity cv{ht::uniform(-2, 2), ht::uniform(-2, 2),
                                ht::uniform(-2, 2)};
    const CoordinateVelocity back =
        coordinate_velocity(g, left_frame_velocity(g, cv));
    CHECK(back.dx == doctest::Approx(cv.dx).epsilon(1e-14));
    CHECK(back.dy == doctest::Approx(cv.dy).epsilon(1e-14));
    CHECK(back.dz == doctest::Approx(cv.dz).epsilon(1e-14));
  }
}

TEST_CASE("two-form values and skew symmetry") {
  const AlgebraVector e1{1, 0, 0}, e2{0, 1, 0}, e3{0, 0, 1};
  const LorentzForce pure_rho{0.0, 0.0, 0.7};
  CHECK(two_form_eval(pure_rho, e1, e2) == doctest::Approx(0.7));
  const LorentzForce fe1{1.0, 0.0, 0.0};
  CHECK(two_form_eval(fe1, e1, e3) == doctest::Approx(1.0));
  for (int i = 0; i < 100; ++i) {
    const LorentzForce f = ht::random_force();
    const AlgebraVector u{ht::uniform(-2, 2), ht::uniform(-2, 2),
                          ht::uniform(-2, 2)};
    const AlgebraVector v{ht::uniform(-2, 2), ht::uniform(-2, 2),
                          ht::uniform(-2, 2)};
    CHECK(two_form_eval(f, u, v) == doctest::Approx(-two_form_eval(f, v, u))
                                        .epsilon(1e-14));
    CHECK(two_form_eval(f, u, u) == 0.0);
  }
}

TEST_CASE("kernel direction is annihilated exactly") {
  // Rational force entries keep the arithmetic exact.
  const LorentzForce f{3.0, -2.0, 0.5};
  const AlgebraVector k = kernel_direction(f);
  const AlgebraVector fk = apply(f, k);
  CHECK(fk.c1 == 0.0);
  CHECK(fk.c2 == 0.0);
  CHECK(fk.c3 == 0.0);
  for (int i = 0; i < 50; ++i) {
    const LorentzForce g = ht::random_force();
    CHECK(norm(apply(g, kernel_direction(g))) <= 1e-14);
  }
}

TEST_CASE("coordinate 2-form of a force is closed (fd exterior derivative)") {
  // d(omega) has the single component d(c23)/dx - d(c13)/dy + d(c12)/dz.
  const double h = 1e-5;
  for (int i = 0; i < 50; ++i) {
    const LorentzForce f = ht::random_force();
    const GroupElement p = random_element();
    auto c = [&](const GroupElement& q, int idx) {
      return two_form_coordinate_coeffs(f, q)[idx];
    };
    const double d23_dx = (c({p.x + h, p.y, p.z}, 2) - c({p.x - h, p.y, p.z}, 2)) / (2 * h);
    const double d13_dy = (c({p.x, p.y + h, p.z}, 1) - c({p.x, p.y - h, p.z}, 1)) / (2 * h);
    const double d12_dz = (c({p.x, p.y, p.z + h}, 0) - c({p.x, p.y, p.z - h}, 0)) / (2 * h);
    CHECK(std::abs(d23_dx - d13_dy + d12_dz) <= 1e-6);
  }
}
