#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "heis/quartic.hpp"
#include "support/test_support.hpp"

using namespace heis;
namespace ht = heis::testing;

namespace {

// Fixtures with exactly known root configurations.  Given roots of
// eta^4 + 2 p0 eta^2 - 8 rho eta + q0 (sum zero), the symmetric
// functions fix (p0, q0, rho); a start point s inside an admissible
// interval then yields x0 = sqrt(P(s)), y0 = (p0 + s^2)/2 - 1,
// z0 = s - rho.
struct Fixture {
  InitialVelocity ic;
  double rho;
  QuarticCase expected;
};

// roots {-2.5, -1.5, 1, 3}: rho = 3/8, p0 = -4.625, q0 = 11.25
const Fixture kPosLow{{0.96824583655185426, -1.3125, -2.375}, 0.375,
                      QuarticCase::PosDeltaLow};
const Fixture kPosHigh{{1.9843134832984443, -1.3125, 1.625}, 0.375,
                       QuarticCase::PosDeltaHigh};
// roots {-2, -2, 1, 3}: rho = 1/2, mu = 3.75 > 0; x0 = 7 sqrt(3)/8
const Fixture kMuPos{{1.5155444566227675, -2.125, 1.0}, 0.5,
                     QuarticCase::ZeroDeltaMuPos};
// roots {-1.5, -0.5, -0.5, 2.5}: rho = 1/2, mu = -0.75
const Fixture kMuNegRight{{1.4523687548277813, -1.625, 0.5}, 0.5,
                          QuarticCase::ZeroDeltaMuNegRight};
const Fixture kMuNegLeft{{0.33071891388307384, -1.625, -1.5}, 0.5,
                         QuarticCase::ZeroDeltaMuNegLeft};
// roots {-1, -1, -1, 3}: rho = 1, s = 1, x0 = 2
const Fixture kCubic{{2.0, -2.0, 0.0}, 1.0, QuarticCase::ZeroDeltaCubic};

InitialVelocity nontrivial_velocity() {
  for (;;) {
    const InitialVelocity ic = ht::random_velocity(2.0);
    if (std::abs(ic.x0) > 1e-3) return ic;
  }
}

}  // namespace

TEST_CASE("reduced parameters and the degeneracy flag") {
  const ReducedParams p = reduced_params({0.0, 0.0, -1.0}, 1.0);
  CHECK(p.p0 == doctest::Approx(2.0));
  CHECK(p.q0 == doctest::Approx(0.0));
  CHECK_FALSE(p.trivial);

  CHECK(reduced_params({0.0, 0.0, 0.0}, 0.0).trivial);
  CHECK(reduced_params({0.0, 0.0, 0.0}, 1.0).trivial);   // (y0+1)(z0+rho)=rho
  CHECK_FALSE(reduced_params({0.1, 0.0, 0.0}, 1.0).trivial);
}

TEST_CASE("P and P' at the start point match their closed forms") {
  for (int i = 0; i < 400; ++i) {
    const InitialVelocity ic = ht::random_velocity(2.0);
    const double rho = ht::uniform(-2.0, 2.0);
    const ReducedParams p = reduced_params(ic, rho);
    const double scale = 1.0 + std::abs(p.p0) + std::abs(p.q0);
    CHECK(std::abs(quartic_P(p, p.s) - ic.x0 * ic.x0) <= 1e-9 * scale);
    const double expected = 2.0 * (rho - (ic.y0 + 1.0) * p.s);
    CHECK(std::abs(quartic_P_prime(p, p.s) - expected) <= 1e-9 * scale);
  }
}

TEST_CASE("discriminant: frozen worked value and zero families") {
  CHECK(discriminant(reduced_params({0.0, 0.0, -1.0}, 1.0)) ==
        doctest::Approx(-496.0).epsilon(1e-12));
  // Degenerate family: mu = 0 member has p0 = q0 = -3 and delta = 0.
  const ReducedParams cubic = reduced_params({0.0, 2.0, 2.0}, 1.0);
  CHECK(cubic.p0 == doctest::Approx(-3.0));
  CHECK(cubic.q0 == doctest::Approx(-3.0));
  CHECK(std::abs(discriminant(cubic)) <= 1e-9);
  CHECK(discriminant(reduced_params({0.0, -2.75, -2.0}, 1.0)) ==
        doctest::Approx(297.0).epsilon(1e-12));
}

TEST_CASE("roots: residuals, frozen cubic factor, symmetric case") {
  const ReducedParams p = reduced_params({0.0, 0.0, -1.0}, 1.0);
  const auto roots = quartic_roots(p);
  // eta (eta^3 + 4 eta - 8): real roots 0 and 1.3646556076560387.
  CHECK(roots[0].real() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(roots[1].real() ==
        doctest::Approx(1.3646556076560387).epsilon(1e-12));
  for (const auto& r : roots) {
    const std::complex<double> v =
        ((r * r + 2.0 * p.p0) * r - 8.0 * p.rho) * r + p.q0;
    CHECK(std::abs(v) <= 1e-9);
  }
  // rho = 0 makes the quartic even: roots come in +/- pairs.
  const ReducedParams sym = reduced_params({1.0, 0.5, 0.0}, 0.0);
  const auto sroots = quartic_roots(sym);
  double sum = 0.0;
  for (const auto& r : sroots) sum += r.real();
  CHECK(std::abs(sum) <= 1e-9);
  CHECK(std::abs(sroots[0].real() + sroots[1].real()) <= 1e-9);

  CHECK_THROWS_AS((void)quartic_roots(reduced_params({0, 0, 0}, 1.0)),
                  ClassificationError);
}

TEST_CASE("vieta relations hold for returned roots") {
  for (int i = 0; i < 400; ++i) {
    const InitialVelocity ic = nontrivial_velocity();
    const double rho = ht::uniform(-2.0, 2.0);
    const ReducedParams p = reduced_params(ic, rho);
    const auto r = quartic_roots(p);
    const std::complex<double> e1 = r[0] + r[1] + r[2] + r[3];
    const std::complex<double> e2 = r[0] * r[1] + r[0] * r[2] + r[0] * r[3] +
                                    r[1] * r[2] + r[1] * r[3] + r[2] * r[3];
    const std::complex<double> e3 = r[0] * r[1] * r[2] + r[0] * r[1] * r[3] +
                                    r[0] * r[2] * r[3] + r[1] * r[2] * r[3];
    const std::complex<double> e4 = r[0] * r[1] * r[2] * r[3];
    const double scale =
        1.0 + std::abs(p.p0) + std::abs(p.q0) + std::abs(p.rho);
    CHECK(std::abs(e1) <= 1e-8 * scale);
    CHECK(std::abs(e2 - 2.0 * p.p0) <= 1e-8 * scale);
    CHECK(std::abs(e3 - 8.0 * p.rho) <= 1e-8 * scale);
    CHECK(std::abs(e4 - p.q0) <= 1e-8 * scale);
  }
}

TEST_CASE("classification: the explicit one-parameter families") {
  for (const double rho : {1.0, 0.7}) {
    const auto seeds = ht::delta_case_seeds(rho);
    const QuarticCase expected[] = {
        QuarticCase::NegDelta,          QuarticCase::PosDeltaLow,
        QuarticCase::PosDeltaHigh,      QuarticCase::ZeroDeltaMuPos,
        QuarticCase::ZeroDeltaMuNegRight, QuarticCase::ZeroDeltaMuNegLeft,
        QuarticCase::ZeroDeltaCubic};
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      const QuarticAnalysis a = classify(seeds[i].ic, rho);
      INFO("seed ", seeds[i].label, " rho ", rho);
      CHECK(a.kind == expected[i]);
    }
  }
  CHECK(classify({0, 0, 0}, 1.0).kind == QuarticCase::Trivial);
}

TEST_CASE("classification: interior fixtures with exact roots") {
  for (const Fixture& f :
       {kPosLow, kPosHigh, kMuPos, kMuNegRight, kMuNegLeft, kCubic}) {
    const QuarticAnalysis a = classify(f.ic, f.rho);
    INFO("expected ", to_string(f.expected));
    CHECK(a.kind == f.expected);
  }
  const QuarticAnalysis low = classify(kPosLow.ic, kPosLow.rho);
  CHECK(low.r1 == doctest::Approx(-2.5).epsilon(1e-10));
  CHECK(low.r2 == doctest::Approx(-1.5).epsilon(1e-10));
  CHECK(low.r3 == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(low.r4 == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(low.k1 < 1.0);
  const QuarticAnalysis mp = classify(kMuPos.ic, kMuPos.rho);
  CHECK(mp.double_root == doctest::Approx(-2.0).epsilon(1e-9));
  CHECK(mp.mu == doctest::Approx(3.75).epsilon(1e-9));
  const QuarticAnalysis cb = classify(kCubic.ic, kCubic.rho);
  CHECK(cb.double_root == doctest::Approx(-1.0).epsilon(1e-12));
  // (1/r) sqrt((3r+s)/(r-s)) with r = -1, s = 1
  CHECK(cb.constant == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("neg delta: modulus in (0,1), distance identities, vieta check") {
  const QuarticAnalysis a = classify({0.0, 0.0, -1.0}, 1.0);
  REQUIRE(a.kind == QuarticCase::NegDelta);
  CHECK(a.k > 0.0);
  CHECK(a.k < 1.0);
  CHECK(a.k == doctest::Approx(0.216580109627580026).epsilon(1e-12));
  // delta1 = |r1 - r2| and its closed form agree.
  CHECK(a.delta1 ==
        doctest::Approx(std::abs(std::complex<double>(a.r1, 0) -
                                 a.complex_pair)).epsilon(1e-9));
  CHECK(a.delta4 ==
        doctest::Approx(std::abs(std::complex<double>(a.r4, 0) -
                                 a.complex_pair)).epsilon(1e-9));
  // 2 p0 + r1^2 + r4^2 > (r4 - r1)^2 / 4 characterises this case.
  const double lhs = 2.0 * a.params.p0 + a.r1 * a.r1 + a.r4 * a.r4;
  const double rhs = 0.25 * (a.r4 - a.r1) * (a.r4 - a.r1);
  CHECK(lhs > rhs);
  // (r1 + r4)(2 p0 + r1^2 + r4^2) = 8 rho
  CHECK((a.r1 + a.r4) * lhs == doctest::Approx(8.0 * a.params.rho)
                                   .epsilon(1e-8));
}

TEST_CASE("random classification is total and internally consistent") {
  int count[8] = {0};
  for (int i = 0; i < 600; ++i) {
    const InitialVelocity ic{std::abs(ht::uniform(-2, 2)), ht::uniform(-2, 2),
                             ht::uniform(-2, 2)};
    const double rho = ht::uniform(-1.5, 1.5);
    const QuarticAnalysis a = classify(ic, rho);
    ++count[static_cast<int>(a.kind)];
    if (a.kind == QuarticCase::PosDeltaLow) {
      CHECK(a.params.s >= a.r1 - 1e-8);
      CHECK(a.params.s <= a.r2 + 1e-8);
      CHECK(a.k1 < 1.0);
    }
    if (a.kind == QuarticCase::PosDeltaHigh) {
      CHECK(a.params.s >= a.r3 - 1e-8);
      CHECK(a.params.s <= a.r4 + 1e-8);
    }
    if (a.kind == QuarticCase::NegDelta) {
      CHECK(a.k < 1.0);
      CHECK(a.params.s >= a.r1 - 1e-8);
      CHECK(a.params.s <= a.r4 + 1e-8);
    }
  }
  // Generic data lands in the open cases.
  CHECK(count[static_cast<int>(QuarticCase::NegDelta)] > 0);
}
