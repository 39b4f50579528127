#include "heis/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace heis {

namespace {

constexpr double kClampSlack = 1e-12;
constexpr int kMaxLanden = 32;

[[noreturn]] void domain_fail(const char* fn, double value) {
  throw std::domain_error(std::string(fn) + ": argument " +
                          std::to_string(value) + " out of domain");
}

// Carlson's symmetric integral R_F(x, y, z) by the duplication theorem
// (Carlson, Numerical Algorithms 10, 1995).  The truncation error enters
// at order 8, so the loop tolerance is (3 * 0.01 * eps)^(1/8).
double carlson_rf(double x, double y, double z) {
  static const double tol =
      std::pow(3.0e-2 * std::numeric_limits<double>::epsilon(), 1.0 / 8.0);
  const double a0 = (x + y + z) / 3.0;
  double an = a0;
  const double q =
      std::max({std::abs(a0 - x), std::abs(a0 - y), std::abs(a0 - z)}) / tol;
  double xn = x, yn = y, zn = z;
  double mul = 1.0;
  while (q >= mul * std::abs(an)) {
    const double lam = std::sqrt(xn) * std::sqrt(yn) +
                       std::sqrt(yn) * std::sqrt(zn) +
                       std::sqrt(zn) * std::sqrt(xn);
    an = (an + lam) * 0.25;
    xn = (xn + lam) * 0.25;
    yn = (yn + lam) * 0.25;
    zn = (zn + lam) * 0.25;
    mul *= 4.0;
  }
  const double hx = (a0 - x) / (mul * an);
  const double hy = (a0 - y) / (mul * an);
  const double hz = -(hx + hy);
  const double e2 = hx * hy - hz * hz;
  const double e3 = hx * hy * hz;
  return (e3 * (6930.0 * e3 + e2 * (15015.0 * e2 - 16380.0) + 17160.0) +
          e2 * ((10010.0 - 5775.0 * e2) * e2 - 24024.0) + 240240.0) /
         (240240.0 * std::sqrt(an));
}

// F(phi, k) for 0 <= phi <= pi/2.
double ellip_F_quadrant(double phi, double m) {
  if (phi == 0.0) return 0.0;
  const double s = std::sin(phi);
  const double c = std::cos(phi);
  return s * carlson_rf(c * c, 1.0 - m * s * s, 1.0);
}

}  // namespace

Modulus::Modulus(double k) : k_(k) {
  if (!std::isfinite(k_)) domain_fail("Modulus", k);
  if (k_ < 0.0) {
    if (k_ < -kClampSlack) domain_fail("Modulus", k);
    k_ = 0.0;
  } else if (k_ > 1.0) {
    if (k_ > 1.0 + kClampSlack) domain_fail("Modulus", k);
    k_ = 1.0;
  }
}

double ellip_K(const Modulus& k) {
  if (k.k() >= 1.0) domain_fail("ellip_K", k.k());
  double a = 1.0;
  double b = std::sqrt(1.0 - k.m());
  for (int i = 0; i < kMaxLanden && std::abs(a - b) > 1e-15 * a; ++i) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return std::numbers::pi / (2.0 * a);
}

double ellip_F(double phi, const Modulus& k) {
  if (k.k() >= 1.0) domain_fail("ellip_F", k.k());
  // F(phi + n*pi) = F(phi) + 2nK
  const double half_pi = std::numbers::pi / 2.0;
  const double n = std::round(phi / std::numbers::pi);
  const double r = phi - n * std::numbers::pi;  // r in [-pi/2, pi/2]
  double f;
  if (r >= 0.0) {
    f = ellip_F_quadrant(std::min(r, half_pi), k.m());
  } else {
    f = -ellip_F_quadrant(std::min(-r, half_pi), k.m());
  }
  if (n != 0.0) f += 2.0 * n * ellip_K(k);
  return f;
}

JacobiValues jacobi_sncndn(double u, const Modulus& k) {
  const double m = k.m();
  if (m == 0.0) return {std::sin(u), std::cos(u), 1.0};
  if (m == 1.0) {
    const double sech = 1.0 / std::cosh(u);
    return {std::tanh(u), sech, sech};
  }
  // Reduce modulo the 4K period to keep the Landen phase accurate.
  const double period = 4.0 * ellip_K(k);
  u -= period * std::round(u / period);

  double a[kMaxLanden + 1], c[kMaxLanden + 1];
  a[0] = 1.0;
  c[0] = k.k();
  double b = std::sqrt(1.0 - m);
  int n = 0;
  while (n < kMaxLanden && std::abs(c[n]) > 1e-15 * a[n]) {
    const double an = 0.5 * (a[n] + b);
    c[n + 1] = 0.5 * (a[n] - b);
    b = std::sqrt(a[n] * b);
    a[n + 1] = an;
    ++n;
  }
  double phi = std::ldexp(a[n] * u, n);
  for (int i = n; i > 0; --i) {
    const double t = std::clamp(c[i] * std::sin(phi) / a[i], -1.0, 1.0);
    phi = 0.5 * (phi + std::asin(t));
  }
  const double sn = std::sin(phi);
  const double cn = std::cos(phi);
  const double dn = std::sqrt(std::max(1.0 - m * sn * sn, 0.0));
  return {sn, cn, dn};
}

double inv_cn(double x, const Modulus& k) {
  if (std::abs(x) > 1.0) {
    if (std::abs(x) > 1.0 + kClampSlack) domain_fail("inv_cn", x);
    x = std::copysign(1.0, x);
  }
  return ellip_F(std::acos(x), k);
}

double inv_sn(double x, const Modulus& k) {
  if (std::abs(x) > 1.0) {
    if (std::abs(x) > 1.0 + kClampSlack) domain_fail("inv_sn", x);
    x = std::copysign(1.0, x);
  }
  return ellip_F(std::asin(x), k);
}

}  // namespace heis
