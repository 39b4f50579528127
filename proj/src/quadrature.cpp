#include "heis/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace heis {

namespace {

// QUADPACK qk15 abscissae and weights on [-1, 1] (positive half).
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {0.129484966168870, 0.279705391489277,
                           0.381830050505119, 0.417959183673469};

}  // namespace

PanelResult gk15_panel(const std::function<double(double)>& f, double a,
                       double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kron = kWgk[7] * fc;
  double gauss = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double fsum = f(c - h * kXgk[i]) + f(c + h * kXgk[i]);
    kron += kWgk[i] * fsum;
    if (i % 2 == 1) gauss += kWg[i / 2] * fsum;
  }
  return {kron * h, std::abs((kron - gauss) * h)};
}

namespace {

double integrate_rec(const std::function<double(double)>& f, double a,
                     double b, double tol, int depth, int max_depth) {
  const PanelResult r = gk15_panel(f, a, b);
  if (r.error <= tol || r.error <= 1e-16 * std::abs(r.value)) return r.value;
  if (depth >= max_depth) {
    throw NumericalError("quadrature failed to converge on [" +
                         std::to_string(a) + ", " + std::to_string(b) +
                         "], error estimate " + std::to_string(r.error));
  }
  const double c = 0.5 * (a + b);
  return integrate_rec(f, a, c, 0.5 * tol, depth + 1, max_depth) +
         integrate_rec(f, c, b, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, double rel_tol, int max_depth) {
  if (a == b) return 0.0;
  const PanelResult first = gk15_panel(f, a, b);
  const double tol =
      std::max(abs_tol, rel_tol * std::abs(first.value));
  if (first.error <= tol) return first.value;
  const double c = 0.5 * (a + b);
  return integrate_rec(f, a, c, 0.5 * tol, 1, max_depth) +
         integrate_rec(f, c, b, 0.5 * tol, 1, max_depth);
}

CachedAntiderivative::CachedAntiderivative(std::function<double(double)> f,
                                           double span,
                                           std::optional<double> period,
                                           double abs_tol)
    : f_(std::move(f)), period_(period), abs_tol_(abs_tol) {
  if (period_) {
    lo_ = 0.0;
    hi_ = *period_;
  } else {
    lo_ = -std::abs(span);
    hi_ = std::abs(span);
  }
  const double target_cell = 0.125;
  const std::size_t n = std::max<std::size_t>(
      16, static_cast<std::size_t>(std::ceil((hi_ - lo_) / target_cell)));
  cell_ = (hi_ - lo_) / static_cast<double>(n);
  prefix_.resize(n + 1);

  // Integral from 0 to each node.  Node index of t = 0 is exact for the
  // aperiodic grid (lo_ = -hi_) and is node 0 for the periodic one.
  std::vector<double> cells(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = lo_ + cell_ * static_cast<double>(i);
    cells[i] = integrate(f_, a, a + cell_, abs_tol_ / static_cast<double>(n),
                         1e-14);
  }
  // prefix relative to lo_, then shift so that prefix(0) = 0.
  prefix_[0] = 0.0;
  for (std::size_t i = 0; i < n; ++i) prefix_[i + 1] = prefix_[i] + cells[i];
  double at_zero = 0.0;
  if (!period_) {
    const std::size_t zero_index = n / 2;
    at_zero = prefix_[zero_index];
  }
  for (auto& v : prefix_) v -= at_zero;
  if (period_) period_total_ = prefix_.back() - prefix_.front();
}

double CachedAntiderivative::prefix_at(double t) const {
  const double offset = (t - lo_) / cell_;
  std::size_t i = static_cast<std::size_t>(std::clamp(
      std::floor(offset), 0.0, static_cast<double>(prefix_.size() - 2)));
  const double node = lo_ + cell_ * static_cast<double>(i);
  // Integrate the short remainder from the nearest node below t.
  return prefix_[i] + integrate(f_, node, t, abs_tol_, 1e-14);
}

double CachedAntiderivative::operator()(double t) const {
  if (period_) {
    const double turns = std::floor(t / *period_);
    const double tau = t - turns * *period_;
    return turns * period_total_ + prefix_at(tau);
  }
  if (t >= lo_ && t <= hi_) return prefix_at(t);
  if (t > hi_) return prefix_.back() + integrate(f_, hi_, t, abs_tol_, 1e-14);
  return prefix_.front() + integrate(f_, t, lo_, abs_tol_, 1e-14) * -1.0;
}

}  // namespace heis
