#ifndef HEIS_QUADRATURE_HPP
#define HEIS_QUADRATURE_HPP

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace heis {

// Raised when an integration or ODE step-control budget is exhausted.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Adaptive Gauss-Kronrod (G7, K15) integration of f over [a, b].
// Bisects until the K15-G7 error estimate of every interval is below
// its share of the tolerance.  Throws NumericalError naming the worst
// interval when the depth budget runs out.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-11, double rel_tol = 1e-12,
                 int max_depth = 48);

// One non-adaptive K15 pass; `error` is the embedded estimate.
struct PanelResult {
  double value;
  double error;
};
PanelResult gk15_panel(const std::function<double(double)>& f, double a,
                       double b);

// Antiderivative A(t) = integral of f from 0 to t with O(1) evaluation
// after construction.  Prefix integrals of f are cached on a uniform
// grid over [-span, span]; a query inside the grid costs one short
// panel integration from the nearest node.  If `period` is given, f is
// assumed periodic and the cache covers one period, so every t is an
// in-grid query.  Queries beyond an aperiodic grid fall back to
// adaptive integration from the grid edge.
class CachedAntiderivative {
 public:
  CachedAntiderivative() = default;
  CachedAntiderivative(std::function<double(double)> f, double span,
                       std::optional<double> period, double abs_tol = 1e-11);

  double operator()(double t) const;

 private:
  double prefix_at(double t) const;  // within [lo_, hi_]

  std::function<double(double)> f_;
  std::optional<double> period_;
  double period_total_{0.0};  // integral of f over one period
  double lo_{0.0}, hi_{0.0};
  double cell_{0.0};
  double abs_tol_{1e-11};
  std::vector<double> prefix_;  // prefix_[i] = integral from 0 to node i
};

}  // namespace heis

#endif  // HEIS_QUADRATURE_HPP
