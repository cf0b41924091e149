#pragma once

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hardylab {

struct QuadratureResult {
  double value = 0;
  double abs_error_estimate = 0;
  long node_count = 0;
};

/// Adaptive refinement did not reach the requested tolerance. Carries the
/// partial result accumulated so far.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, QuadratureResult partial)
      : std::runtime_error(what), partial_(partial) {}
  const QuadratureResult& partial() const { return partial_; }

 private:
  QuadratureResult partial_;
};

struct QuadratureOptions {
  // Integrals over (0, inf) are split into dyadic panels starting at r_min.
  double r_min = 1e-6;
  // Upper truncation. When absent, panels are appended until their
  // contribution falls below 1e-14 of the running absolute integral.
  std::optional<double> r_max;
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  // Bisection depth limit inside a panel.
  int max_levels = 24;
  // Integrate (0, r_min) by continuing panels toward the origin until the
  // integrand is a clean power law, then closing with the power-law tail.
  // When false, the integral is truncated at r_min.
  bool origin_tail = true;
  // Points where the integrand has a kink; used as panel edges.
  std::vector<double> breakpoints;
};

/// Adaptive Gauss-Kronrod (7/15) on [a, b]. The tolerance is
/// max(abs_tol, rel_tol * integral of |f|).
QuadratureResult integrate_interval(const std::function<double(double)>& f, double a,
                                    double b, double abs_tol, double rel_tol,
                                    int max_levels = 24);

/// Integral of f over (0, inf), or over [r_min, r_max] when truncated.
/// f is never evaluated at r = 0.
QuadratureResult integrate_radial(const std::function<double(double)>& f,
                                  const QuadratureOptions& options = {});

/// Trapezoidal rule on sampled values; the error estimate compares against
/// the rule on every other node.
QuadratureResult integrate_sampled(std::span<const double> nodes,
                                   std::span<const double> values);

}  // namespace hardylab
