#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace hardylab {

/// Raised when a parameter tuple violates an invariant or an operation's
/// precondition. The message names the violated condition.
class ParamsError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parameter tuple (N, p, alpha, c, eta, beta) for the operator
/// (1+|x|^alpha) Laplacian + c/|x|^2 - eta |x|^beta.
struct Params {
  int N = 3;
  double p = 2.0;
  double alpha = 0.0;
  double c = 0.0;
  std::optional<double> eta;
  std::optional<double> beta;

  /// Throws ParamsError if N < 3, p outside (1, inf), alpha < 0, a
  /// non-finite field, or eta given without beta.
  void validate() const;

  /// p' = p/(p-1); never an input.
  double dual_exponent() const { return p / (p - 1.0); }

  bool has_confinement() const { return eta.has_value(); }
};

struct ConstantSet {
  double gamma_alpha = 0;
  double gamma_zero = 0;
  double beta_zero = 0;
  double beta_alpha = 0;
  double delta_alpha = 0;
  double k = 0;
  double k0 = 0;
  double k1 = 0;
  double mu = 0;
  double c0 = 0;
  double baras_goldstein = 0;
};

struct ShiftConstants {
  double k0;
  double k1;
  double mu;
};

struct ClassicalThresholds {
  double c0;               // (N-2)^2/4 - 1
  double baras_goldstein;  // (N-2)^2/4
};

double gamma_alpha(const Params& params);
double gamma_zero(const Params& params);
double beta_zero(const Params& params);
double beta_alpha(const Params& params);
double delta_alpha(const Params& params);

/// k = min(beta_0, (p-1) gamma_0).
double k_min(const Params& params);

/// k0, k1 and mu = min(k0, k0 + k1). The identity k0 + k1 = beta_alpha is
/// verified exactly on the (dyadic rational) inputs; a failure throws
/// std::logic_error.
ShiftConstants k0_k1_mu(const Params& params);

double eta_threshold(const Params& params);

/// inf over r > 0 of K r^{alpha-2} + eta r^beta. Requires alpha > 2,
/// beta > alpha - 2, eta > 0.
double m_shift(const Params& params);

/// sup over r >= 0 of alpha^2/(4 eps) r^{alpha-2} - eta r^beta. Requires
/// alpha >= 2, beta > alpha - 2, eta > 0 and 0 < eps <= p - 1.
double quasi_diss_bound_M(const Params& params, double epsilon);

ClassicalThresholds classical_thresholds(const Params& params);

ConstantSet constant_set(const Params& params);

/// Golden-section search over log r in [r_lo, r_hi] for a function that is
/// unimodal in log r. Returns the extremal value (sup if `maximize`).
double golden_section_log_r(const std::function<double(double)>& f,
                            bool maximize, double r_lo = 1e-8,
                            double r_hi = 1e8);

// ---------------------------------------------------------------------------
// Exact rational checks.

using Rational = boost::multiprecision::cpp_rational;

struct IdentityCheck {
  bool shift_sum_matches_beta_alpha;  // k0 + k1 == beta_alpha
  bool beta_zero_sign_matches;        // beta_0 > 0  <=>  N > 2p
  bool delta_sign_matches;            // delta_alpha >= 0  <=>  alpha >= 1 + N(p-2)/2
  bool all() const {
    return shift_sum_matches_beta_alpha && beta_zero_sign_matches &&
           delta_sign_matches;
  }
};

IdentityCheck check_identities_exact(const Rational& N, const Rational& p,
                                     const Rational& alpha);

}  // namespace hardylab
