#include <hardylab/params.hpp>

#include <hardylab/formulas.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace hardylab {

namespace {

void require(bool ok, const std::string& condition) {
  if (!ok) throw ParamsError("parameter condition violated: " + condition);
}

double dN(const Params& params) { return static_cast<double>(params.N); }

}  // namespace

void Params::validate() const {
  require(N >= 3, "N >= 3");
  require(std::isfinite(p), "p finite");
  require(p > 1.0, "p > 1");
  require(std::isfinite(alpha), "alpha finite");
  require(alpha >= 0.0, "alpha >= 0");
  require(std::isfinite(c), "c finite");
  if (eta) {
    require(std::isfinite(*eta), "eta finite");
    require(beta.has_value(), "beta present when eta is present");
  }
  if (beta) require(std::isfinite(*beta), "beta finite");
}

double gamma_alpha(const Params& params) {
  return formulas::gamma(dN(params), params.p, params.alpha);
}

double gamma_zero(const Params& params) {
  return formulas::gamma(dN(params), params.p, 0.0);
}

double beta_zero(const Params& params) {
  return formulas::beta_zero(dN(params), params.p);
}

double beta_alpha(const Params& params) {
  return formulas::beta_alpha(dN(params), params.p, params.alpha);
}

double delta_alpha(const Params& params) {
  return formulas::delta_alpha(dN(params), params.p, params.alpha);
}

double k_min(const Params& params) {
  return std::min(beta_zero(params), (params.p - 1.0) * gamma_zero(params));
}

ShiftConstants k0_k1_mu(const Params& params) {
  const double N = dN(params);
  ShiftConstants out{};
  out.k0 = formulas::k0(N, params.p, params.alpha);
  out.k1 = formulas::k1(N, params.p, params.alpha);
  out.mu = std::min(out.k0, out.k0 + out.k1);

  // Every finite double is a dyadic rational, so the identity can always be
  // checked exactly on the inputs as given.
  const Rational rN(params.N), rp(params.p), ralpha(params.alpha);
  if (formulas::k0(rN, rp, ralpha) + formulas::k1(rN, rp, ralpha) !=
      formulas::beta_alpha(rN, rp, ralpha)) {
    throw std::logic_error("k0 + k1 != beta_alpha in exact arithmetic");
  }
  const double ba = beta_alpha(params);
  const double scale = std::max({1.0, std::abs(ba), std::abs(out.k0), std::abs(out.k1)});
  if (std::abs(out.k0 + out.k1 - ba) > 1e-12 * scale) {
    throw std::logic_error("k0 + k1 != beta_alpha beyond 1e-12 relative");
  }
  return out;
}

double eta_threshold(const Params& params) {
  return formulas::eta_threshold(dN(params), params.p, params.alpha);
}

double golden_section_log_r(const std::function<double(double)>& f,
                            bool maximize, double r_lo, double r_hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  const double sign = maximize ? -1.0 : 1.0;
  auto g = [&](double t) { return sign * f(std::exp(t)); };
  double a = std::log(r_lo), b = std::log(r_hi);
  double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
  double g1 = g(x1), g2 = g(x2);
  for (int it = 0; it < 200 && (b - a) > 1e-12 * (1.0 + std::abs(a) + std::abs(b)); ++it) {
    if (g1 < g2) {
      b = x2; x2 = x1; g2 = g1;
      x1 = b - inv_phi * (b - a); g1 = g(x1);
    } else {
      a = x1; x1 = x2; g1 = g2;
      x2 = a + inv_phi * (b - a); g2 = g(x2);
    }
  }
  // Endpoints matter when the extremum sits at the edge of the bracket.
  double best = std::min({g1, g2, g(std::log(r_lo)), g(std::log(r_hi))});
  return sign * best;
}

double m_shift(const Params& params) {
  if (!(params.alpha > 2.0)) throw ParamsError("m_shift is tilde-branch only: alpha > 2");
  if (!params.eta || !params.beta) throw ParamsError("m_shift is tilde-branch only: eta and beta required");
  const double eta = *params.eta, beta = *params.beta, alpha = params.alpha;
  if (!(beta > alpha - 2.0)) throw ParamsError("m_shift is tilde-branch only: beta > alpha - 2");
  if (!(eta > 0.0)) throw ParamsError("m_shift is tilde-branch only: eta > 0");

  const double K = formulas::tilde_shift_coefficient(dN(params), params.p, alpha);
  if (K >= 0.0) return 0.0;

  auto g = [&](double r) { return K * std::pow(r, alpha - 2.0) + eta * std::pow(r, beta); };
  // Stationary point of g: (alpha-2) K r^{alpha-3} + eta beta r^{beta-1} = 0.
  const double r_star =
      std::pow(-(alpha - 2.0) * K / (eta * beta), 1.0 / (beta - alpha + 2.0));
  double value = g(r_star);
  if (!std::isfinite(value) || !std::isfinite(r_star) || r_star <= 0.0) {
    value = golden_section_log_r(g, /*maximize=*/false);
  }
  return std::min(value, 0.0);
}

double quasi_diss_bound_M(const Params& params, double epsilon) {
  const double alpha = params.alpha;
  if (!(alpha >= 2.0)) throw ParamsError("quasi_diss_bound_M requires alpha >= 2");
  if (!params.eta || !params.beta) throw ParamsError("quasi_diss_bound_M requires eta and beta");
  const double eta = *params.eta, beta = *params.beta;
  if (!(beta > alpha - 2.0)) throw ParamsError("sup is unbounded unless beta > alpha - 2");
  if (!(eta > 0.0)) throw ParamsError("quasi_diss_bound_M requires eta > 0");
  if (!(epsilon > 0.0 && epsilon <= params.p - 1.0)) {
    throw ParamsError("quasi_diss_bound_M requires 0 < epsilon <= p - 1");
  }

  const double A = alpha * alpha / (4.0 * epsilon);
  if (alpha == 2.0) return A;  // A - eta r^beta peaks at r = 0

  auto f = [&](double r) { return A * std::pow(r, alpha - 2.0) - eta * std::pow(r, beta); };
  const double r_star =
      std::pow(A * (alpha - 2.0) / (eta * beta), 1.0 / (beta - alpha + 2.0));
  double value = f(r_star);
  if (!std::isfinite(value) || !std::isfinite(r_star) || r_star <= 0.0) {
    value = golden_section_log_r(f, /*maximize=*/true);
  }
  return std::max(value, 0.0);
}

ClassicalThresholds classical_thresholds(const Params& params) {
  const double h = (dN(params) - 2.0) * (dN(params) - 2.0) / 4.0;
  return {h - 1.0, h};
}

ConstantSet constant_set(const Params& params) {
  ConstantSet cs;
  cs.gamma_alpha = gamma_alpha(params);
  cs.gamma_zero = gamma_zero(params);
  cs.beta_zero = beta_zero(params);
  cs.beta_alpha = beta_alpha(params);
  cs.delta_alpha = delta_alpha(params);
  cs.k = k_min(params);
  const ShiftConstants sc = k0_k1_mu(params);
  cs.k0 = sc.k0;
  cs.k1 = sc.k1;
  cs.mu = sc.mu;
  const ClassicalThresholds ct = classical_thresholds(params);
  cs.c0 = ct.c0;
  cs.baras_goldstein = ct.baras_goldstein;
  return cs;
}

IdentityCheck check_identities_exact(const Rational& N, const Rational& p,
                                     const Rational& alpha) {
  IdentityCheck out{};
  out.shift_sum_matches_beta_alpha =
      formulas::k0(N, p, alpha) + formulas::k1(N, p, alpha) ==
      formulas::beta_alpha(N, p, alpha);
  out.beta_zero_sign_matches =
      (formulas::beta_zero(N, p) > 0) == (N > Rational(2) * p);
  out.delta_sign_matches =
      (formulas::delta_alpha(N, p, alpha) >= 0) ==
      (alpha >= Rational(1) + N * (p - Rational(2)) / Rational(2));
  return out;
}

}  // namespace hardylab
