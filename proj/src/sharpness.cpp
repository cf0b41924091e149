#include <hardylab/sharpness.hpp>

#include <cmath>
#include <string>

#include <hardylab/special.hpp>

namespace hardylab {

namespace {

// A(x) = beta(beta + N - 2) + (1 - N - 2 beta) x / p + x (x + 1) / p^2
double A(int N, double p, double beta, double x) {
  return beta * (beta + N - 2.0) + (1.0 - N - 2.0 * beta) * x / p + x * (x + 1.0) / (p * p);
}

}  // namespace

SharpnessEvaluation c_bound_of_delta(int N, double p, int alpha_n, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("c_bound_of_delta requires delta > 0");
  if (alpha_n < 1) throw std::invalid_argument("c_bound_of_delta requires alpha_n >= 1");
  if (N < 3) throw std::invalid_argument("c_bound_of_delta requires N >= 3");
  if (!(p > 1.0)) throw std::invalid_argument("c_bound_of_delta requires p > 1");

  SharpnessEvaluation e;
  e.delta = delta;
  e.alpha_n = alpha_n;
  e.beta_param = (delta + 2.0 * p - N) / p;
  e.rising_direct = special::rising_product(delta, alpha_n);
  e.rising_log_gamma = special::rising_product_log_gamma(delta, alpha_n);
  e.first_term = -A(N, p, e.beta_param, delta);
  e.second_term = -A(N, p, e.beta_param, delta + alpha_n) * e.rising_log_gamma;
  e.c_bound = e.first_term + e.second_term;
  return e;
}

SharpnessLimit c_limit_table(int N, double p, int alpha_n) {
  SharpnessLimit out;
  for (int k = 2; k <= 8; ++k) {
    out.table.push_back(c_bound_of_delta(N, p, alpha_n, std::pow(10.0, -k)));
  }
  for (std::size_t i = 0; i + 1 < out.table.size(); ++i) {
    out.extrapolated.push_back((10.0 * out.table[i + 1].c_bound - out.table[i].c_bound) / 9.0);
  }
  const double last = out.extrapolated.back();
  const double prev = out.extrapolated[out.extrapolated.size() - 2];
  const double scale = std::max(1.0, std::abs(last));
  if (!std::isfinite(last) || std::abs(last - prev) > 1e-6 * scale) {
    throw ExtrapolationError("c_limit: extrapolation did not converge (last two values " +
                             std::to_string(prev) + ", " + std::to_string(last) + ")");
  }
  out.limit = last;
  return out;
}

double c_limit(int N, double p, int alpha_n) { return c_limit_table(N, p, alpha_n).limit; }

}  // namespace hardylab
