#pragma once

#include <stdexcept>
#include <vector>

namespace hardylab {

/// Upper bound on the constant C in <-Lu, |Vu|^{p-2} Vu> >= C ||Vu||_p^p
/// (V = 1/|x|^2, integer alpha = n) obtained from v = r^beta e^{-r/p}.
struct SharpnessEvaluation {
  double delta = 0;       // beta p + N - 2p
  double beta_param = 0;  // (delta + 2p - N)/p
  int alpha_n = 0;
  double c_bound = 0;
  double first_term = 0;   // -A(delta)
  double second_term = 0;  // -A(delta + n) * Gamma(delta + n)/Gamma(delta)
  double rising_direct = 0;
  double rising_log_gamma = 0;
};

/// Throws std::invalid_argument unless delta > 0, alpha_n >= 1, N >= 3 and
/// p > 1.
SharpnessEvaluation c_bound_of_delta(int N, double p, int alpha_n, double delta);

/// Raised when the extrapolated sequence does not settle.
class ExtrapolationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SharpnessLimit {
  double limit = 0;
  std::vector<SharpnessEvaluation> table;  // delta = 1e-2 ... 1e-8
  std::vector<double> extrapolated;        // Richardson values per consecutive pair
};

/// delta -> 0+ limit of c_bound_of_delta by order-1 Richardson extrapolation
/// along delta = 10^{-k}, k = 2..8.
SharpnessLimit c_limit_table(int N, double p, int alpha_n);
double c_limit(int N, double p, int alpha_n);

}  // namespace hardylab
