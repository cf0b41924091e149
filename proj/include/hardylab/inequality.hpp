#pragma once

#include <functional>
#include <future>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <hardylab/params.hpp>
#include <hardylab/radial.hpp>

namespace hardylab {

/// The profile vanishes identically, so a ratio or normalization is undefined.
class DegenerateProfile : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Both sides of an inequality on one profile. `gap` is oriented so that
/// gap >= 0 means the inequality holds; `normalized_gap` divides by `scale`.
struct FormEvaluation {
  std::string form;
  double lhs = 0;
  double rhs = 0;
  double gap = 0;
  double quadrature_error = 0;
  std::string profile_descriptor;
  std::optional<double> ratio;
  double scale = 1;
  std::string note;

  double normalized_gap() const { return scale != 0.0 ? gap / scale : gap; }
};

/// The four integrals of the dissipativity estimate (all over dx) and
/// ||u||_p^p:
///   I_0^2 = int |u'|^2 |u|^{p-2},   I_a^2 = int |u'|^2 |u|^{p-2} r^alpha,
///   J_0^2 = int |u|^p r^{-2},       J_a^2 = int |u|^p r^{alpha-2}.
struct DissipativityIntegrals {
  double I0_sq = 0;
  double Ia_sq = 0;
  double J0_sq = 0;
  double Ja_sq = 0;
  double lp_pp = 0;
  double error = 0;
};

/// When `positive_part` is set the integrals are taken over u_+ = max(u, 0).
DissipativityIntegrals dissipativity_integrals(const RadialProfile& u, const Params& params,
                                               bool positive_part = false,
                                               const QuadratureOptions& options = {});

/// lhs = int |u|^p r^{alpha-2} dx, rhs = int |u'|^2 |u|^{p-2} r^alpha dx,
/// ratio = rhs/lhs, gap = rhs - gamma_alpha * lhs. Throws DegenerateProfile
/// when lhs vanishes.
FormEvaluation hardy_ratio(const RadialProfile& u, const Params& params,
                           const QuadratureOptions& options = {});

/// r^{-(N+alpha-2)/p + eps} times a cutoff in ln r equal to 1 on (0, 1] and
/// vanishing from r = e^4 on.
RadialProfile hardy_optimizer_profile(const Params& params, double eps);

/// hardy_ratio along hardy_optimizer_profile for each eps (decreasing, > 0).
std::vector<FormEvaluation> hardy_infimum_search(const Params& params,
                                                 const std::vector<double>& eps_sequence,
                                                 const QuadratureOptions& options = {});

/// lhs = -(p-1)(I_0^2 + I_a^2) + c J_0^2 + alpha I_a J_a, gap = -lhs,
/// scale = ||u||_p^p.
FormEvaluation dissipativity_form(const RadialProfile& u, const Params& params,
                                  const QuadratureOptions& options = {});

/// Confined operator. For beta > alpha - 2: lhs = dissipativity lhs
/// - eta int |u|^p r^beta dx, rhs = M ||u||_p^p with M = quasi_diss_bound_M
/// at `epsilon` (default p - 1), gap = rhs - lhs. For beta == alpha - 2:
/// lhs = dissipativity lhs - eta J_a^2, rhs = 0, gap = -lhs.
FormEvaluation tilde_dissipativity_form(const RadialProfile& u, const Params& params,
                                        std::optional<double> epsilon = std::nullopt,
                                        const QuadratureOptions& options = {});

/// Pieces of the Yosida pairing with V = 1/(r^2 + epsilon) (V = 1/r^2 when
/// epsilon == 0):
///   pairing     = -int (1+r^alpha)(u'' + (N-1)u'/r) V^{p-1} |u|^{p-2} u dx
///   v_moment    = int V^p |u|^p dx
///   v_moment_a  = int V^p |u|^p r^alpha dx
struct YosidaPairing {
  double pairing = 0;
  double v_moment = 0;
  double v_moment_alpha = 0;
  double error = 0;
};

YosidaPairing yosida_pairing(const RadialProfile& u, const Params& params, double epsilon,
                             const QuadratureOptions& options = {});

/// lhs = pairing, rhs = b0 v_moment + beta_alpha v_moment_a with
/// b0 = beta_zero (or `beta_zero_override`), gap = lhs - rhs,
/// scale = v_moment + v_moment_a.
FormEvaluation yosida_form_gap(const RadialProfile& u, const Params& params, double epsilon,
                               const QuadratureOptions& options = {},
                               std::optional<double> beta_zero_override = std::nullopt);

/// Dissipativity integrals of u_+, lhs as in dissipativity_form, gap = -lhs.
/// u_+ == 0 gives a zero form marked as a trivial pass.
FormEvaluation dispersivity_form(const RadialProfile& u, const Params& params,
                                 const QuadratureOptions& options = {});

/// 100 deterministic profiles admissible for (N, p): every power exponent
/// exceeds -(N-2)/p.
std::vector<RadialProfile> profile_corpus(int N, double p);

struct ScanSample {
  double parameter = 0;
  double secondary = 0;
  double value = 0;
};

/// Outcome of a 1-D family scan. `found == false` only says the scan saw no
/// violation.
struct ViolationScan {
  bool found = false;
  ScanSample best;
  std::vector<ScanSample> samples;
};

/// Scans u = r^s e^{-r} over s and reports the largest normalized
/// dissipativity lhs (violation when > 0).
ViolationScan dissipativity_violation_scan(const Params& params,
                                           const std::vector<double>& s_values,
                                           const QuadratureOptions& options = {});

/// Scans u = r^beta e^{-r/p} with beta = (delta + 2p - N)/p over delta and
/// epsilon, with beta_zero raised by `excess` on the right side. Reports the
/// most negative normalized gap (violation when < 0).
ViolationScan yosida_constant_violation_scan(const Params& params, double excess,
                                             const std::vector<double>& deltas,
                                             const std::vector<double>& epsilons,
                                             const QuadratureOptions& options = {});

/// Applies f to every index in [0, n) on a few worker threads; results are
/// stored by index.
template <class R>
std::vector<R> parallel_map(std::size_t n, const std::function<R(std::size_t)>& f) {
  std::vector<R> out(n);
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(n, std::thread::hardware_concurrency()));
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < n; i += workers) out[i] = f(i);
    }));
  }
  for (auto& j : jobs) j.get();
  return out;
}

}  // namespace hardylab
