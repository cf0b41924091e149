#pragma once

#include <hardylab/params.hpp>

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace hardylab {

enum class TheoremTag {
  TH_2_1,                 // L alone, alpha in [0, 2]
  TH_2_2_NEG,             // L alone, alpha > 2, p <= N/(N-2): no generation
  TH_2_2_GEN,             // L alone, alpha > 2, p > N/(N-2)
  TH_2_3,                 // L - eta|x|^beta alone
  TH_3_MAIN_SMALL_ALPHA,  // c < k, alpha <= 2, N > 2p
  TH_3_MAIN_LARGE_ALPHA,  // c < k, alpha > 2, N/(N-2) < p < N/2
  TH_3_BIS_SMALL_ALPHA,   // c < beta_0, alpha <= 2, 2p >= N
  TH_3_BIS_LARGE_ALPHA,   // c < beta_0, alpha > 2, 2p >= N
  TH_TILDE_CONTRACTIVE,
  TH_TILDE_BIS,
  BOUNDARY_CLOSURE,
  NO_RESULT,
};

enum class SemigroupProperty {
  contractive,
  quasi_contractive,
  analytic,
  positive,
  core_is_Cc_infinity,
  closure_generates,
};

/// One tested inequality `lhs_value <op> rhs_value`.
struct HypothesisCheck {
  std::string rule;       // rule letter in the table, e.g. "a"
  std::string condition;  // e.g. "alpha <= (N-2)(p-1)"
  double lhs_value = 0;
  double rhs_value = 0;
  bool holds = false;
  bool required = false;  // part of the rule that produced the tag
};

struct ClassificationReport {
  TheoremTag theorem_tag = TheoremTag::NO_RESULT;
  std::set<SemigroupProperty> properties;
  std::string domain_label;
  ConstantSet constants_used;
  std::vector<HypothesisCheck> hypothesis_trace;
  // Result on the unperturbed operator (L, or L - eta|x|^beta) that the
  // perturbation argument starts from.
  TheoremTag base_theorem = TheoremTag::NO_RESULT;
  // For BOUNDARY_CLOSURE: the open-interval theorem whose closure statement
  // applies.
  std::optional<TheoremTag> closure_of;
  std::string summary;
};

/// Rule table for L + c/|x|^2. Params must carry no eta/beta.
ClassificationReport classify_L0(const Params& params);

/// Rule table for L - eta|x|^beta + c/|x|^2. Requires eta > 0 and beta.
ClassificationReport classify_tilde(const Params& params);

/// Dispatches on whether eta is present.
ClassificationReport classify(const Params& params);

std::string_view to_string(TheoremTag tag);
std::string_view to_string(SemigroupProperty property);
std::optional<TheoremTag> theorem_tag_from_string(std::string_view name);

}  // namespace hardylab
