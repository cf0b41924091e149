#include <hardylab/classifier.hpp>

#include <array>
#include <stdexcept>
#include <utility>

namespace hardylab {

namespace {

using P = SemigroupProperty;

const std::string kIntersectInverseSquare = " ∩ D(|x|^-2)";

const char* kNoResultText =
    "No theorem of this analysis applies to these parameters. This is not a "
    "statement that generation fails.";

enum class Cmp { lt, le, gt, ge, eq };

bool compare(double lhs, Cmp op, double rhs) {
  switch (op) {
    case Cmp::lt: return lhs < rhs;
    case Cmp::le: return lhs <= rhs;
    case Cmp::gt: return lhs > rhs;
    case Cmp::ge: return lhs >= rhs;
    case Cmp::eq: return lhs == rhs;
  }
  return false;
}

// Collects the inequalities of one rule. Each rule is a list of structural
// hypotheses followed by the open bound on c and the closure equality.
class RuleBuilder {
 public:
  RuleBuilder(std::vector<HypothesisCheck>& trace, std::string letter)
      : trace_(trace), letter_(std::move(letter)) {}

  RuleBuilder& require(std::string condition, double lhs, Cmp op, double rhs) {
    const bool holds = compare(lhs, op, rhs);
    structural_.push_back(trace_.size());
    trace_.push_back({letter_, std::move(condition), lhs, rhs, holds, false});
    structural_ok_ = structural_ok_ && holds;
    return *this;
  }

  // Adds "c < bound" and "c == bound" entries.
  RuleBuilder& bound_on_c(const std::string& bound_name, double c, double bound) {
    open_index_ = trace_.size();
    trace_.push_back({letter_, "c < " + bound_name, c, bound, c < bound, false});
    closure_index_ = trace_.size();
    trace_.push_back({letter_, "c == " + bound_name, c, bound, c == bound, false});
    return *this;
  }

  bool structural_ok() const { return structural_ok_; }
  bool open_ok() const { return structural_ok_ && open_index_ && trace_[*open_index_].holds; }
  bool closure_ok() const {
    return structural_ok_ && closure_index_ && trace_[*closure_index_].holds;
  }

  void mark_required(bool closure) {
    for (std::size_t i : structural_) trace_[i].required = true;
    const auto idx = closure ? closure_index_ : open_index_;
    if (idx) trace_[*idx].required = true;
  }

 private:
  std::vector<HypothesisCheck>& trace_;
  std::string letter_;
  std::vector<std::size_t> structural_;
  std::optional<std::size_t> open_index_;
  std::optional<std::size_t> closure_index_;
  bool structural_ok_ = true;
};

struct Outcome {
  TheoremTag tag;
  std::set<SemigroupProperty> properties;
  std::string domain;
  std::string summary;
};

// Fills the report from the first matching rule; `outcomes` is parallel to
// `rules`. Returns true if some rule matched.
bool apply_first_match(ClassificationReport& report, std::vector<RuleBuilder*> rules,
                       const std::vector<Outcome>& outcomes) {
  for (std::size_t i = 0; i < rules.size(); ++i) {
    RuleBuilder& rule = *rules[i];
    const Outcome& out = outcomes[i];
    if (rule.open_ok()) {
      rule.mark_required(false);
      report.theorem_tag = out.tag;
      report.properties = out.properties;
      report.domain_label = out.domain;
      report.summary = out.summary;
      return true;
    }
    if (rule.closure_ok()) {
      rule.mark_required(true);
      report.theorem_tag = TheoremTag::BOUNDARY_CLOSURE;
      report.closure_of = out.tag;
      report.properties = out.properties;
      report.properties.erase(P::core_is_Cc_infinity);
      report.properties.insert(P::closure_generates);
      report.domain_label = out.domain;
      report.summary = "The closure of the operator at the boundary value of c "
                       "generates (closure statement of " +
                       std::string(to_string(out.tag)) + ").";
      return true;
    }
  }
  return false;
}

void assert_disjoint(const std::vector<const RuleBuilder*>& rules) {
  int matches = 0;
  for (const RuleBuilder* r : rules) matches += r->structural_ok() ? 1 : 0;
  if (matches > 1) {
    throw std::logic_error("classifier rules overlap: N > 2p and 2p >= N both hold");
  }
}

}  // namespace

ClassificationReport classify_L0(const Params& params) {
  params.validate();
  if (params.eta || params.beta) {
    throw ParamsError("classify_L0 requires params without eta/beta");
  }

  ClassificationReport report;
  report.constants_used = constant_set(params);
  const ConstantSet& cs = report.constants_used;
  const double N = params.N, p = params.p, alpha = params.alpha, c = params.c;
  auto& trace = report.hypothesis_trace;

  RuleBuilder a(trace, "a");
  a.require("alpha <= 2", alpha, Cmp::le, 2.0)
      .require("2p < N", 2.0 * p, Cmp::lt, N)
      .require("alpha <= (N-2)(p-1)", alpha, Cmp::le, (N - 2.0) * (p - 1.0))
      .bound_on_c("k", c, cs.k);

  RuleBuilder b(trace, "b");
  b.require("alpha <= 2", alpha, Cmp::le, 2.0)
      .require("2p >= N", 2.0 * p, Cmp::ge, N)
      .require("2p - N <= alpha", 2.0 * p - N, Cmp::le, alpha)
      .require("alpha <= (N-2)(p-1)", alpha, Cmp::le, (N - 2.0) * (p - 1.0))
      .bound_on_c("beta_0", c, cs.beta_zero);

  RuleBuilder neg(trace, "c");
  neg.require("alpha > 2", alpha, Cmp::gt, 2.0)
      .require("p <= N/(N-2)", p, Cmp::le, N / (N - 2.0));

  RuleBuilder d(trace, "d");
  d.require("alpha > 2", alpha, Cmp::gt, 2.0)
      .require("N/(N-2) < p", N / (N - 2.0), Cmp::lt, p)
      .require("p < N/2", p, Cmp::lt, N / 2.0)
      .require("alpha < N(p-1)/p", alpha, Cmp::lt, N * (p - 1.0) / p)
      .bound_on_c("k", c, cs.k);

  RuleBuilder e(trace, "e");
  e.require("alpha > 2", alpha, Cmp::gt, 2.0)
      .require("2p >= N", 2.0 * p, Cmp::ge, N)
      .require("2p - N <= alpha", 2.0 * p - N, Cmp::le, alpha)
      .require("alpha < N(p-1)/p", alpha, Cmp::lt, N * (p - 1.0) / p)
      .bound_on_c("beta_0", c, cs.beta_zero);

  assert_disjoint({&a, &b, &d, &e});

  if (alpha <= 2.0) {
    report.base_theorem = TheoremTag::TH_2_1;
  } else if (p <= N / (N - 2.0)) {
    report.base_theorem = TheoremTag::TH_2_2_NEG;
  } else if (alpha <= (p - 1.0) * (N - 2.0)) {
    report.base_theorem = TheoremTag::TH_2_2_GEN;
  }

  const std::vector<Outcome> small = {
      {TheoremTag::TH_3_MAIN_SMALL_ALPHA,
       {P::contractive, P::positive, P::core_is_Cc_infinity},
       "D_p",
       "Generates a contractive positive C0-semigroup; C_c^infinity is a core."},
      {TheoremTag::TH_3_BIS_SMALL_ALPHA,
       {P::contractive, P::analytic},
       "D_p" + kIntersectInverseSquare,
       "Generates a contractive analytic C0-semigroup."},
  };
  if (apply_first_match(report, {&a, &b}, small)) return report;

  if (neg.structural_ok()) {
    report.theorem_tag = TheoremTag::NO_RESULT;
    report.summary =
        "No realization of L generates a strongly continuous semigroup when "
        "alpha > 2 and p <= N/(N-2) (base result TH_2_2_NEG); no perturbation "
        "result applies.";
    return report;
  }

  const std::vector<Outcome> large = {
      {TheoremTag::TH_3_MAIN_LARGE_ALPHA,
       {P::contractive, P::positive, P::core_is_Cc_infinity},
       "D_hat_p",
       "Generates a contractive positive C0-semigroup; C_c^infinity is a core."},
      {TheoremTag::TH_3_BIS_LARGE_ALPHA,
       {P::contractive, P::analytic},
       "D_hat_p" + kIntersectInverseSquare,
       "Generates a contractive analytic C0-semigroup."},
  };
  if (apply_first_match(report, {&d, &e}, large)) return report;

  report.theorem_tag = TheoremTag::NO_RESULT;
  report.summary = kNoResultText;
  if (alpha > 2.0 && 2.0 * p == N && c < cs.k) {
    report.summary +=
        " The case p = N/2 with alpha > 2 is outside N/(N-2) < p < N/2 and is "
        "not covered.";
  }
  return report;
}

ClassificationReport classify_tilde(const Params& params) {
  params.validate();
  if (!params.eta || !params.beta) {
    throw ParamsError("classify_tilde requires eta and beta");
  }
  if (!(*params.eta > 0.0)) throw ParamsError("classify_tilde requires eta > 0");

  ClassificationReport report;
  report.constants_used = constant_set(params);
  const ConstantSet& cs = report.constants_used;
  const double N = params.N, p = params.p, alpha = params.alpha, c = params.c;
  const double beta = *params.beta;
  const double delta_threshold = 1.0 + N * (p - 2.0) / 2.0;
  auto& trace = report.hypothesis_trace;

  RuleBuilder a(trace, "a");
  a.require("beta > alpha - 2", beta, Cmp::gt, alpha - 2.0)
      .require("alpha - 2 > 0", alpha - 2.0, Cmp::gt, 0.0)
      .require("alpha >= 1 + N(p-2)/2", alpha, Cmp::ge, delta_threshold)
      .require("N > 2p", N, Cmp::gt, 2.0 * p)
      .bound_on_c("k", c, cs.k);

  RuleBuilder b(trace, "b");
  b.require("beta > alpha - 2", beta, Cmp::gt, alpha - 2.0)
      .require("alpha - 2 > 0", alpha - 2.0, Cmp::gt, 0.0)
      .require("alpha >= 1 + N(p-2)/2", alpha, Cmp::ge, delta_threshold)
      .require("N <= 2p", N, Cmp::le, 2.0 * p)
      .bound_on_c("beta_0", c, cs.beta_zero);

  assert_disjoint({&a, &b});

  if (alpha > 2.0 && beta > alpha - 2.0) report.base_theorem = TheoremTag::TH_2_3;

  const std::vector<Outcome> outcomes = {
      {TheoremTag::TH_TILDE_CONTRACTIVE,
       {P::quasi_contractive, P::positive, P::core_is_Cc_infinity},
       "D_tilde_p",
       "Generates a positive quasi-contractive C0-semigroup; C_c^infinity is a "
       "core."},
      {TheoremTag::TH_TILDE_BIS,
       {P::quasi_contractive},
       "D_tilde_p" + kIntersectInverseSquare,
       "Generates a quasi-contractive C0-semigroup."},
  };
  if (apply_first_match(report, {&a, &b}, outcomes)) return report;

  report.theorem_tag = TheoremTag::NO_RESULT;
  report.summary = kNoResultText;
  return report;
}

ClassificationReport classify(const Params& params) {
  return params.eta ? classify_tilde(params) : classify_L0(params);
}

namespace {

constexpr std::array<std::pair<TheoremTag, std::string_view>, 12> kTagNames = {{
    {TheoremTag::TH_2_1, "TH_2_1"},
    {TheoremTag::TH_2_2_NEG, "TH_2_2_NEG"},
    {TheoremTag::TH_2_2_GEN, "TH_2_2_GEN"},
    {TheoremTag::TH_2_3, "TH_2_3"},
    {TheoremTag::TH_3_MAIN_SMALL_ALPHA, "TH_3_MAIN_SMALL_ALPHA"},
    {TheoremTag::TH_3_MAIN_LARGE_ALPHA, "TH_3_MAIN_LARGE_ALPHA"},
    {TheoremTag::TH_3_BIS_SMALL_ALPHA, "TH_3_BIS_SMALL_ALPHA"},
    {TheoremTag::TH_3_BIS_LARGE_ALPHA, "TH_3_BIS_LARGE_ALPHA"},
    {TheoremTag::TH_TILDE_CONTRACTIVE, "TH_TILDE_CONTRACTIVE"},
    {TheoremTag::TH_TILDE_BIS, "TH_TILDE_BIS"},
    {TheoremTag::BOUNDARY_CLOSURE, "BOUNDARY_CLOSURE"},
    {TheoremTag::NO_RESULT, "NO_RESULT"},
}};

}  // namespace

std::string_view to_string(TheoremTag tag) {
  for (const auto& [t, name] : kTagNames) {
    if (t == tag) return name;
  }
  return "UNKNOWN";
}

std::optional<TheoremTag> theorem_tag_from_string(std::string_view name) {
  for (const auto& [t, n] : kTagNames) {
    if (n == name) return t;
  }
  return std::nullopt;
}

std::string_view to_string(SemigroupProperty property) {
  switch (property) {
    case P::contractive: return "contractive";
    case P::quasi_contractive: return "quasi-contractive";
    case P::analytic: return "analytic";
    case P::positive: return "positive";
    case P::core_is_Cc_infinity: return "core_is_Cc_infinity";
    case P::closure_generates: return "closure_generates";
  }
  return "unknown";
}

}  // namespace hardylab
