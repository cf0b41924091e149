#include <hardylab/inequality.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/tools/roots.hpp>

#include <hardylab/special.hpp>

namespace hardylab {

namespace {

using JetIntegrand = std::function<double(double, const Jet&)>;

QuadratureResult integrate_jet(const RadialProfile& u, const JetIntegrand& g,
                               const QuadratureOptions& options,
                               const std::vector<double>& extra_breaks = {}) {
  if (const auto* s = u.samples()) {
    std::vector<double> f(s->grid.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
      f[i] = g(s->grid.nodes[i], Jet{s->values[i], s->first[i], s->second[i]});
    }
    return integrate_sampled(s->grid.nodes, f);
  }
  QuadratureOptions opts = quadrature_options_for(u, options);
  opts.breakpoints.insert(opts.breakpoints.end(), extra_breaks.begin(), extra_breaks.end());
  return integrate_radial([&](double r) { return g(r, u.jet(r)); }, opts);
}

// |u'|^2 |u|^{p-2}, zero where u vanishes.
double gradient_density(const Jet& j, double p) {
  if (j.u == 0.0) return 0.0;
  const double t = std::abs(j.du) * std::pow(std::abs(j.u), 0.5 * (p - 2.0));
  return t * t;
}

double abs_pow(double x, double p) { return x == 0.0 ? 0.0 : std::pow(std::abs(x), p); }

// Roots of u found by a sign scan on a log grid, refined by bracketing.
std::vector<double> sign_changes(const RadialProfile& u) {
  std::vector<double> roots;
  if (u.is_sampled()) return roots;
  constexpr int kScan = 2000;
  const double lo = 1e-6, hi = 1e3;
  double r_prev = lo, v_prev = u.value(lo);
  for (int i = 1; i <= kScan; ++i) {
    const double r = lo * std::pow(hi / lo, static_cast<double>(i) / kScan);
    const double v = u.value(r);
    if (v_prev != 0.0 && v != 0.0 && std::signbit(v) != std::signbit(v_prev)) {
      boost::uintmax_t iters = 200;
      auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-15 * std::abs(a); };
      const auto [a, b] = boost::math::tools::toms748_solve(
          [&](double x) { return u.value(x); }, r_prev, r, v_prev, v, tol, iters);
      roots.push_back(0.5 * (a + b));
    }
    r_prev = r;
    v_prev = v;
  }
  return roots;
}

FormEvaluation dissipativity_from(const DissipativityIntegrals& in, const Params& params,
                                  const std::string& name, const RadialProfile& u) {
  FormEvaluation f;
  f.form = name;
  const double p = params.p;
  f.lhs = -(p - 1.0) * (in.I0_sq + in.Ia_sq) + params.c * in.J0_sq +
          params.alpha * std::sqrt(in.Ia_sq) * std::sqrt(in.Ja_sq);
  f.rhs = 0.0;
  f.gap = -f.lhs;
  f.quadrature_error = in.error;
  f.scale = in.lp_pp;
  f.profile_descriptor = u.descriptor();
  return f;
}

}  // namespace

DissipativityIntegrals dissipativity_integrals(const RadialProfile& u, const Params& params,
                                               bool positive_part,
                                               const QuadratureOptions& options) {
  params.validate();
  const double p = params.p, a = params.alpha;
  const int N = params.N;
  const double sigma = special::unit_sphere_area(N);
  const std::vector<double> breaks = positive_part ? sign_changes(u) : std::vector<double>{};
  auto part = [positive_part](const Jet& j) {
    return positive_part && j.u <= 0.0 ? Jet{} : j;
  };

  DissipativityIntegrals out;
  auto run = [&](const JetIntegrand& g) {
    const QuadratureResult q = integrate_jet(u, g, options, breaks);
    out.error += q.abs_error_estimate;
    return q.value;
  };
  out.I0_sq = run([&](double r, const Jet& j) {
    return sigma * gradient_density(part(j), p) * std::pow(r, N - 1);
  });
  out.Ia_sq = run([&](double r, const Jet& j) {
    return sigma * gradient_density(part(j), p) * std::pow(r, a + N - 1);
  });
  out.J0_sq = run([&](double r, const Jet& j) {
    return sigma * abs_pow(part(j).u, p) * std::pow(r, N - 3);
  });
  out.Ja_sq = run([&](double r, const Jet& j) {
    return sigma * abs_pow(part(j).u, p) * std::pow(r, a + N - 3);
  });
  out.lp_pp = run([&](double r, const Jet& j) {
    return sigma * abs_pow(part(j).u, p) * std::pow(r, N - 1);
  });
  return out;
}

FormEvaluation hardy_ratio(const RadialProfile& u, const Params& params,
                           const QuadratureOptions& options) {
  params.validate();
  const double p = params.p, a = params.alpha;
  const int N = params.N;
  const double sigma = special::unit_sphere_area(N);
  const QuadratureResult lhs = integrate_jet(
      u, [&](double r, const Jet& j) { return sigma * abs_pow(j.u, p) * std::pow(r, a + N - 3); },
      options);
  if (lhs.value == 0.0) {
    throw DegenerateProfile("hardy_ratio: profile vanishes identically, ratio undefined");
  }
  const QuadratureResult rhs = integrate_jet(
      u,
      [&](double r, const Jet& j) {
        return sigma * gradient_density(j, p) * std::pow(r, a + N - 1);
      },
      options);
  FormEvaluation f;
  f.form = "hardy";
  f.lhs = lhs.value;
  f.rhs = rhs.value;
  f.ratio = rhs.value / lhs.value;
  f.gap = rhs.value - gamma_alpha(params) * lhs.value;
  f.scale = lhs.value;
  f.quadrature_error = lhs.abs_error_estimate + rhs.abs_error_estimate;
  f.profile_descriptor = u.descriptor();
  return f;
}

RadialProfile hardy_optimizer_profile(const Params& params, double eps) {
  const double s = -(params.N + params.alpha - 2.0) / params.p + eps;
  return RadialProfile::cutoff_power(s, 0.0, 4.0, CutoffScale::logarithmic);
}

std::vector<FormEvaluation> hardy_infimum_search(const Params& params,
                                                 const std::vector<double>& eps_sequence,
                                                 const QuadratureOptions& options) {
  for (std::size_t i = 0; i < eps_sequence.size(); ++i) {
    if (!(eps_sequence[i] > 0.0) || (i > 0 && !(eps_sequence[i] < eps_sequence[i - 1]))) {
      throw std::invalid_argument("hardy_infimum_search: eps must be positive and decreasing");
    }
  }
  std::vector<FormEvaluation> out;
  for (double eps : eps_sequence) {
    out.push_back(hardy_ratio(hardy_optimizer_profile(params, eps), params, options));
  }
  return out;
}

FormEvaluation dissipativity_form(const RadialProfile& u, const Params& params,
                                  const QuadratureOptions& options) {
  return dissipativity_from(dissipativity_integrals(u, params, false, options), params,
                            "dissipativity", u);
}

FormEvaluation tilde_dissipativity_form(const RadialProfile& u, const Params& params,
                                        std::optional<double> epsilon,
                                        const QuadratureOptions& options) {
  if (!params.eta || !params.beta) {
    throw ParamsError("tilde_dissipativity_form requires eta and beta");
  }
  const double eta = *params.eta, beta = *params.beta;
  const DissipativityIntegrals in = dissipativity_integrals(u, params, false, options);
  FormEvaluation f = dissipativity_from(in, params, "tilde_dissipativity", u);

  if (beta == params.alpha - 2.0) {
    f.lhs -= eta * in.Ja_sq;
    f.rhs = 0.0;
    f.gap = -f.lhs;
    return f;
  }
  if (!(beta > params.alpha - 2.0)) {
    throw ParamsError("tilde_dissipativity_form requires beta >= alpha - 2");
  }
  const double sigma = special::unit_sphere_area(params.N);
  const QuadratureResult conf = integrate_jet(
      u,
      [&](double r, const Jet& j) {
        return sigma * abs_pow(j.u, params.p) * std::pow(r, beta + params.N - 1);
      },
      options);
  const double eps = epsilon.value_or(params.p - 1.0);
  const double M = eta > 0.0 ? quasi_diss_bound_M(params, eps) : 0.0;
  f.lhs -= eta * conf.value;
  f.rhs = M * in.lp_pp;
  f.gap = f.rhs - f.lhs;
  f.quadrature_error += conf.abs_error_estimate;
  return f;
}

YosidaPairing yosida_pairing(const RadialProfile& u, const Params& params, double epsilon,
                             const QuadratureOptions& options) {
  params.validate();
  if (!(epsilon >= 0.0)) throw std::invalid_argument("yosida_pairing: epsilon must be >= 0");
  const double p = params.p, a = params.alpha;
  const int N = params.N;
  const double sigma = special::unit_sphere_area(N);
  auto V = [epsilon](double r) { return 1.0 / (r * r + epsilon); };

  YosidaPairing y;
  const QuadratureResult pair = integrate_jet(
      u,
      [&](double r, const Jet& j) {
        if (j.u == 0.0) return 0.0;
        const double lap = radial_laplacian(j, r, N);
        const double dual = std::pow(V(r), p - 1.0) * std::copysign(abs_pow(j.u, p - 1.0), j.u);
        return -sigma * (1.0 + std::pow(r, a)) * lap * dual * std::pow(r, N - 1);
      },
      options);
  const QuadratureResult m0 = integrate_jet(
      u,
      [&](double r, const Jet& j) {
        return sigma * std::pow(V(r), p) * abs_pow(j.u, p) * std::pow(r, N - 1);
      },
      options);
  const QuadratureResult ma = integrate_jet(
      u,
      [&](double r, const Jet& j) {
        return sigma * std::pow(V(r), p) * abs_pow(j.u, p) * std::pow(r, a + N - 1);
      },
      options);
  y.pairing = pair.value;
  y.v_moment = m0.value;
  y.v_moment_alpha = ma.value;
  y.error = pair.abs_error_estimate + m0.abs_error_estimate + ma.abs_error_estimate;
  return y;
}

FormEvaluation yosida_form_gap(const RadialProfile& u, const Params& params, double epsilon,
                               const QuadratureOptions& options,
                               std::optional<double> beta_zero_override) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("yosida_form_gap: epsilon must be > 0");
  const YosidaPairing y = yosida_pairing(u, params, epsilon, options);
  const double b0 = beta_zero_override.value_or(beta_zero(params));
  FormEvaluation f;
  f.form = "yosida";
  f.lhs = y.pairing;
  f.rhs = b0 * y.v_moment + beta_alpha(params) * y.v_moment_alpha;
  f.gap = f.lhs - f.rhs;
  f.scale = y.v_moment + y.v_moment_alpha;
  f.quadrature_error = y.error;
  f.profile_descriptor = u.descriptor();
  return f;
}

FormEvaluation dispersivity_form(const RadialProfile& u, const Params& params,
                                 const QuadratureOptions& options) {
  const DissipativityIntegrals in = dissipativity_integrals(u, params, true, options);
  if (in.lp_pp == 0.0) {
    FormEvaluation f;
    f.form = "dispersivity";
    f.profile_descriptor = u.descriptor();
    f.note = "positive part vanishes; trivial pass";
    return f;
  }
  return dissipativity_from(in, params, "dispersivity", u);
}

std::vector<RadialProfile> profile_corpus(int N, double p) {
  const double s_crit = -(N - 2.0) / p;
  const std::vector<double> offsets = {0.05, 0.1, 0.2, 0.35, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0};
  const std::vector<double> family_offsets = {0.02, 0.07, 0.15, 0.3, 0.6,
                                              0.9,  1.25, 1.75, 2.5, 4.0};
  const std::vector<double> rates = {0.5, 1.0, 2.0};

  std::vector<RadialProfile> corpus;
  corpus.reserve(100);
  for (double a : rates) corpus.push_back(RadialProfile::gaussian(a));
  for (double b : rates) {
    for (double t : offsets) corpus.push_back(RadialProfile::power_exp(s_crit + t, b));
  }
  for (double t : family_offsets) {
    corpus.push_back(RadialProfile::power_exp_family(s_crit + t, p));
  }
  for (double a : rates) {
    for (double t : offsets) {
      corpus.push_back(RadialProfile(PowerExp{1.0, s_crit + t, a, 2.0}));
    }
  }
  for (const auto& [center, width] : {std::pair{0.5, 1.0}, std::pair{1.0, 2.0}}) {
    for (std::size_t i = 0; i + 1 < offsets.size(); ++i) {
      corpus.push_back(RadialProfile::cutoff_power(s_crit + offsets[i], center, width,
                                                   CutoffScale::linear));
    }
  }
  for (std::size_t i = 0; i + 1 < offsets.size(); ++i) {
    corpus.push_back(
        RadialProfile::cutoff_power(s_crit + offsets[i], 0.0, 2.0, CutoffScale::logarithmic));
  }
  return corpus;
}

ViolationScan dissipativity_violation_scan(const Params& params,
                                           const std::vector<double>& s_values,
                                           const QuadratureOptions& options) {
  ViolationScan scan;
  scan.best.value = -std::numeric_limits<double>::infinity();
  for (double s : s_values) {
    const FormEvaluation f = dissipativity_form(RadialProfile::power_exp(s, 1.0), params, options);
    const ScanSample sample{s, 0.0, -f.normalized_gap()};
    scan.samples.push_back(sample);
    if (sample.value > scan.best.value) scan.best = sample;
  }
  scan.found = scan.best.value > 0.0;
  return scan;
}

ViolationScan yosida_constant_violation_scan(const Params& params, double excess,
                                             const std::vector<double>& deltas,
                                             const std::vector<double>& epsilons,
                                             const QuadratureOptions& options) {
  ViolationScan scan;
  scan.best.value = std::numeric_limits<double>::infinity();
  const double p = params.p;
  for (double delta : deltas) {
    const double beta = (delta + 2.0 * p - params.N) / p;
    const RadialProfile u = RadialProfile::power_exp_family(beta, p);
    for (double eps : epsilons) {
      const FormEvaluation f =
          yosida_form_gap(u, params, eps, options, beta_zero(params) + excess);
      const ScanSample sample{delta, eps, f.normalized_gap()};
      scan.samples.push_back(sample);
      if (sample.value < scan.best.value) scan.best = sample;
    }
  }
  scan.found = scan.best.value < 0.0;
  return scan;
}

}  // namespace hardylab
