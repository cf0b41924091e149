// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <hardylab/classifier.hpp>
#include <hardylab/evolution.hpp>
#include <hardylab/inequality.hpp>
#include <hardylab/params.hpp>
#include <hardylab/sharpness.hpp>

#include "classifier_fixtures.hpp"

using namespace hardylab;

namespace {

// Pinned tolerances.
constexpr double kHardyTol = 1e-8;
constexpr double kHardySharpRel = 0.02;
constexpr double kDissTol = 1e-8;
constexpr double kYosidaTol = 1e-8;
constexpr double kLimitRel = 1e-6;
constexpr double kRisingRel = 1e-12;
constexpr double kNormStepRel = 1e-8;
constexpr double kHeatRel = 1e-3;
constexpr double kSpatialOrder = 1.8;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, double limit_s,
            const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs < limit_s;
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::printf("%s criterion %d: %s | %s | runtime %.2f s (limit %.0f s%s)\n",
              pass ? "PASS" : "FAIL", id, title.c_str(), o.detail.c_str(), secs, limit_s,
              in_time ? "" : ", exceeded");
  std::fflush(stdout);
}

Params make(int N, double p, double alpha, double c = 0.0) {
  Params P;
  P.N = N;
  P.p = p;
  P.alpha = alpha;
  P.c = c;
  return P;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

struct Tuple {
  int N;
  double p;
  double alpha;
};

std::vector<Tuple> grid_tuples() {
  std::vector<Tuple> out;
  for (int N = 3; N <= 8; ++N) {
    for (double p : {1.5, 2.0, 3.0}) {
      for (double alpha : {0.0, 1.0, 2.0, 3.0}) out.push_back({N, p, alpha});
    }
  }
  return out;
}

Outcome criterion1() {
  std::mt19937 rng(20241015);
  std::uniform_int_distribution<int> Nd(3, 12), num(1, 40), den(1, 12), coin(0, 3);
  int ok = 0;
  for (int i = 0; i < 200; ++i) {
    const Rational N(Nd(rng));
    const Rational p = Rational(1) + Rational(num(rng), den(rng));
    Rational alpha(num(rng) - 1, den(rng));
    // Land some tuples exactly on the delta_alpha = 0 and beta_0 = 0 boundaries.
    const int mode = coin(rng);
    if (mode == 0 && Rational(1) + N * (p - Rational(2)) / Rational(2) >= 0) {
      alpha = Rational(1) + N * (p - Rational(2)) / Rational(2);
    }
    Rational pp = p;
    if (mode == 1) pp = N / Rational(2);
    if (pp <= 1) pp = p;
    const auto chk = check_identities_exact(N, pp, alpha);

    // Independent expansion of the three statements.
    const Rational beta0 = N * (pp - 1) * (N - 2 * pp) / (pp * pp);
    const Rational beta_a = (N * pp - N - alpha) * (N + alpha - 2 * pp) / (pp * pp);
    const Rational delta_a =
        (pp - 1) * (4 * alpha - 4 - 2 * N * pp + 4 * N) / (pp * pp);
    const bool indep = ((beta0 > 0) == (N > 2 * pp)) &&
                       ((delta_a >= 0) == (alpha >= 1 + N * (pp - 2) / 2));
    const Params P = make(static_cast<int>(N), static_cast<double>(pp),
                          static_cast<double>(alpha));
    const auto ks = k0_k1_mu(P);
    const bool floating = std::abs(ks.k0 + ks.k1 - static_cast<double>(beta_a)) <=
                          1e-12 * std::max(1.0, std::abs(static_cast<double>(beta_a)));
    if (chk.all() && indep && floating) ++ok;
  }
  return {ok == 200, std::to_string(ok) + "/200 rational tuples satisfy all three identities"};
}

Outcome criterion2() {
  const auto tuples = grid_tuples();
  struct Job {
    Params P;
    std::size_t profile;
  };
  std::vector<Job> jobs;
  std::vector<std::vector<RadialProfile>> corpora;
  for (const auto& t : tuples) {
    const Params P = make(t.N, t.p, t.alpha);
    P.validate();
    corpora.push_back(profile_corpus(t.N, t.p));
    for (std::size_t i = 0; i < corpora.back().size(); ++i) jobs.push_back({P, i});
  }
  const std::size_t per = 100;
  const auto gaps = parallel_map<double>(jobs.size(), [&](std::size_t j) {
    const auto& job = jobs[j];
    const auto f = hardy_ratio(corpora[j / per][job.profile], job.P);
    return *f.ratio - gamma_alpha(job.P);
  });
  const auto worst = std::min_element(gaps.begin(), gaps.end());
  const bool pass = *worst >= -kHardyTol;
  return {pass, std::to_string(jobs.size()) + " evaluations over " +
                    std::to_string(tuples.size()) + " tuples, min(ratio - gamma_alpha) = " +
                    fmt(*worst) + ", tol " + fmt(kHardyTol)};
}

Outcome criterion3() {
  Outcome o;
  for (const auto& t : {Tuple{5, 2, 0}, Tuple{5, 2, 1}, Tuple{6, 3, 2}}) {
    const Params P = make(t.N, t.p, t.alpha);
    const auto seq = hardy_infimum_search(P, {0.2, 0.1, 0.05, 0.025});
    bool mono = true;
    for (std::size_t i = 1; i < seq.size(); ++i) mono = mono && *seq[i].ratio < *seq[i - 1].ratio;
    const double g = gamma_alpha(P);
    const double rel = (*seq.back().ratio - g) / g;
    const bool ok = mono && std::abs(rel) <= kHardySharpRel;
    o.pass = o.pass && ok;
    o.detail += "(" + std::to_string(t.N) + "," + fmt(t.p) + "," + fmt(t.alpha) +
                "): final/gamma - 1 = " + fmt(rel) + (mono ? " monotone; " : " NOT monotone; ");
  }
  o.detail += "tol " + fmt(kHardySharpRel);
  return o;
}

Outcome criterion4() {
  std::vector<Params> cases;
  for (const auto& t : grid_tuples()) {
    if (t.alpha > (t.N - 2) * (t.p - 1)) continue;
    const double g0 = gamma_zero(make(t.N, t.p, 0));
    for (double c : {(t.p - 1) * g0, 0.0, -1.0}) cases.push_back(make(t.N, t.p, t.alpha, c));
  }
  std::vector<std::pair<std::size_t, std::size_t>> jobs;
  std::vector<std::vector<RadialProfile>> corpora;
  for (std::size_t k = 0; k < cases.size(); ++k) {
    corpora.push_back(profile_corpus(cases[k].N, cases[k].p));
    for (std::size_t i = 0; i < 100; ++i) jobs.emplace_back(k, i);
  }
  const auto vals = parallel_map<double>(jobs.size(), [&](std::size_t j) {
    const auto [k, i] = jobs[j];
    // normalized form value <u, Au |u|^{p-2}> / ||u||_p^p
    return -dissipativity_form(corpora[k][i], cases[k]).normalized_gap();
  });
  const double worst = *std::max_element(vals.begin(), vals.end());
  const bool sign_ok = worst <= kDissTol;

  const Params V = make(5, 2, 0, (2 - 1) * gamma_zero(make(5, 2, 0)) + 0.5);
  std::vector<double> s;
  const double s_crit = -(V.N - 2.0) / V.p;
  for (int i = 1; i <= 60; ++i) s.push_back(s_crit + 2.0 * std::pow(0.85, i));
  const auto scan = dissipativity_violation_scan(V, s);
  // Not gating: at alpha = 0 the form is -2(p-1) I_0^2 + c J_0^2, so a violation
  // needs c > 2(p-1)gamma_0. The same scan at alpha = 1 is reported for contrast.
  const auto scan1 = dissipativity_violation_scan(make(5, 2, 1, V.c), s);

  return {sign_ok && scan.found,
          std::to_string(jobs.size()) + " evaluations, max normalized form = " + fmt(worst) +
              " (tol " + fmt(kDissTol) + "); violation scan at (5,2,0,c=2.75): " +
              (scan.found ? "found " : "none found, best ") + fmt(scan.best.value) +
              " at s = " + fmt(scan.best.parameter) + "; [info] same scan at alpha=1: " +
              (scan1.found ? "found " : "none, best ") + fmt(scan1.best.value)};
}

Outcome criterion5() {
  std::vector<Params> cases;
  for (const auto& t : grid_tuples()) {
    if (t.N > 2 * t.p && t.alpha <= (t.N - 2) * (t.p - 1)) cases.push_back(make(t.N, t.p, t.alpha));
  }
  const std::vector<double> eps = {1, 0.1, 0.01, 1e-3, 1e-4};
  std::vector<std::pair<std::size_t, std::size_t>> jobs;
  std::vector<std::vector<RadialProfile>> corpora;
  for (std::size_t k = 0; k < cases.size(); ++k) {
    corpora.push_back(profile_corpus(cases[k].N, cases[k].p));
    for (std::size_t i = 0; i < 100; ++i) jobs.emplace_back(k, i);
  }
  const auto vals = parallel_map<double>(jobs.size(), [&](std::size_t j) {
    const auto [k, i] = jobs[j];
    double worst = INFINITY;
    for (double e : eps) {
      worst = std::min(worst, yosida_form_gap(corpora[k][i], cases[k], e).normalized_gap());
    }
    return worst;
  });
  const double worst = *std::min_element(vals.begin(), vals.end());
  return {worst >= -kYosidaTol, std::to_string(jobs.size() * eps.size()) + " evaluations over " +
                                    std::to_string(cases.size()) +
                                    " tuples, min normalized gap = " + fmt(worst) + ", tol " +
                                    fmt(kYosidaTol)};
}

Outcome criterion6() {
  double worst_limit = 0;
  for (int N : {5, 6, 7}) {
    for (double p : {1.5, 2.0}) {
      if (N <= 2 * p) continue;
      const double b0 = beta_zero(make(N, p, 0));
      for (int n : {1, 2, 3}) {
        worst_limit = std::max(worst_limit, std::abs(c_limit(N, p, n) - b0) / std::abs(b0));
      }
    }
  }
  double worst_rising = 0;
  for (int n = 1; n <= 6; ++n) {
    for (int k = 0; k <= 70; ++k) {
      const double d = 1e-6 * std::pow(10.0, k / 10.0);  // 1e-6 ... 10
      const auto e = c_bound_of_delta(6, 2, n, d);
      worst_rising = std::max(
          worst_rising, std::abs(e.rising_log_gamma - e.rising_direct) / e.rising_direct);
    }
  }
  return {worst_limit <= kLimitRel && worst_rising <= kRisingRel,
          "max |c_limit - beta_0|/beta_0 = " + fmt(worst_limit) + " (tol " + fmt(kLimitRel) +
              "), max rising-product rel diff = " + fmt(worst_rising) + " (tol " +
              fmt(kRisingRel) + ")"};
}

Outcome criterion7() {
  const auto table = fixtures::classifier_truth_table();
  int ok = 0;
  std::set<TheoremTag> seen;
  std::string bad;
  for (const auto& f : table) {
    const auto r = classify(f.params);
    seen.insert(r.theorem_tag);
    seen.insert(r.base_theorem);
    if (r.theorem_tag == f.tag && r.base_theorem == f.base && r.closure_of == f.closure_of) {
      ++ok;
    } else {
      bad += " " + f.name;
    }
  }
  const bool all = ok == static_cast<int>(table.size());
  const bool covered = seen.size() == 12;
  return {all && covered && table.size() == 17,
          std::to_string(ok) + "/" + std::to_string(table.size()) + " fixtures match, " +
              std::to_string(seen.size()) + "/12 tags covered" +
              (bad.empty() ? "" : ", mismatches:" + bad)};
}

Outcome criterion8() {
  Outcome o;
  for (double alpha : {0.0, 1.0}) {
    EvolutionConfig cfg;
    cfg.params = make(5, 2, alpha, 1.0);
    cfg.grid = make_grid(1e-6, 50, 2000, GridLayout::log_uniform);
    cfg.dt = 1e-4;
    cfg.t_final = 0.1;
    const auto tr = evolve(cfg, RadialProfile::gaussian(1.0));
    const bool ok = tr.max_relative_growth <= kNormStepRel && tr.times.size() == 1001;
    o.pass = o.pass && ok;
    o.detail += "alpha=" + fmt(alpha) + " max step growth " + fmt(tr.max_relative_growth) + "; ";
  }
  const auto rows = contractivity_experiment(make(5, 2, 0), {5.0}, {1e-2, 1e-3, 1e-4});
  bool increasing = true;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    increasing = increasing && rows[i].growth_factor > rows[i - 1].growth_factor;
  }
  o.pass = o.pass && increasing;
  o.detail += "c=5 growth factors";
  for (const auto& r : rows) o.detail += " " + fmt(r.growth_factor);
  o.detail += increasing ? " (increasing)" : " (NOT increasing)";
  return o;
}

double heat_error(int M, Scheme scheme) {
  EvolutionConfig cfg;
  cfg.params = make(5, 2, 0, 0.0);
  cfg.grid = make_grid(1e-6, 50, M, GridLayout::log_uniform);
  cfg.dt = 1e-4;
  cfg.t_final = 0.1;
  cfg.scheme = scheme;
  const auto tr = evolve(cfg, RadialProfile::gaussian(1.0));
  const auto w = norm_weights(cfg.grid, 5);
  std::vector<double> exact(M), diff(M);
  for (int i = 0; i < M; ++i) {
    // alpha = 0 gives u_t = 2 Delta u.
    exact[i] = heat_gaussian(cfg.grid.nodes[i], 0.1, 1.0, 2.0, 5);
    diff[i] = tr.final_state[i] - exact[i];
  }
  return discrete_lp_norm(diff, w, 2) / discrete_lp_norm(exact, w, 2);
}

Outcome criterion9() {
  const double e_ie = heat_error(2000, Scheme::implicit_euler);
  const double e_cn = heat_error(2000, Scheme::crank_nicolson);
  const std::vector<int> Ms = {250, 500, 1000, 2000};
  const auto errs = parallel_map<double>(
      Ms.size(), [&](std::size_t i) { return heat_error(Ms[i], Scheme::crank_nicolson); });
  double min_order = INFINITY;
  std::string orders;
  for (std::size_t i = 1; i < errs.size(); ++i) {
    const double q = std::log2(errs[i - 1] / errs[i]);
    min_order = std::min(min_order, q);
    orders += " " + fmt(q);
  }
  return {e_ie <= kHeatRel && e_cn <= kHeatRel && min_order >= kSpatialOrder,
          "rel L2 error at M=2000: implicit Euler " + fmt(e_ie) + ", Crank-Nicolson " +
              fmt(e_cn) + " (tol " + fmt(kHeatRel) + "); observed orders" + orders +
              " (min " + fmt(kSpatialOrder) + ")"};
}

}  // namespace

int main() {
  report(1, "exact constant identities", 1, criterion1);
  report(2, "Hardy lower bound on the corpus", 30, criterion2);
  report(3, "Hardy sharpness", 30, criterion3);
  report(4, "dissipativity sign and violation scan", 60, criterion4);
  report(5, "Yosida-form inequality", 60, criterion5);
  report(6, "sharpness oracle", 1, criterion6);
  report(7, "classifier truth table", 1, criterion7);
  report(8, "evolution contractivity", 300, criterion8);
  report(9, "solver convergence", 120, criterion9);
  std::printf("%d criterion/criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
