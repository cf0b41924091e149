#include <doctest.h>

#include <cmath>
#include <random>

#include <hardylab/inequality.hpp>

using namespace hardylab;

namespace {

Params make(int N, double p, double alpha, double c = 0.0) {
  Params P;
  P.N = N;
  P.p = p;
  P.alpha = alpha;
  P.c = c;
  return P;
}

// int_0^inf r^m exp(-c r^2) dr
double gm(double m, double c) {
  return std::tgamma(0.5 * (m + 1.0)) / (2.0 * std::pow(c, 0.5 * (m + 1.0)));
}

}  // namespace

TEST_CASE("Hardy ratio of a Gaussian") {
  const auto f = hardy_ratio(RadialProfile::gaussian(1.0), make(5, 2, 0));
  // ratio = 4 * int r^6 e^{-2r^2} / int r^2 e^{-2r^2}
  const double oracle = 4.0 * gm(6, 2) / gm(2, 2);
  CHECK(oracle == doctest::Approx(3.75).epsilon(1e-14));
  REQUIRE(f.ratio);
  CHECK(*f.ratio == doctest::Approx(oracle).epsilon(1e-10));
  CHECK(*f.ratio >= 2.25);
  CHECK(f.gap == doctest::Approx(f.rhs - 2.25 * f.lhs));
}

TEST_CASE("Hardy ratio of zero is undefined") {
  CHECK_THROWS_AS(hardy_ratio(RadialProfile::zero(), make(5, 2, 0)), DegenerateProfile);
}

TEST_CASE("Hardy ratio is scale invariant") {
  const auto u = RadialProfile::power_exp(0.3, 1.5);
  const Params P = make(6, 3, 1);
  const double r1 = *hardy_ratio(u, P).ratio;
  for (double lam : {-2.0, 0.1, 7.0}) {
    CHECK(*hardy_ratio(u.scaled(lam), P).ratio == doctest::Approx(r1).epsilon(1e-10));
  }
}

TEST_CASE("Hardy optimizer family approaches gamma_alpha") {
  const Params P = make(5, 2, 1);
  const auto f = hardy_ratio(hardy_optimizer_profile(P, 0.05), P);
  CHECK(*f.ratio >= gamma_alpha(P));
  CHECK(*f.ratio <= 1.1 * 4.0);

  const auto single = hardy_infimum_search(P, {0.1});
  CHECK(single.size() == 1);

  const Params Q = make(6, 3, 2);
  const auto seq = hardy_infimum_search(Q, {0.2, 0.1, 0.05, 0.025});
  for (std::size_t i = 1; i < seq.size(); ++i) CHECK(*seq[i].ratio < *seq[i - 1].ratio);
  CHECK(*seq.back().ratio <= 1.05 * 4.0);
  CHECK_THROWS_AS(hardy_infimum_search(P, {0.1, 0.2}), std::invalid_argument);
}

TEST_CASE("dissipativity form examples") {
  const auto g = RadialProfile::gaussian(1.0);
  const auto f = dissipativity_form(g, make(5, 2, 1, 2.25));
  CHECK(f.lhs <= 0.0);
  CHECK(f.gap == -f.lhs);

  // c = alpha = 0: lhs = -(p-1) * 2 I_0^2 with I_0^2 = sigma int 4 r^2 e^{-2r^2} r^4 dr.
  const double sigma4 = 2.0 * std::pow(M_PI, 2.5) / std::tgamma(2.5);
  const double I0 = sigma4 * 4.0 * gm(6, 2);
  const auto z = dissipativity_form(g, make(5, 2, 0, 0.0));
  CHECK(z.lhs == doctest::Approx(-2.0 * I0).epsilon(1e-10));
  CHECK(z.lhs < 0.0);
}

TEST_CASE("dissipativity violation scan for alpha > 0") {
  // With alpha = 1 the cross term allows a positive form above (p-1) gamma_0.
  const Params P = make(5, 2, 1, 2.25 + 0.5);
  std::vector<double> s;
  for (int i = 1; i <= 30; ++i) s.push_back(-1.5 + 0.05 * i);
  const auto scan = dissipativity_violation_scan(P, s);
  CHECK(scan.samples.size() == s.size());
  CHECK(scan.found);
}

TEST_CASE("tilde dissipativity") {
  Params P = make(5, 2, 3, 2.0);
  P.beta = 2.0;
  P.eta = 1.0;
  const auto g = RadialProfile::gaussian(1.0);
  const auto f = tilde_dissipativity_form(g, P);
  CHECK(f.lhs <= f.rhs);
  CHECK(f.rhs == doctest::Approx(quasi_diss_bound_M(P, 1.0) * f.scale));

  // eta = 0 on the beta = alpha - 2 branch reduces to the plain form.
  Params Q = make(5, 2, 1, 1.0);
  Q.beta = -1.0;
  Q.eta = 0.0;
  CHECK(tilde_dissipativity_form(g, Q).lhs ==
        doctest::Approx(dissipativity_form(g, make(5, 2, 1, 1.0)).lhs).epsilon(1e-12));

  Params bad = make(5, 2, 3);
  CHECK_THROWS_AS(tilde_dissipativity_form(g, bad), ParamsError);
}

TEST_CASE("tilde form on the critical branch with eta above threshold") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> sd(0.0, 2.0), ad(0.4, 2.5);
  for (const auto& [N, alpha] : {std::pair{5, 2.0}, std::pair{6, 3.0}, std::pair{7, 2.5}}) {
    Params P = make(N, 2, alpha, gamma_zero(make(N, 2, 0)));  // c = (p-1) gamma_0
    P.beta = alpha - 2.0;
    P.eta = std::max(eta_threshold(P), 0.0) + 0.1;
    REQUIRE(alpha <= (N - 2) * (P.p - 1));
    for (int i = 0; i < 17; ++i) {
      const auto u = RadialProfile(PowerExp{1.0, sd(rng), ad(rng), 2.0});
      const auto f = tilde_dissipativity_form(u, P);
      CHECK(f.normalized_gap() >= -1e-8);
    }
  }
}

TEST_CASE("Yosida form gap") {
  const auto g = RadialProfile::gaussian(1.0);
  CHECK(yosida_form_gap(g, make(5, 2, 1), 0.1).gap >= 0.0);
  for (double eps : {1.0, 0.1, 0.01}) {
    CHECK(yosida_form_gap(g, make(5, 2, 0), eps).gap >= 0.0);
  }
  CHECK_THROWS_AS(yosida_form_gap(g, make(5, 2, 0), 0.0), std::invalid_argument);
}

TEST_CASE("Yosida pairing with exact V matches the Gamma closed form") {
  // u = r^beta e^{-r/p}, alpha = 0: pairing / int V^p u^p = -2 A(delta).
  const int N = 5;
  const double p = 2.0, delta = 0.5;
  const double beta = (delta + 2 * p - N) / p;
  const auto u = RadialProfile::power_exp_family(beta, p);
  const auto y = yosida_pairing(u, make(N, p, 0), 0.0);
  const double A = beta * (beta + N - 2) + (1 - N - 2 * beta) * delta / p +
                   delta * (delta + 1) / (p * p);
  CHECK(y.pairing / y.v_moment == doctest::Approx(-2.0 * A).epsilon(1e-9));
}

TEST_CASE("raising beta_zero exposes its sharpness at alpha = 0") {
  const auto scan = yosida_constant_violation_scan(make(5, 2, 0), 0.5, {0.2, 0.05, 0.01},
                                                   {1e-2, 1e-4, 1e-6});
  CHECK(scan.found);
  CHECK(scan.best.value < 0.0);
}

TEST_CASE("dispersivity") {
  const Params P = make(5, 2, 1, 2.0);
  const auto sc = RadialProfile::poly_gaussian({1.0, -1.0}, 1.0);
  CHECK(dispersivity_form(sc, P).lhs <= 0.0);

  const auto neg = RadialProfile::gaussian(1.0, -1.0);
  const auto z = dispersivity_form(neg, P);
  CHECK(z.lhs == 0.0);
  CHECK_FALSE(z.note.empty());

  const auto g = RadialProfile::gaussian(0.5);
  CHECK(dispersivity_form(g, P).lhs ==
        doctest::Approx(dissipativity_form(g, P).lhs).epsilon(1e-12));
}

TEST_CASE("profile corpus") {
  for (const auto& [N, p] : {std::pair{3, 1.5}, std::pair{5, 2.0}, std::pair{8, 3.0}}) {
    const auto corpus = profile_corpus(N, p);
    CHECK(corpus.size() == 100);
    const double s_crit = -(N - 2.0) / p;
    for (const auto& u : corpus) {
      // Every member behaves like r^s with s > s_crit near the origin.
      const double r1 = 1e-9, r2 = 2e-9;
      const double s = std::log2(std::abs(u.value(r2) / u.value(r1)));
      CHECK(s > s_crit);
    }
  }
}

TEST_CASE("sampled profiles go through the trapezoid path") {
  const auto grid = make_grid(1e-4, 12.0, 4000, GridLayout::log_uniform);
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::exp(-grid.nodes[i] * grid.nodes[i]);
  const auto f = hardy_ratio(RadialProfile::sampled(grid, v), make(5, 2, 0));
  CHECK(*f.ratio == doctest::Approx(3.75).epsilon(1e-3));
}

TEST_CASE("parallel_map keeps index order") {
  const auto out = parallel_map<int>(100, [](std::size_t i) { return static_cast<int>(i * i); });
  for (int i = 0; i < 100; ++i) CHECK(out[i] == i * i);
}
