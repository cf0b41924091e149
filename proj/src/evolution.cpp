#include <hardylab/evolution.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <hardylab/inequality.hpp>
#include <hardylab/special.hpp>

namespace hardylab {

void EvolutionConfig::validate() const {
  params.validate();
  if (!(dt > 0.0)) throw std::invalid_argument("evolution: dt must be positive");
  if (!(t_final > 0.0) || dt > t_final) {
    throw std::invalid_argument("evolution: require 0 < dt <= t_final");
  }
  if (grid.size() < 16 || !(grid.r_min > 0.0)) {
    throw std::invalid_argument("evolution: grid needs M >= 16 and r_min > 0");
  }
}

std::vector<double> Tridiagonal::apply(const std::vector<double>& x) const {
  const std::size_t M = size();
  std::vector<double> y(M);
  for (std::size_t i = 0; i < M; ++i) {
    double s = diag[i] * x[i];
    if (i > 0) s += lower[i] * x[i - 1];
    if (i + 1 < M) s += upper[i] * x[i + 1];
    y[i] = s;
  }
  return y;
}

Tridiagonal radial_laplacian_stencil(const RadialGrid& grid, int dimension) {
  const auto& r = grid.nodes;
  const std::size_t M = r.size();
  Tridiagonal t{std::vector<double>(M, 0.0), std::vector<double>(M, 0.0),
                std::vector<double>(M, 0.0)};
  for (std::size_t i = 1; i + 1 < M; ++i) {
    const std::vector<double> xs = {r[i - 1], r[i], r[i + 1]};
    const auto d1 = fd_weights(r[i], xs, 1);
    const auto d2 = fd_weights(r[i], xs, 2);
    const double drift = (dimension - 1) / r[i];
    t.lower[i] = d2[0] + drift * d1[0];
    t.diag[i] = d2[1] + drift * d1[1];
    t.upper[i] = d2[2] + drift * d1[2];
  }
  return t;
}

OperatorMatrix build_operator_matrix(const EvolutionConfig& config) {
  config.validate();
  const Params& P = config.params;
  OperatorMatrix op;
  op.laplacian = radial_laplacian_stencil(config.grid, P.N);
  op.full = op.laplacian;
  const auto& r = config.grid.nodes;
  const double eta = P.eta.value_or(0.0);
  const double beta = P.beta.value_or(0.0);
  for (std::size_t i = 1; i + 1 < r.size(); ++i) {
    const double a = 1.0 + std::pow(r[i], P.alpha);
    op.full.lower[i] *= a;
    op.full.diag[i] *= a;
    op.full.upper[i] *= a;
    op.full.diag[i] += P.c / (r[i] * r[i]);
    if (eta != 0.0) op.full.diag[i] -= eta * std::pow(r[i], beta);
  }
  return op;
}

std::vector<double> solve_tridiagonal(const Tridiagonal& m, const std::vector<double>& rhs,
                                      long step) {
  const std::size_t M = m.size();
  std::vector<double> c(M), d(M), x(M);
  double pivot = m.diag[0];
  auto check = [step](double piv, std::size_t row) {
    if (piv == 0.0 || !std::isfinite(piv)) {
      throw SolverError("linear solve failed: singular pivot at row " + std::to_string(row) +
                            " in step " + std::to_string(step),
                        step);
    }
  };
  check(pivot, 0);
  c[0] = M > 1 ? m.upper[0] / pivot : 0.0;
  d[0] = rhs[0] / pivot;
  for (std::size_t i = 1; i < M; ++i) {
    pivot = m.diag[i] - m.lower[i] * c[i - 1];
    check(pivot, i);
    c[i] = i + 1 < M ? m.upper[i] / pivot : 0.0;
    d[i] = (rhs[i] - m.lower[i] * d[i - 1]) / pivot;
  }
  x[M - 1] = d[M - 1];
  for (std::size_t i = M - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
  return x;
}

std::vector<double> norm_weights(const RadialGrid& grid, int N) {
  const auto& r = grid.nodes;
  const std::size_t M = r.size();
  const double sigma = special::unit_sphere_area(N);
  std::vector<double> w(M, 0.0);
  for (std::size_t i = 0; i + 1 < M; ++i) {
    const double h = 0.5 * (r[i + 1] - r[i]);
    w[i] += h;
    w[i + 1] += h;
  }
  for (std::size_t i = 0; i < M; ++i) w[i] *= sigma * std::pow(r[i], N - 1);
  return w;
}

double discrete_lp_norm(const std::vector<double>& u, const std::vector<double>& weights,
                        double p) {
  double s = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] != 0.0) s += weights[i] * std::pow(std::abs(u[i]), p);
  }
  return std::pow(s, 1.0 / p);
}

namespace {

// (I - theta dt A) with Dirichlet identity rows.
Tridiagonal implicit_matrix(const Tridiagonal& A, double theta_dt) {
  Tridiagonal B = A;
  const std::size_t M = A.size();
  for (std::size_t i = 0; i < M; ++i) {
    B.lower[i] = -theta_dt * A.lower[i];
    B.upper[i] = -theta_dt * A.upper[i];
    B.diag[i] = 1.0 - theta_dt * A.diag[i];
  }
  B.lower[0] = B.upper[0] = 0.0;
  B.diag[0] = 1.0;
  B.lower[M - 1] = B.upper[M - 1] = 0.0;
  B.diag[M - 1] = 1.0;
  return B;
}

double relative_residual(const Tridiagonal& B, const std::vector<double>& x,
                         const std::vector<double>& rhs) {
  const auto Bx = B.apply(x);
  double num = 0, den = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num = std::max(num, std::abs(Bx[i] - rhs[i]));
    den = std::max(den, std::abs(rhs[i]));
  }
  return den > 0.0 ? num / den : num;
}

}  // namespace

EvolutionTrace evolve(const EvolutionConfig& config, const RadialProfile& u0) {
  const OperatorMatrix op = build_operator_matrix(config);
  const Tridiagonal& A = op.full;
  const auto& r = config.grid.nodes;
  const std::size_t M = r.size();
  const double p = config.params.p;
  const auto weights = norm_weights(config.grid, config.params.N);

  std::vector<double> u(M);
  const Sampled* s = u0.samples();
  const bool same_grid = s && s->grid.nodes == r;
  for (std::size_t i = 0; i < M; ++i) u[i] = same_grid ? s->values[i] : u0.value(r[i]);
  u.front() = u.back() = 0.0;

  const long steps = std::max(1L, std::lround(config.t_final / config.dt));
  const double dt = config.dt;

  const Tridiagonal B_euler = implicit_matrix(A, dt);
  const Tridiagonal B_half = implicit_matrix(A, 0.5 * dt);
  Tridiagonal explicit_half = A;  // I + dt/2 A
  for (std::size_t i = 0; i < M; ++i) {
    explicit_half.lower[i] = 0.5 * dt * A.lower[i];
    explicit_half.upper[i] = 0.5 * dt * A.upper[i];
    explicit_half.diag[i] = 1.0 + 0.5 * dt * A.diag[i];
  }

  EvolutionTrace trace;
  // Norms are tracked as mantissa * 10^log_scale so blow-up runs stay finite.
  double log_scale = 0.0;
  auto record = [&](double t, double residual) {
    const double n = discrete_lp_norm(u, weights, p);
    double mn = *std::min_element(u.begin(), u.end());
    trace.times.push_back(t);
    trace.lp_norms.push_back(n * std::pow(10.0, log_scale));
    trace.minima.push_back(mn * std::pow(10.0, log_scale));
    trace.residuals.push_back(residual);
    return n;
  };
  const double n0 = record(0.0, 0.0);
  double prev = n0;
  double log_growth_max = 0.0;

  auto step_solve = [&](const Tridiagonal& B, std::vector<double> rhs, long k) {
    rhs.front() = rhs.back() = 0.0;
    std::vector<double> x = solve_tridiagonal(B, rhs, k);
    return std::pair{x, relative_residual(B, x, rhs)};
  };

  for (long k = 1; k <= steps; ++k) {
    double residual = 0.0;
    if (config.scheme == Scheme::implicit_euler) {
      auto [x, res] = step_solve(B_euler, u, k);
      u = std::move(x);
      residual = res;
    } else if (k <= config.startup_steps) {
      for (int half = 0; half < 2; ++half) {
        auto [x, res] = step_solve(B_half, u, k);
        u = std::move(x);
        residual = std::max(residual, res);
      }
    } else {
      auto [x, res] = step_solve(B_half, explicit_half.apply(u), k);
      u = std::move(x);
      residual = res;
    }
    for (double v : u) {
      if (!std::isfinite(v)) {
        throw SolverError("evolution produced a non-finite state at step " + std::to_string(k),
                          k);
      }
    }
    double n = discrete_lp_norm(u, weights, p);
    if (n > 1e100) {
      const double shift = std::floor(std::log10(n));
      for (double& v : u) v /= std::pow(10.0, shift);
      log_scale += shift;
      prev /= std::pow(10.0, shift);
      n = discrete_lp_norm(u, weights, p);
    }
    record(k * dt, residual);
    if (prev > 0.0) trace.max_relative_growth = std::max(trace.max_relative_growth, (n - prev) / prev);
    if (n0 > 0.0 && n > 0.0) {
      log_growth_max = std::max(log_growth_max, std::log10(n / n0) + log_scale);
    }
    prev = n;
  }
  trace.final_state = u;
  trace.growth_factor = n0 > 0.0 ? std::pow(10.0, log_growth_max) : 1.0;
  trace.supercritical = trace.growth_factor > 10.0;
  return trace;
}

std::vector<ContractivityRow> contractivity_experiment(
    const Params& params, const std::vector<double>& c_values,
    const std::vector<double>& r_min_values, double r_max, int M, double dt, double t_final) {
  std::vector<std::pair<double, double>> jobs;
  for (double c : c_values) {
    for (double rm : r_min_values) jobs.emplace_back(c, rm);
  }
  return parallel_map<ContractivityRow>(jobs.size(), [&](std::size_t i) {
    EvolutionConfig cfg;
    cfg.params = params;
    cfg.params.c = jobs[i].first;
    cfg.grid = make_grid(jobs[i].second, r_max, M, GridLayout::log_uniform);
    cfg.dt = dt;
    cfg.t_final = t_final;
    const EvolutionTrace tr = evolve(cfg, RadialProfile::gaussian(1.0));
    return ContractivityRow{jobs[i].first, jobs[i].second, tr.max_relative_growth,
                            tr.growth_factor, tr.supercritical};
  });
}

double heat_gaussian(double r, double t, double a, double D, int N) {
  const double s = 1.0 + 4.0 * a * D * t;
  return std::pow(s, -0.5 * N) * std::exp(-a * r * r / s);
}

}  // namespace hardylab
