#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <hardylab/params.hpp>
#include <hardylab/radial.hpp>

namespace hardylab {

enum class Scheme { implicit_euler, crank_nicolson };

/// A linear solve broke down (zero or non-finite pivot, non-finite state).
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, long step) : std::runtime_error(what), step_(step) {}
  long step() const { return step_; }

 private:
  long step_;
};

/// Time-stepping setup for u_t = (1+r^alpha)(u'' + (N-1)u'/r) + (c/r^2 - eta r^beta) u
/// with u = 0 at both grid ends.
struct EvolutionConfig {
  Params params;
  RadialGrid grid;
  double dt = 1e-4;
  double t_final = 0.1;
  Scheme scheme = Scheme::implicit_euler;
  // Crank-Nicolson only: replace the first steps by pairs of implicit Euler
  // half steps to damp the stiff modes excited by rough data.
  int startup_steps = 2;

  /// Throws std::invalid_argument on dt <= 0, dt > t_final or a bad grid.
  void validate() const;
};

/// Rows of a tridiagonal matrix; lower[0] and upper[M-1] are unused.
struct Tridiagonal {
  std::vector<double> lower;
  std::vector<double> diag;
  std::vector<double> upper;

  std::size_t size() const { return diag.size(); }
  std::vector<double> apply(const std::vector<double>& x) const;
};

/// 3-point discretization of u'' + (dimension-1) u'/r on the grid nodes.
/// End rows are zero (Dirichlet).
Tridiagonal radial_laplacian_stencil(const RadialGrid& grid, int dimension);

struct OperatorMatrix {
  Tridiagonal laplacian;  // radial Laplacian stencil alone
  Tridiagonal full;       // (1+r^alpha) * laplacian + diag(c/r^2 - eta r^beta)
};

OperatorMatrix build_operator_matrix(const EvolutionConfig& config);

/// Thomas algorithm. Throws SolverError(step) on a zero or non-finite pivot.
std::vector<double> solve_tridiagonal(const Tridiagonal& m, const std::vector<double>& rhs,
                                      long step = 0);

/// Trapezoid weights times sigma r^{N-1}.
std::vector<double> norm_weights(const RadialGrid& grid, int N);

/// (sum_i w_i |u_i|^p)^{1/p} with w from norm_weights.
double discrete_lp_norm(const std::vector<double>& u, const std::vector<double>& weights,
                        double p);

struct EvolutionTrace {
  std::vector<double> times;
  std::vector<double> lp_norms;
  std::vector<double> minima;
  std::vector<double> residuals;  // relative residual of each linear solve (0 at t=0)
  std::vector<double> final_state;
  double max_relative_growth = 0;  // max_k (n_{k+1} - n_k)/n_k
  double growth_factor = 1;        // max_k n_k / n_0
  bool supercritical = false;      // growth_factor > 10
};

/// Advances u0 (sampled on config.grid) to t_final. The number of steps is
/// round(t_final/dt); the norm exponent is params.p.
EvolutionTrace evolve(const EvolutionConfig& config, const RadialProfile& u0);

struct ContractivityRow {
  double c = 0;
  double r_min = 0;
  double max_relative_growth = 0;
  double growth_factor = 1;
  bool supercritical = false;
};

/// Runs evolve for every (c, r_min) pair on a log-uniform grid [r_min, r_max]
/// with M nodes, starting from exp(-r^2). Runs execute concurrently.
std::vector<ContractivityRow> contractivity_experiment(
    const Params& params, const std::vector<double>& c_values,
    const std::vector<double>& r_min_values, double r_max = 50.0, int M = 2000,
    double dt = 1e-4, double t_final = 0.1);

/// exp(-a r^2) evolved by u_t = D Laplacian in R^N.
double heat_gaussian(double r, double t, double a, double D, int N);

}  // namespace hardylab
