#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include <hardylab/quadrature.hpp>

namespace hardylab {

enum class GridLayout { log_uniform, uniform };

struct RadialGrid {
  std::vector<double> nodes;
  GridLayout layout = GridLayout::log_uniform;
  double r_min = 0;
  double r_max = 0;

  std::size_t size() const { return nodes.size(); }
};

/// Throws std::invalid_argument unless 0 < r_min < r_max and M >= 16.
RadialGrid make_grid(double r_min, double r_max, int M, GridLayout layout);

/// Value and first two derivatives at a point.
struct Jet {
  double u = 0;
  double du = 0;
  double d2u = 0;
};

/// amplitude * r^s * exp(-b r^q)
struct PowerExp {
  double amplitude = 1;
  double s = 0;
  double b = 0;
  double q = 1;
};

/// P(r) exp(-b r^2), P given by ascending coefficients.
struct PolyGaussian {
  std::vector<double> coeffs;
  double b = 1;
};

enum class CutoffScale { linear, logarithmic };

/// amplitude * r^s * chi(t), chi(t) = 1 for t <= 0,
/// exp(1 - 1/(1 - t^2)) for 0 < t < 1, 0 for t >= 1.
/// Linear scale: t = (r - center)/width. Logarithmic: t = (ln r - center)/width.
struct CutoffPower {
  double amplitude = 1;
  double s = 0;
  double center = 1;
  double width = 1;
  CutoffScale scale = CutoffScale::linear;
};

/// Values on a grid; derivatives by finite-difference weights, linear
/// interpolation between nodes, zero outside [r_min, r_max].
struct Sampled {
  RadialGrid grid;
  std::vector<double> values;
  std::vector<double> first;
  std::vector<double> second;
};

class RadialProfile;

/// k-th derivative of an analytic profile (k = 1, 2). Values are closed
/// form; derivatives of the result use central differences.
struct Derived {
  std::shared_ptr<const RadialProfile> base;
  int order = 1;
};

class RadialProfile {
 public:
  using Family = std::variant<PowerExp, PolyGaussian, CutoffPower, Sampled, Derived>;

  RadialProfile() : family_(PowerExp{0.0, 0.0, 0.0, 1.0}) {}
  explicit RadialProfile(Family family);

  static RadialProfile zero();
  /// amplitude * exp(-a r^2)
  static RadialProfile gaussian(double a, double amplitude = 1.0);
  /// r^s exp(-b r)
  static RadialProfile power_exp(double s, double b);
  /// r^beta exp(-r/p)
  static RadialProfile power_exp_family(double beta, double p);
  static RadialProfile poly_gaussian(std::vector<double> coeffs, double b);
  static RadialProfile cutoff_power(double s, double center, double width,
                                    CutoffScale scale);
  /// Throws std::invalid_argument if sizes differ or the grid has < 16 nodes.
  static RadialProfile sampled(const RadialGrid& grid, std::vector<double> values);

  Jet jet(double r) const;
  double value(double r) const { return jet(r).u; }

  /// order must be 1 or 2.
  RadialProfile derivative(int order) const;
  RadialProfile scaled(double lambda) const;

  bool is_sampled() const { return std::holds_alternative<Sampled>(family_); }
  const Sampled* samples() const { return std::get_if<Sampled>(&family_); }
  const Family& family() const { return family_; }

  /// Points where the profile is not smooth (cutoff edges).
  std::vector<double> breakpoints() const;
  std::string descriptor() const;

 private:
  Family family_;
};

/// Radial Laplacian u'' + (N-1) u'/r.
inline double radial_laplacian(const Jet& j, double r, int N) {
  return j.d2u + (N - 1) * j.du / r;
}

/// Quadrature options carrying the profile's breakpoints.
QuadratureOptions quadrature_options_for(const RadialProfile& u,
                                         QuadratureOptions base = {});

/// (sigma_{N-1} * int |u|^p r^{w} r^{N-1} dr)^{1/p}.
double lp_norm_weighted(const RadialProfile& u, double p, int N, double w,
                        const QuadratureOptions& options = {});

/// Same, also returning the quadrature error of the inner integral.
QuadratureResult lp_integral_weighted(const RadialProfile& u, double p, int N, double w,
                                      const QuadratureOptions& options = {});

/// Finite-difference weights (Fornberg) for derivative `order` at z using
/// the given nodes.
std::vector<double> fd_weights(double z, const std::vector<double>& x, int order);

}  // namespace hardylab
