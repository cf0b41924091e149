#include <hardylab/radial.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <hardylab/special.hpp>

namespace hardylab {

RadialGrid make_grid(double r_min, double r_max, int M, GridLayout layout) {
  if (!(r_min > 0.0) || !std::isfinite(r_min)) {
    throw std::invalid_argument("make_grid: r_min must be positive");
  }
  if (!(r_max > r_min) || !std::isfinite(r_max)) {
    throw std::invalid_argument("make_grid: r_max must exceed r_min");
  }
  if (M < 16) throw std::invalid_argument("make_grid: M must be at least 16");

  RadialGrid g;
  g.layout = layout;
  g.r_min = r_min;
  g.r_max = r_max;
  g.nodes.resize(static_cast<std::size_t>(M));
  const double last = M - 1;
  if (layout == GridLayout::log_uniform) {
    const double ratio = std::log(r_max / r_min);
    for (int i = 0; i < M; ++i) g.nodes[i] = r_min * std::exp(ratio * (i / last));
  } else {
    const double h = (r_max - r_min) / last;
    for (int i = 0; i < M; ++i) g.nodes[i] = r_min + h * i;
  }
  g.nodes.front() = r_min;
  g.nodes.back() = r_max;
  return g;
}

std::vector<double> fd_weights(double z, const std::vector<double>& x, int order) {
  const int n = static_cast<int>(x.size());
  std::vector<std::vector<double>> c(n, std::vector<double>(order + 1, 0.0));
  double c1 = 1.0, c4 = x[0] - z;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - z;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) {
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        }
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = c[i][order];
  return w;
}

namespace {

// Derivative values on the grid: 3-point centered interior; one-sided at the
// ends (3 points for the first derivative, 4 for the second).
std::vector<double> grid_derivative(const RadialGrid& grid, const std::vector<double>& v,
                                    int order) {
  const auto& x = grid.nodes;
  const std::size_t M = x.size();
  std::vector<double> d(M, 0.0);
  auto apply = [&](std::size_t at, std::size_t first, std::size_t count) {
    std::vector<double> xs(x.begin() + first, x.begin() + first + count);
    const auto w = fd_weights(x[at], xs, order);
    double s = 0;
    for (std::size_t k = 0; k < count; ++k) s += w[k] * v[first + k];
    d[at] = s;
  };
  const std::size_t edge = order == 1 ? 3 : 4;
  apply(0, 0, edge);
  for (std::size_t i = 1; i + 1 < M; ++i) apply(i, i - 1, 3);
  apply(M - 1, M - edge, edge);
  return d;
}

double interpolate(const RadialGrid& grid, const std::vector<double>& v, double r) {
  const auto& x = grid.nodes;
  if (r < x.front() || r > x.back()) return 0.0;
  auto it = std::upper_bound(x.begin(), x.end(), r);
  if (it == x.end()) return v.back();
  const std::size_t hi = static_cast<std::size_t>(it - x.begin());
  const std::size_t lo = hi - 1;
  const double t = (r - x[lo]) / (x[hi] - x[lo]);
  return (1.0 - t) * v[lo] + t * v[hi];
}

Jet jet_of(const PowerExp& f, double r) {
  const double rq = f.b != 0.0 ? std::pow(r, f.q) : 0.0;
  const double u = f.amplitude * std::pow(r, f.s) * std::exp(-f.b * rq);
  const double ell = f.s / r - f.b * f.q * rq / r;
  const double dell = -f.s / (r * r) - f.b * f.q * (f.q - 1.0) * rq / (r * r);
  return {u, ell * u, (dell + ell * ell) * u};
}

Jet jet_of(const PolyGaussian& f, double r) {
  double P = 0, dP = 0, d2P = 0;
  const std::size_t n = f.coeffs.size();
  for (std::size_t k = n; k-- > 0;) {
    d2P = d2P * r + 2.0 * dP;
    dP = dP * r + P;
    P = P * r + f.coeffs[k];
  }
  const double e = std::exp(-f.b * r * r);
  const double b = f.b;
  return {P * e, (dP - 2.0 * b * r * P) * e,
          (d2P - 4.0 * b * r * dP - 2.0 * b * P + 4.0 * b * b * r * r * P) * e};
}

Jet jet_of(const CutoffPower& f, double r) {
  const bool log_scale = f.scale == CutoffScale::logarithmic;
  const double t = ((log_scale ? std::log(r) : r) - f.center) / f.width;
  const double dt = log_scale ? 1.0 / (f.width * r) : 1.0 / f.width;
  const double d2t = log_scale ? -1.0 / (f.width * r * r) : 0.0;

  double chi = 1, dchi = 0, d2chi = 0;
  if (t >= 1.0) {
    return {};
  } else if (t > 0.0) {
    const double one_minus = 1.0 - t * t;
    chi = std::exp(1.0 - 1.0 / one_minus);
    if (chi == 0.0) return {};
    const double g1 = -2.0 * t / (one_minus * one_minus);
    const double g2 =
        -2.0 / (one_minus * one_minus) - 8.0 * t * t / (one_minus * one_minus * one_minus);
    dchi = chi * g1 * dt;
    d2chi = chi * ((g2 + g1 * g1) * dt * dt + g1 * d2t);
  }
  const double rs = std::pow(r, f.s);
  const double a = f.amplitude;
  return {a * rs * chi, a * (f.s * rs / r * chi + rs * dchi),
          a * (f.s * (f.s - 1.0) * rs / (r * r) * chi + 2.0 * f.s * rs / r * dchi +
               rs * d2chi)};
}

Jet jet_of(const Sampled& f, double r) {
  return {interpolate(f.grid, f.values, r), interpolate(f.grid, f.first, r),
          interpolate(f.grid, f.second, r)};
}

double derived_value(const Derived& f, double r) {
  const Jet j = f.base->jet(r);
  return f.order == 1 ? j.du : j.d2u;
}

Jet jet_of(const Derived& f, double r) {
  const double h = 1e-4 * r;
  const double vm = derived_value(f, r - h), v0 = derived_value(f, r),
               vp = derived_value(f, r + h);
  return {v0, (vp - vm) / (2.0 * h), (vp - 2.0 * v0 + vm) / (h * h)};
}

}  // namespace

RadialProfile::RadialProfile(Family family) : family_(std::move(family)) {}

RadialProfile RadialProfile::zero() { return RadialProfile(PowerExp{0.0, 0.0, 0.0, 1.0}); }

RadialProfile RadialProfile::gaussian(double a, double amplitude) {
  return RadialProfile(PowerExp{amplitude, 0.0, a, 2.0});
}

RadialProfile RadialProfile::power_exp(double s, double b) {
  return RadialProfile(PowerExp{1.0, s, b, 1.0});
}

RadialProfile RadialProfile::power_exp_family(double beta, double p) {
  return RadialProfile(PowerExp{1.0, beta, 1.0 / p, 1.0});
}

RadialProfile RadialProfile::poly_gaussian(std::vector<double> coeffs, double b) {
  return RadialProfile(PolyGaussian{std::move(coeffs), b});
}

RadialProfile RadialProfile::cutoff_power(double s, double center, double width,
                                          CutoffScale scale) {
  if (!(width > 0.0)) throw std::invalid_argument("cutoff width must be positive");
  return RadialProfile(CutoffPower{1.0, s, center, width, scale});
}

RadialProfile RadialProfile::sampled(const RadialGrid& grid, std::vector<double> values) {
  if (grid.size() < 16) throw std::invalid_argument("sampled profile needs M >= 16");
  if (values.size() != grid.size()) {
    throw std::invalid_argument("sampled profile: value count does not match grid");
  }
  Sampled s;
  s.grid = grid;
  s.first = grid_derivative(grid, values, 1);
  s.second = grid_derivative(grid, values, 2);
  s.values = std::move(values);
  return RadialProfile(std::move(s));
}

Jet RadialProfile::jet(double r) const {
  return std::visit([r](const auto& f) { return jet_of(f, r); }, family_);
}

RadialProfile RadialProfile::derivative(int order) const {
  if (order != 1 && order != 2) throw std::invalid_argument("derivative order must be 1 or 2");
  if (const auto* s = samples()) {
    Sampled d;
    d.grid = s->grid;
    d.values = order == 1 ? s->first : s->second;
    d.first = grid_derivative(d.grid, d.values, 1);
    d.second = grid_derivative(d.grid, d.values, 2);
    return RadialProfile(std::move(d));
  }
  return RadialProfile(Derived{std::make_shared<const RadialProfile>(*this), order});
}

RadialProfile RadialProfile::scaled(double lambda) const {
  return std::visit(
      [&](const auto& f) -> RadialProfile {
        using T = std::decay_t<decltype(f)>;
        T g = f;
        if constexpr (std::is_same_v<T, PowerExp> || std::is_same_v<T, CutoffPower>) {
          g.amplitude *= lambda;
        } else if constexpr (std::is_same_v<T, PolyGaussian>) {
          for (double& c : g.coeffs) c *= lambda;
        } else if constexpr (std::is_same_v<T, Sampled>) {
          for (auto* v : {&g.values, &g.first, &g.second}) {
            for (double& x : *v) x *= lambda;
          }
        } else {
          g.base = std::make_shared<const RadialProfile>(f.base->scaled(lambda));
        }
        return RadialProfile(std::move(g));
      },
      family_);
}

std::vector<double> RadialProfile::breakpoints() const {
  if (const auto* c = std::get_if<CutoffPower>(&family_)) {
    if (c->scale == CutoffScale::logarithmic) {
      return {std::exp(c->center), std::exp(c->center + c->width)};
    }
    return {c->center, c->center + c->width};
  }
  if (const auto* d = std::get_if<Derived>(&family_)) return d->base->breakpoints();
  return {};
}

std::string RadialProfile::descriptor() const {
  std::ostringstream os;
  os.precision(6);
  std::visit(
      [&](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, PowerExp>) {
          os << f.amplitude << "*r^" << f.s << "*exp(-" << f.b << "*r^" << f.q << ")";
        } else if constexpr (std::is_same_v<T, PolyGaussian>) {
          os << "poly[";
          for (std::size_t i = 0; i < f.coeffs.size(); ++i) os << (i ? "," : "") << f.coeffs[i];
          os << "]*exp(-" << f.b << "*r^2)";
        } else if constexpr (std::is_same_v<T, CutoffPower>) {
          os << f.amplitude << "*r^" << f.s << "*cutoff_"
             << (f.scale == CutoffScale::logarithmic ? "log" : "lin") << "(" << f.center
             << "," << f.width << ")";
        } else if constexpr (std::is_same_v<T, Sampled>) {
          os << "sampled[" << f.grid.size() << "]";
        } else {
          os << "d" << f.order << "(" << f.base->descriptor() << ")";
        }
      },
      family_);
  return os.str();
}

QuadratureOptions quadrature_options_for(const RadialProfile& u, QuadratureOptions base) {
  for (double b : u.breakpoints()) base.breakpoints.push_back(b);
  return base;
}

QuadratureResult lp_integral_weighted(const RadialProfile& u, double p, int N, double w,
                                      const QuadratureOptions& options) {
  const double sigma = special::unit_sphere_area(N);
  if (const auto* s = u.samples()) {
    std::vector<double> f(s->grid.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double r = s->grid.nodes[i];
      f[i] = sigma * std::pow(std::abs(s->values[i]), p) * std::pow(r, w + N - 1);
    }
    return integrate_sampled(s->grid.nodes, f);
  }
  auto integrand = [&](double r) {
    const double v = std::abs(u.value(r));
    if (v == 0.0) return 0.0;
    return sigma * std::pow(v, p) * std::pow(r, w + N - 1);
  };
  return integrate_radial(integrand, quadrature_options_for(u, options));
}

double lp_norm_weighted(const RadialProfile& u, double p, int N, double w,
                        const QuadratureOptions& options) {
  return std::pow(lp_integral_weighted(u, p, N, w, options).value, 1.0 / p);
}

}  // namespace hardylab
