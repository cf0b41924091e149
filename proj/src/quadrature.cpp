#include <hardylab/quadrature.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>

namespace hardylab {

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes (and the center).
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b;
  double value;
  double error;
  double abs_value;
  int depth;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gauss_kronrod(const std::function<double(double)>& f, double a, double b,
                      int depth, long& evals) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  double abs_sum = std::abs(fc) * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx), f2 = f(center + dx);
    kronrod += kWgk[j] * (f1 + f2);
    abs_sum += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  evals += 15;
  Segment s{a, b, kronrod * half, std::abs((kronrod - gauss) * half),
            abs_sum * std::abs(half), depth};
  if (!std::isfinite(s.value)) s.error = std::numeric_limits<double>::infinity();
  return s;
}

struct PanelResult {
  double value = 0;
  double error = 0;
  double abs_value = 0;
};

PanelResult adaptive_panel(const std::function<double(double)>& f, double a, double b,
                           double abs_tol, double rel_tol, int max_levels, long& evals) {
  std::priority_queue<Segment> heap;
  Segment first = gauss_kronrod(f, a, b, 0, evals);
  double value = first.value, error = first.error, abs_value = first.abs_value;
  heap.push(first);
  constexpr int kMaxSegments = 4000;
  while (error > std::max(abs_tol, rel_tol * abs_value)) {
    Segment worst = heap.top();
    if (worst.depth >= max_levels || static_cast<int>(heap.size()) >= kMaxSegments ||
        !std::isfinite(worst.value)) {
      throw QuadratureError("quadrature failure: no convergence on [" + std::to_string(a) +
                                ", " + std::to_string(b) + "]",
                            {value, error, evals});
    }
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Segment left = gauss_kronrod(f, worst.a, mid, worst.depth + 1, evals);
    Segment right = gauss_kronrod(f, mid, worst.b, worst.depth + 1, evals);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    abs_value += left.abs_value + right.abs_value - worst.abs_value;
    heap.push(left);
    heap.push(right);
  }
  // Recompute sums to shed accumulated cancellation in the running totals.
  PanelResult out;
  while (!heap.empty()) {
    out.value += heap.top().value;
    out.error += heap.top().error;
    out.abs_value += heap.top().abs_value;
    heap.pop();
  }
  return out;
}

}  // namespace

QuadratureResult integrate_interval(const std::function<double(double)>& f, double a,
                                    double b, double abs_tol, double rel_tol,
                                    int max_levels) {
  long evals = 0;
  const PanelResult r = adaptive_panel(f, a, b, abs_tol, rel_tol, max_levels, evals);
  return {r.value, r.error, evals};
}

QuadratureResult integrate_radial(const std::function<double(double)>& f,
                                  const QuadratureOptions& options) {
  if (!(options.r_min > 0.0)) {
    throw std::invalid_argument("integrate_radial requires r_min > 0");
  }
  if (options.r_max && !(*options.r_max > options.r_min)) {
    throw std::invalid_argument("integrate_radial requires r_max > r_min");
  }

  // Panel tolerances are a fraction of the global one; the Kronrod error
  // estimate is pessimistic, so the sum stays well inside the target.
  const double panel_abs_tol = options.abs_tol / 16.0;
  long evals = 0;
  double total = 0, total_err = 0, total_abs = 0;

  auto add_panel = [&](double a, double b) {
    if (!(b > a)) return PanelResult{};
    try {
      const PanelResult r =
          adaptive_panel(f, a, b, panel_abs_tol, options.rel_tol, options.max_levels, evals);
      total += r.value;
      total_err += r.error;
      total_abs += r.abs_value;
      return r;
    } catch (const QuadratureError& e) {
      throw QuadratureError(e.what(), {total + e.partial().value,
                                       total_err + e.partial().abs_error_estimate, evals});
    }
  };

  std::vector<double> kinks;
  for (double x : options.breakpoints) {
    if (x > options.r_min && (!options.r_max || x < *options.r_max)) kinks.push_back(x);
  }
  std::sort(kinks.begin(), kinks.end());

  // Dyadic panels, each split at any kink it contains.
  auto add_split_panel = [&](double a, double b) {
    PanelResult sum;
    double lo = a;
    for (double k : kinks) {
      if (k > lo && k < b) {
        const PanelResult r = add_panel(lo, k);
        sum.value += r.value; sum.error += r.error; sum.abs_value += r.abs_value;
        lo = k;
      }
    }
    const PanelResult r = add_panel(lo, b);
    sum.value += r.value; sum.error += r.error; sum.abs_value += r.abs_value;
    return sum;
  };

  double r = options.r_min;
  if (options.r_max) {
    while (r < *options.r_max) {
      const double next = std::min(2.0 * r, *options.r_max);
      add_split_panel(r, next);
      r = next;
    }
  } else {
    constexpr double kAlwaysCover = 64.0;
    constexpr double kHardLimit = 1e8;
    int quiet_panels = 0;
    while (true) {
      const PanelResult pr = add_split_panel(r, 2.0 * r);
      r *= 2.0;
      const bool quiet = pr.abs_value + pr.error <= 1e-14 * total_abs;
      quiet_panels = quiet ? quiet_panels + 1 : 0;
      if (r >= kAlwaysCover && (quiet_panels >= 2 || total_abs == 0.0)) {
        if (total_abs != 0.0 || r >= kHardLimit) break;
      }
      if (r >= kHardLimit) {
        if (quiet_panels >= 1) break;
        throw QuadratureError("quadrature failure: integrand tail not negligible at r = 1e8",
                              {total, total_err, evals});
      }
    }
  }

  if (options.origin_tail) {
    // Walk toward the origin until f behaves as C r^k on (0, lo], then add
    // the closed-form tail f(lo) lo / (k + 1).
    double lo = options.r_min;
    constexpr int kMaxHalvings = 90;
    bool closed = false;
    for (int h = 0; h < kMaxHalvings && !closed; ++h) {
      const double f0 = f(lo), f1 = f(0.5 * lo), f2 = f(0.25 * lo);
      evals += 3;
      if (f0 == 0.0 && f1 == 0.0 && f2 == 0.0) {
        closed = true;
        break;
      }
      const bool clean = std::isfinite(f0) && std::isfinite(f1) && std::isfinite(f2) &&
                         f0 != 0.0 && f1 != 0.0 && f2 != 0.0 &&
                         std::signbit(f0) == std::signbit(f1) &&
                         std::signbit(f1) == std::signbit(f2);
      if (clean) {
        const double k_near = std::log2(f0 / f1);
        const double k_far = std::log2(f1 / f2);
        if (k_near > -1.0 && k_far > -1.0) {
          const double tail_near = f0 * lo / (k_near + 1.0);
          const double tail_far = f0 * lo / (k_far + 1.0);
          const double err = std::abs(tail_near - tail_far);
          const double tol =
              0.1 * std::max(panel_abs_tol, options.rel_tol * (total_abs + std::abs(tail_near)));
          if (err <= tol || h == kMaxHalvings - 1) {
            total += tail_near;
            total_err += err;
            total_abs += std::abs(tail_near);
            closed = true;
            break;
          }
        } else if (h == kMaxHalvings - 1 || lo < 1e-200) {
          throw QuadratureError("quadrature failure: integrand not integrable at the origin",
                                {total, total_err, evals});
        }
      }
      add_panel(0.5 * lo, lo);
      lo *= 0.5;
    }
    if (!closed) {
      throw QuadratureError("quadrature failure: origin tail did not settle",
                            {total, total_err, evals});
    }
  }

  const double target = std::max(options.abs_tol, options.rel_tol * total_abs);
  if (!std::isfinite(total) || total_err > 10.0 * target) {
    throw QuadratureError("quadrature failure: error estimate above tolerance",
                          {total, total_err, evals});
  }
  return {total, total_err, evals};
}

QuadratureResult integrate_sampled(std::span<const double> nodes,
                                   std::span<const double> values) {
  if (nodes.size() != values.size() || nodes.size() < 2) {
    throw std::invalid_argument("integrate_sampled requires matching node/value arrays");
  }
  const std::size_t n = nodes.size();
  double fine = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    fine += 0.5 * (nodes[i + 1] - nodes[i]) * (values[i] + values[i + 1]);
  }
  double coarse = 0;
  std::size_t i = 0;
  for (; i + 2 < n; i += 2) {
    coarse += 0.5 * (nodes[i + 2] - nodes[i]) * (values[i] + values[i + 2]);
  }
  for (; i + 1 < n; ++i) {
    coarse += 0.5 * (nodes[i + 1] - nodes[i]) * (values[i] + values[i + 1]);
  }
  return {fine, std::abs(fine - coarse) / 3.0, static_cast<long>(n)};
}

}  // namespace hardylab
