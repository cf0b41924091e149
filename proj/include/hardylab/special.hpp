#pragma once

namespace hardylab::special {

/// ln Gamma(x) for x > 0 (Lanczos, g = 7, 9 terms; reflection below 1/2).
/// Thread-safe: no global sign state.
double log_gamma(double x);

/// Gamma(x + n) / Gamma(x) = x (x+1) ... (x+n-1), by direct multiplication.
double rising_product(double x, int n);

/// Gamma(x + n) / Gamma(x) via exp(lnGamma(x+n) - lnGamma(x)).
double rising_product_log_gamma(double x, int n);

/// Surface measure of the unit sphere in R^N, 2 pi^{N/2} / Gamma(N/2).
double unit_sphere_area(int N);

}  // namespace hardylab::special
