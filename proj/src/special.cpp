#include <hardylab/special.hpp>

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hardylab::special {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
};

// ln Gamma(x) for x >= 1/2.
double lanczos_log_gamma(double x) {
  x -= 1.0;
  double sum = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) sum += kLanczos[i] / (x + static_cast<double>(i));
  const double t = x + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (x + 0.5) * std::log(t) - t +
         std::log(sum);
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma requires x > 0");
  if (x == 1.0 || x == 2.0) return 0.0;
  if (x < 0.5) {
    // Gamma(x) = Gamma(1+x)/x keeps full relative accuracy as x -> 0.
    return lanczos_log_gamma(1.0 + x) - std::log(x);
  }
  return lanczos_log_gamma(x);
}

double rising_product(double x, int n) {
  double prod = 1.0;
  for (int i = 0; i < n; ++i) prod *= x + i;
  return prod;
}

double rising_product_log_gamma(double x, int n) {
  if (n == 0) return 1.0;
  return std::exp(log_gamma(x + n) - log_gamma(x));
}

double unit_sphere_area(int N) {
  const double half = 0.5 * N;
  return 2.0 * std::pow(std::numbers::pi, half) / std::exp(log_gamma(half));
}

}  // namespace hardylab::special
