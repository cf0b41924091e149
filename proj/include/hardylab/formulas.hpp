#pragma once

// Closed-form constants as templates over the scalar type, so the same
// expressions are evaluated in binary floating point and in exact rationals.

namespace hardylab::formulas {

template <class T>
T gamma(const T& N, const T& p, const T& alpha) {
  T a = (N + alpha - T(2)) / p;
  return a * a;
}

template <class T>
T beta_zero(const T& N, const T& p) {
  return N * (p - T(1)) * (N - T(2) * p) / (p * p);
}

template <class T>
T beta_alpha(const T& N, const T& p, const T& alpha) {
  return (N * p - N - alpha) * (N + alpha - T(2) * p) / (p * p);
}

template <class T>
T delta_alpha(const T& N, const T& p, const T& alpha) {
  return (p - T(1)) * (T(4) * alpha - T(4) - T(2) * N * p + T(4) * N) / (p * p);
}

template <class T>
T k0(const T& N, const T& p, const T& alpha) {
  T s = N + alpha - T(2);
  return (s / p) * (((p - T(1)) / p) * s - alpha);
}

template <class T>
T k1(const T& N, const T& p, const T& alpha) {
  return T(4) * alpha * (p - T(1)) / (p * p) -
         (p - T(1)) * (T(4) + T(2) * N * p - T(4) * N) / (p * p);
}

// Coefficient of |x|^{alpha-2} in the shifted tilde estimate.
template <class T>
T tilde_shift_coefficient(const T& N, const T& p, const T& alpha) {
  return ((N + alpha - T(2)) / p) * ((p - T(1)) * (N - T(2)) - alpha) / p;
}

// eta* = alpha(N+alpha-2)/p - (N+alpha-2)^2/(p p'), p' = p/(p-1).
template <class T>
T eta_threshold(const T& N, const T& p, const T& alpha) {
  T s = N + alpha - T(2);
  T dual = p / (p - T(1));
  return alpha * s / p - s * s / (p * dual);
}

}  // namespace hardylab::formulas
