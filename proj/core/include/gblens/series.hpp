#pragma once

#include <cmath>

#include "gblens/types.hpp"

// Weak-field deflection references for impact parameter b >> M.
namespace gblens {

namespace detail {
inline void require_b(double b) {
  if (!(b > 0.0) || !std::isfinite(b))
    throw domain_error("impact parameter b must be positive and finite");
}
} // namespace detail

// 4M/b
inline double schwarzschild_leading(double M, double b) {
  detail::require_b(b);
  return 4.0 * M / b;
}

// Deflection of the reduced (Riemannian) Kerr optical metric,
// 4M/b (1 + 2a^2 / (3b^2)) + O(M^2/b^2). Spin-even: no frame-dragging term.
inline double kerr_riemannian_correction(double M, double a, double b) {
  detail::require_b(b);
  return 4.0 * M / b * (1.0 + 2.0 * a * a / (3.0 * b * b));
}

// Equatorial Kerr series through third order,
//   ||delta|| = [4M/b + 15pi/4 (M/b)^2 + 128/3 (M/b)^3]
//             + S a [4M/b^2 + 10pi M^2/b^3]
//             + a^2 [2M/b^3],
// with S = +1 retrograde, -1 prograde.
inline double sereno_series(double M, double a, double b, OrbitSense sense) {
  detail::require_b(b);
  const double S = static_cast<double>(sense);
  const double m1 = M / b;
  const double schw = 4.0 * m1 + (15.0 * pi / 4.0) * m1 * m1 + (128.0 / 3.0) * m1 * m1 * m1;
  const double spin1 = S * a * (4.0 * M / (b * b) + 10.0 * pi * M * M / (b * b * b));
  const double spin2 = a * a * 2.0 * M / (b * b * b);
  return schw + spin1 + spin2;
}

// Ratio of the a^2/b^3 coefficient of the reduced-metric closed form (8M/3)
// to that of the full series (2M): 4/3. Both expressions are polynomial in a,
// so the coefficients are read off the formulas above; extracting them by
// differencing whole-series values would only add cancellation noise.
inline double spin2_coefficient_ratio(double M, double a, double b) {
  detail::require_b(b);
  if (!(M > 0.0) || a == 0.0)
    throw domain_error("spin-squared coefficient ratio needs M > 0 and a != 0");
  const double reduced = schwarzschild_leading(M, b) * (2.0 / 3.0) * b;
  const double full = 2.0 * M;
  return reduced / full;
}

// Series result in the common deflection interface. The error estimate is the
// truncation scale: the last retained order damped by one more power of M/b.
inline DeflectionResult series_deflection(double M, double a, double b, OrbitSense sense) {
  detail::require_b(b);
  const double third = ((128.0 / 3.0) * M * M * M + 10.0 * pi * M * M * std::abs(a) +
                        2.0 * M * a * a) /
                       (b * b * b);
  DeflectionResult out;
  out.angle = sereno_series(M, a, b, sense);
  out.method = DeflectionMethod::Series;
  out.error_estimate = third * (M / b);
  out.evaluations = 1;
  return out;
}

inline DeflectionResult riemannian_series_deflection(double M, double a, double b) {
  detail::require_b(b);
  DeflectionResult out;
  out.angle = kerr_riemannian_correction(M, a, b);
  out.method = DeflectionMethod::RiemannianSeries;
  // Leading omitted term is 15pi/4 (M/b)^2.
  out.error_estimate = (15.0 * pi / 4.0) * (M / b) * (M / b);
  out.evaluations = 1;
  return out;
}

} // namespace gblens
