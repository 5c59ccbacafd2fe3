#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

// Optical 2-metrics for equatorial light bending in geometrized units (c = G = 1).
// Coordinates are (r, phi); all lengths are in the same unit as the mass M.
namespace gblens {

inline constexpr double pi = 3.14159265358979323846;

// 648000 / pi, converts radians to arcseconds.
inline constexpr double arcsec_per_radian = 206264.80624709636;

enum class MetricId {
  Flat,                 // E = 1, G = r^2
  SchwarzschildOptical, // constant-t slice of ds^2 = 0, r > 2M
  KerrReducedOptical,   // equatorial Riemannian part of the Kerr optical geometry
};

struct SpacetimeParams {
  double mass = 0.0; // M >= 0
  double spin = 0.0; // a, may be negative (formulas below are even in a)
};

struct Point {
  double r = 0.0;
  double phi = 0.0;
};

// First fundamental form ds^2 = E dr^2 + 2F dr dphi + G dphi^2.
struct MetricComponents {
  double E = 0.0;
  double F = 0.0;
  double G = 0.0;

  double det() const { return E * G - F * F; }
};

struct MetricDerivatives {
  double E_r = 0.0, E_phi = 0.0;
  double F_r = 0.0, F_phi = 0.0;
  double G_r = 0.0, G_phi = 0.0;
  double E_rr = 0.0, E_phiphi = 0.0, E_rphi = 0.0;
  double G_rr = 0.0, G_phiphi = 0.0, G_rphi = 0.0;
};

enum class DeflectionMethod {
  GaussBonnet,     // curvature integral over the lens region
  Shooting,        // numerically integrated null geodesic
  Series,          // third-order weak-field series
  RiemannianSeries // closed-form 4M/b (1 + 2a^2/(3b^2)) reference
};

enum class OrbitSense : int {
  Retrograde = +1, // photon angular momentum opposite the spin
  Prograde = -1,
};

struct DeflectionResult {
  double angle = 0.0;          // radians
  DeflectionMethod method = DeflectionMethod::GaussBonnet;
  double error_estimate = 0.0; // radians, always >= 0
  long evaluations = 0;        // integrand or RHS evaluations spent
};

// Point outside the metric's domain (r <= 2M, b out of range, bad region, ...).
class domain_error : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// Ray fell to the capture radius instead of escaping.
class capture_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Quadrature or step control could not meet the requested tolerance.
class tolerance_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Iteration budget exhausted before a well-defined answer emerged.
class convergence_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace gblens
