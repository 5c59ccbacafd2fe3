#include <random>

#include <doctest.h>

#include "gblens/series.hpp"

using namespace gblens;

TEST_SUITE("series") {

  TEST_CASE("leading order") {
    CHECK(schwarzschild_leading(1.0, 100.0) == doctest::Approx(0.04).epsilon(1e-16));
    CHECK(schwarzschild_leading(0.0, 10.0) == 0.0);
  }

  TEST_CASE("riemannian spin correction") {
    CHECK(kerr_riemannian_correction(1.0, 0.1, 10.0) ==
          doctest::Approx(0.40002666666666667).epsilon(1e-15));
    CHECK(kerr_riemannian_correction(1.0, 0.0, 10.0) == schwarzschild_leading(1.0, 10.0));
    CHECK(kerr_riemannian_correction(1.0, -0.3, 50.0) ==
          kerr_riemannian_correction(1.0, 0.3, 50.0));
  }

  TEST_CASE("third-order series, schwarzschild limit") {
    CHECK(sereno_series(1.0, 0.0, 100.0, OrbitSense::Retrograde) ==
          doctest::Approx(0.041220763911762839).epsilon(1e-15));
    CHECK(sereno_series(1.0, 0.0, 100.0, OrbitSense::Prograde) ==
          sereno_series(1.0, 0.0, 100.0, OrbitSense::Retrograde));
  }

  TEST_CASE("sense splitting is linear in the spin") {
    const double split = sereno_series(1.0, 0.5, 100.0, OrbitSense::Retrograde) -
                         sereno_series(1.0, 0.5, 100.0, OrbitSense::Prograde);
    // 2a (4M/b^2 + 10 pi M^2/b^3)
    CHECK(split == doctest::Approx(4.3141592653589793e-4).epsilon(1e-14));
    CHECK(sereno_series(1.0, 0.5, 100.0, OrbitSense::Retrograde) >
          sereno_series(1.0, 0.5, 100.0, OrbitSense::Prograde));
  }

  TEST_CASE("spin-squared coefficient ratio is 4/3") {
    CHECK(spin2_coefficient_ratio(1.0, 0.7, 123.4) ==
          doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    std::mt19937 rng(4242u);
    std::uniform_real_distribution<double> mass(0.1, 10.0);
    std::uniform_real_distribution<double> spin(0.05, 1.0);
    std::uniform_real_distribution<double> impact(30.0, 5e4);
    for (int i = 0; i < 50; ++i) {
      const double M = mass(rng);
      CHECK(spin2_coefficient_ratio(M, spin(rng) * M, impact(rng) * M) ==
            doctest::Approx(4.0 / 3.0).epsilon(1e-10));
    }
  }

  TEST_CASE("deflection interface wrappers") {
    const DeflectionResult s = series_deflection(1.0, 0.5, 100.0, OrbitSense::Prograde);
    CHECK(s.method == DeflectionMethod::Series);
    CHECK(s.angle == sereno_series(1.0, 0.5, 100.0, OrbitSense::Prograde));
    CHECK(s.error_estimate > 0.0);
    CHECK(s.evaluations == 1);

    const DeflectionResult r = riemannian_series_deflection(1.0, 0.5, 100.0);
    CHECK(r.method == DeflectionMethod::RiemannianSeries);
    CHECK(r.angle == kerr_riemannian_correction(1.0, 0.5, 100.0));
    CHECK(r.error_estimate > 0.0);
  }

  TEST_CASE("series truncation scale bounds the distance to third order") {
    // drop the error estimate below the second-order term it claims to exceed
    const double second = (15.0 * pi / 4.0) * 1e-4;
    CHECK(series_deflection(1.0, 0.0, 100.0, OrbitSense::Retrograde).error_estimate < second);
  }

  TEST_CASE("input validation") {
    CHECK_THROWS_AS(schwarzschild_leading(1.0, 0.0), domain_error);
    CHECK_THROWS_AS(sereno_series(1.0, 0.5, -3.0, OrbitSense::Prograde), domain_error);
    CHECK_THROWS_AS(spin2_coefficient_ratio(1.0, 0.0, 100.0), domain_error);
    CHECK_THROWS_AS(spin2_coefficient_ratio(0.0, 0.5, 100.0), domain_error);
  }
}
