#include <doctest.h>

#include "../oracles.hpp"
#include "onofri/constants.hpp"
#include "onofri/errors.hpp"

using namespace onofri;

TEST_SUITE("constants") {
  TEST_CASE("sphere measure matches the tabulated values") {
    for (int n = 2; n <= 10; ++n) {
      CAPTURE(n);
      CHECK(sphere_measure(n) == doctest::Approx(oracle::sphere(n)).epsilon(1e-15));
    }
  }

  TEST_CASE("dimension bundle") {
    for (int n = 2; n <= 10; ++n) {
      CAPTURE(n);
      const DimensionConstants c = bundle(n);
      const double w = oracle::sphere(n);
      CHECK(c.omega == doctest::Approx(w).epsilon(1e-15));
      CHECK(c.alpha == doctest::Approx(n * std::pow(w, 1.0 / (n - 1))).epsilon(1e-14));
      CHECK(c.c_crit == doctest::Approx(oracle::c_crit(n)).epsilon(1e-14));
      CHECK(c.beta == doctest::Approx(oracle::beta(n)).epsilon(1e-15));
      // one bubble carries exactly the critical mass
      CHECK(c.quant_mass == doctest::Approx(c.c_crit).epsilon(1e-13));
      CHECK(c.sharp == doctest::Approx(oracle::sharp(n)).epsilon(1e-14));
    }
    CHECK(bundle(2).c_crit == doctest::Approx(8.0 * oracle::pi));
    CHECK(bundle(3).c_crit == doctest::Approx(81.0 * oracle::pi));
  }

  TEST_CASE("harmonic numbers") {
    CHECK(harmonic_number(0) == 0.0);
    CHECK(harmonic_number(1) == 1.0);
    CHECK(harmonic_number(4) == doctest::Approx(25.0 / 12.0));
  }

  TEST_CASE("sharp constant, both routes") {
    CHECK(sharp_constant_closed_form(2) == doctest::Approx(oracle::sharp_disk()).epsilon(1e-15));
    const double expected[] = {-2.1447298858494, -2.9324119583, -3.4296459245, -3.7441844456,
                               -3.9257635217};
    for (int n = 2; n <= 6; ++n) {
      CAPTURE(n);
      const SharpConstant s = sharp_constant(n, 1e-10);
      CHECK(std::abs(s.by_quadrature - s.by_closed_form) <= 1e-10);
      CHECK(std::abs(s.by_closed_form - expected[n - 2]) <= 1e-9);
    }
  }

  TEST_CASE("bubble value and slope") {
    for (int n : {2, 3, 5}) {
      for (double r : {0.0, 0.3, 1.0, 7.0}) {
        CHECK(bubble_value(n, r) == doctest::Approx(oracle::bubble(n, r)).epsilon(1e-14));
        const double h = 1e-6 * std::max(1.0, r);
        if (r > 0.0) {
          const double fd = (oracle::bubble(n, r + h) - oracle::bubble(n, r - h)) / (2.0 * h);
          CHECK(bubble_slope(n, r) == doctest::Approx(fd).epsilon(1e-7));
        }
      }
    }
    CHECK(bubble_slope(3, 0.0) == 0.0);
  }

  TEST_CASE("bubble mass is the critical mass") {
    for (int n = 2; n <= 5; ++n) {
      CAPTURE(n);
      CHECK(std::abs(bubble_mass(n, 1e-8) - oracle::c_crit(n)) <= 1e-8);
    }
  }

  TEST_CASE("tolerances below roundoff at the integral's magnitude are reported") {
    // C_5 is about 4e4, so 1e-13 absolute is below one ulp
    CHECK_THROWS_AS(bubble_mass(5, 1e-13), QuadratureError);
  }

  TEST_CASE("dimension below 2 is a domain error") {
    CHECK_THROWS_AS(bundle(1), DomainError);
    CHECK_THROWS_AS(sharp_constant(0, 1e-10), DomainError);
    CHECK_THROWS_AS(require_dimension(-3), DomainError);
  }
}
