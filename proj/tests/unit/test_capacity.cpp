#include <doctest.h>

#include <cmath>

#include "../oracles.hpp"
#include "onofri/capacity.hpp"
#include "onofri/errors.hpp"

using namespace onofri;

TEST_SUITE("capacity") {
  TEST_CASE("annulus capacity and potential energy") {
    for (int n = 2; n <= 6; ++n) {
      for (auto [R, rho] : {std::pair{1.0, 0.5}, {3.0, 1e-3}, {2.0, 1.9}}) {
        for (double t : {0.25, 1.0, 2.0}) {
          CAPTURE(n);
          CAPTURE(R);
          CAPTURE(rho);
          const double closed = oracle::sphere(n) * std::pow(t, n) * std::pow(std::log(R / rho), 1.0 - n);
          const AnnulusSpec spec{n, R, rho, t};
          CHECK(annulus_capacity(spec) * std::pow(t, n) == doctest::Approx(closed).epsilon(1e-14));
          CHECK(capacity_potential_energy(spec, 1e-13) == doctest::Approx(closed).epsilon(1e-11));
        }
      }
    }
  }

  TEST_CASE("capacity potential") {
    const AnnulusSpec s{3, 2.0, 0.5, 3.0};
    CHECK(capacity_potential(s, 0.0) == 3.0);
    CHECK(capacity_potential(s, 0.5) == doctest::Approx(3.0));
    CHECK(capacity_potential(s, 2.0) == doctest::Approx(0.0));
    CHECK(capacity_potential(s, 1.0) == doctest::Approx(3.0 * std::log(2.0) / std::log(4.0)));
    CHECK(capacity_potential_slope(s, 0.25) == 0.0);
    CHECK(capacity_potential_slope(s, 1.0) == doctest::Approx(-3.0 / std::log(4.0)));
    CHECK_THROWS_AS(capacity_potential(s, 2.5), DomainError);
  }

  TEST_CASE("modulus") {
    CHECK(n_modulus(2, 2.0 * oracle::pi / std::log(2.0)) == doctest::Approx(std::log(2.0) / (2.0 * oracle::pi)));
    CHECK(n_modulus(3, 4.0) == doctest::Approx(0.5));
    CHECK(n_modulus(3, INFINITY) == 0.0);
  }

  TEST_CASE("ball capacity") {
    CHECK(ball_capacity(2, 1.0, 0.0, 0.5) == doctest::Approx(2.0 * oracle::pi / std::log(2.0)));
    CHECK_THROWS_AS(ball_capacity(2, 1.0, 0.1, 0.2), UnsupportedError);
  }

  TEST_CASE("modulus shift equals the Robin difference on concentric balls") {
    for (int n = 2; n <= 5; ++n) {
      CAPTURE(n);
      CHECK(modulus_shift_check(n, 1.0, 2.0, {0.5, 0.1, 1e-3}) <= 1e-12);
      CHECK(modulus_shift_check(n, 0.7, 0.7, {0.1}) <= 1e-14);
    }
  }

  TEST_CASE("invalid annuli") {
    CHECK_THROWS_AS(annulus_capacity(AnnulusSpec{2, 1.0, 1.0, 1.0}), DomainError);
    CHECK_THROWS_AS(annulus_capacity(AnnulusSpec{2, 1.0, 2.0, 1.0}), DomainError);
    CHECK_THROWS_AS(annulus_capacity(AnnulusSpec{1, 1.0, 0.5, 1.0}), DomainError);
    CHECK_THROWS_AS(capacity_potential_energy(AnnulusSpec{2, 1.0, 0.5, 1.0}, 0.0), DomainError);
  }
}
