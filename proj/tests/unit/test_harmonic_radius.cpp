#include <doctest.h>

#include <cmath>
#include <complex>

#include "../oracles.hpp"
#include "onofri/errors.hpp"
#include "onofri/harmonic_radius.hpp"

using namespace onofri;

namespace {

// Regular part of the disk Green function at its pole, from the Green
// function itself: G(x, y) - (1/2 pi) ln(1/|x - y|) as y -> x.
double disk_regular_part(double a) {
  const std::complex<double> x{a, 0.0};
  const double h = 1e-7;
  const std::complex<double> y = x + std::complex<double>{0.0, h};
  return oracle::disk_green(x, y) - std::log(1.0 / h) / (2.0 * oracle::pi);
}

}  // namespace

TEST_SUITE("harmonic_radius") {
  TEST_CASE("disk: Robin function from the Green function") {
    for (double a : {0.0, 0.25, 0.5, 0.9}) {
      CAPTURE(a);
      const RobinData r = harmonic_radius_disk(a);
      const double coeff = 1.0 / (2.0 * oracle::pi);
      CHECK(r.green_singular_coeff == doctest::Approx(coeff));
      const double H = disk_regular_part(a);
      CHECK(std::abs(r.robin + H) <= 1e-9);
      CHECK(r.harmonic_radius == doctest::Approx(std::exp(H / coeff)).epsilon(1e-8));
    }
    CHECK(harmonic_radius_disk(0.25).harmonic_radius == 0.9375);
    CHECK(harmonic_radius_disk(0.5).harmonic_radius == 0.75);
    CHECK(std::abs(harmonic_radius_disk(0.9).harmonic_radius - 0.19) <= 4e-16);
  }

  TEST_CASE("ball center") {
    for (int n : {2, 3, 5}) {
      for (double R : {0.5, 1.0, 3.0}) {
        const RobinData r = robin_ball_center(n, R);
        CHECK(r.harmonic_radius == doctest::Approx(R).epsilon(1e-15));
        CHECK(r.green_singular_coeff ==
              doctest::Approx(1.0 / std::pow(oracle::sphere(n), 1.0 / (n - 1))));
        CHECK(concentration_level(n, DomainSpec::ball(n, R)) ==
              doctest::Approx(oracle::sharp(n) - n * std::log(R)).epsilon(1e-14));
      }
    }
    // the disk at offset 0 is the unit ball
    CHECK(robin_data(DomainSpec::disk(0.0)).robin == doctest::Approx(robin_ball_center(2, 1.0).robin));
  }

  TEST_CASE("concentration level of the disk") {
    const double level = concentration_level(2, DomainSpec::disk(0.5));
    CHECK(std::abs(level - (oracle::sharp_disk() - 2.0 * std::log(0.75))) <= 1e-12);
    CHECK_THROWS_AS(concentration_level(3, DomainSpec::disk(0.5)), DomainError);
  }

  TEST_CASE("existence criterion") {
    const double bound = oracle::sharp(3) - 3.0 * 0.1;
    CHECK(existence_criterion(3, bound - 1e-3, 0.1) == Verdict::achieved);
    CHECK(existence_criterion(3, bound, 0.1) == Verdict::boundary_case);
    CHECK(existence_criterion(3, bound + 1e-13, 0.1) == Verdict::boundary_case);
    CHECK_THROWS_AS(existence_criterion(3, bound + 1e-3, 0.1), DomainError);
    CHECK(std::string(to_string(Verdict::achieved)) == "achieved");
    CHECK(std::string(to_string(Verdict::boundary_case)) == "boundary_case");
  }

  TEST_CASE("domain validation") {
    CHECK_THROWS_AS(robin_data(DomainSpec::disk(1.0)), DomainError);
    CHECK_THROWS_AS(robin_data(DomainSpec::disk(-0.1)), DomainError);
    CHECK_THROWS_AS(robin_data(DomainSpec::ball(2, 0.0)), DomainError);
  }
}

TEST_SUITE("transplant") {
  // U(rho) = 1 - rho^2/r^2 on B(0, r), r = 1 - a^2:
  //   int |grad U|^2 = 2 pi, int e^U = pi r^2 (e - 1),
  //   int_disk e^u = 2 pi (1-a^2)^2 int_0^1 s e^{U(r s)} (1 + a^2 s^2)/(1 - a^2 s^2)^3 ds
  // (change of variables through the disk automorphism, angular average of
  // |1 + a z|^{-4} done in closed form).
  TEST_CASE("quadratic profile") {
    for (double a : {0.0, 0.3, 0.5}) {
      CAPTURE(a);
      const double r = 1.0 - a * a;
      RadialProfile U = sample_profile(
          make_grid(65, r, GridKind::uniform), [r](double s) { return 1.0 - s * s / (r * r); },
          [r](double s) { return -2.0 * s / (r * r); }, GridKind::uniform);
      U.values.back() = 0.0;
      U.domain_radius = r;
      const TransplantReport t = transplant_check(a, U);
      CHECK(t.energy_ball == doctest::Approx(2.0 * oracle::pi).epsilon(1e-12));
      CHECK(t.energy_disk == doctest::Approx(2.0 * oracle::pi).epsilon(1e-10));
      CHECK(t.energy_gap <= 1e-9);
      CHECK(t.volume_ball == doctest::Approx(oracle::pi * r * r * (std::exp(1.0) - 1.0)).epsilon(1e-12));
      const double a2 = a * a;
      const double disk = 2.0 * oracle::pi * (1 - a2) * (1 - a2) *
                          oracle::simpson(
                              [&](double s) {
                                const double d = 1.0 - a2 * s * s;
                                return s * std::exp(1.0 - s * s) * (1.0 + a2 * s * s) / (d * d * d);
                              },
                              0.0, 1.0, 4000);
      CHECK(t.volume_disk == doctest::Approx(disk).epsilon(1e-10));
      CHECK(t.volume_ratio >= 1.0 - 1e-12);
      if (a > 0.0) CHECK(t.volume_ratio > 1.0);
      CHECK(t.level_cap_gap <= 1e-9);
      REQUIRE(t.levels.size() == 5);
      // superlevel sets of U are balls: capacity 2 pi / ln(r / rho_t)
      for (std::size_t k = 0; k < 5; ++k) {
        const double rho_t = r * std::sqrt(1.0 - t.levels[k]);
        CHECK(t.level_cap_ball[k] == doctest::Approx(2.0 * oracle::pi / std::log(r / rho_t)).epsilon(1e-8));
      }
    }
  }

  TEST_CASE("rejects increasing or mismatched profiles") {
    RadialProfile U = sample_profile(make_grid(9, 0.75, GridKind::uniform), [](double s) { return s; },
                                     [](double) { return 1.0; }, GridKind::uniform);
    U.domain_radius = 0.75;
    CHECK_THROWS_AS(transplant_check(0.5, U), UnsupportedError);
    RadialProfile V = sample_profile(make_grid(9, 1.0, GridKind::uniform), [](double s) { return 1 - s; },
                                     [](double) { return -1.0; }, GridKind::uniform);
    CHECK_THROWS_AS(transplant_check(0.5, V), DomainError);
  }
}
