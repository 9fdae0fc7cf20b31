#include <doctest.h>

#include <cmath>

#include "../oracles.hpp"
#include "onofri/constants.hpp"
#include "onofri/errors.hpp"
#include "onofri/radial_ode.hpp"

using namespace onofri;

TEST_SUITE("radial_ode") {
  TEST_CASE("shooting reproduces the rescaled bubble") {
    for (int n : {2, 3, 4, 6}) {
      for (double peak : {0.0, 3.0, 12.0}) {
        CAPTURE(n);
        CAPTURE(peak);
        const double eps = std::pow(oracle::beta(n) * std::exp(-peak), 1.0 / n);
        const RadialProfile v = shoot(n, peak, 1.0, 1e-11);
        for (double r : {0.0, 0.1, 0.5, 1.0}) {
          const double expect = oracle::bubble(n, r / eps) - n * std::log(eps);
          CHECK(v.value_at(r) == doctest::Approx(expect).epsilon(1e-8));
        }
      }
    }
  }

  TEST_CASE("branch point observables against closed forms") {
    for (int n = 2; n <= 6; ++n) {
      for (double peak : {0.5, 5.0, 15.0}) {
        CAPTURE(n);
        CAPTURE(peak);
        const BranchPoint p = branch_point(n, peak, 1e-10);
        const oracle::BranchValues o = oracle::branch(n, peak);
        CHECK(p.lambda == doctest::Approx(o.lambda).epsilon(1e-7));
        CHECK(p.mass == doctest::Approx(o.mass).epsilon(1e-7));
        CHECK(p.peak_u == doctest::Approx(o.peak_u).epsilon(1e-7));
        CHECK(p.energy_J == doctest::Approx(o.energy_J).epsilon(1e-6));
        CHECK(p.pohozaev_residual <= 1e-6);
        CHECK(p.profile.value_at(1.0) == doctest::Approx(0.0));
      }
    }
  }

  TEST_CASE("n = 2 Liouville family") {
    for (double delta : {1.0, 10.0, 1e3}) {
      const BranchPoint p = branch_point(2, std::log(8.0 * delta), 1e-10);
      CHECK(p.mass == doctest::Approx(oracle::liouville_mass(delta)).epsilon(1e-8));
      CHECK(p.lambda == doctest::Approx(8.0 * delta / ((1 + delta) * (1 + delta))).epsilon(1e-8));
      CHECK(p.energy_J == doctest::Approx(oracle::liouville_J(delta)).epsilon(1e-7));
      for (double r : {0.0, 0.05, 0.5})
        CHECK(p.profile.value_at(r) == doctest::Approx(oracle::liouville_u(delta, r)).epsilon(1e-7));
    }
  }

  TEST_CASE("branch scan is ordered and masses stay below C_n") {
    const SolutionBranch b = scan_branch(3, {10.0, 0.0, 5.0, 20.0}, 1e-10);
    REQUIRE(b.failures.empty());
    REQUIRE(b.points.size() == 4);
    for (std::size_t i = 1; i < b.points.size(); ++i) {
      CHECK(b.points[i].peak_v > b.points[i - 1].peak_v);
      CHECK(b.points[i].mass > b.points[i - 1].mass);
    }
    CHECK(b.points.back().mass < oracle::c_crit(3));
  }

  TEST_CASE("Pohozaev sides agree") {
    const BranchPoint p = branch_point(4, 8.0, 1e-10);
    const PohozaevSides s = pohozaev_sides(p);
    CHECK(s.lhs == doctest::Approx(s.rhs).epsilon(1e-8));
    CHECK(pohozaev_residual(p) == doctest::Approx(p.pohozaev_residual));
  }

  TEST_CASE("rescaling onto eta0 and far-field slope") {
    const BranchPoint p = branch_point(2, std::log(8.0e3), 1e-10);
    const BubbleRescaling r = rescale_to_bubble(p, 10.0);
    CHECK(r.in_blowup_regime);
    CHECK(r.epsilon == doctest::Approx(oracle::branch(2, std::log(8.0e3)).eps).epsilon(1e-6));
    CHECK(r.sup_deviation < 1e-6);
    // eta0 decays like -n^2/(n-1) ln r; on [5, 50] the local slope is within a few percent
    const BranchPoint far = branch_point(2, std::log(8.0e4), 1e-10);
    const double s = farfield_slope(far, 5.0, 50.0);
    CHECK(s > 3.8);
    CHECK(s < 4.0);
    // the pure bubble gives the same fitted slope
    const BranchPoint far3 = branch_point(3, std::log(oracle::beta(3)) + 3 * std::log(60.0), 1e-10);
    CHECK(std::abs(farfield_slope(far3, 5.0, 30.0) - 4.5) <= 0.05 * 4.5);
  }

  TEST_CASE("errors") {
    CHECK_THROWS_AS(branch_point(1, 1.0, 1e-10), DomainError);
    CHECK_THROWS_AS(branch_point(2, 1.0, 0.0), DomainError);
    const BranchPoint p = branch_point(2, 1.0, 1e-10);
    // not concentrated enough to reach r = 50 after rescaling
    CHECK_THROWS_AS(farfield_slope(p, 5.0, 50.0), DomainError);
    const RadialProfile sparse = sample_profile({0.0, 1.0, 6.0, 7.0, 50.0}, [](double r) { return -r; },
                                                [](double) { return -1.0; }, GridKind::uniform);
    CHECK_THROWS_AS(farfield_slope(sparse, 5.0, 10.0), InsufficientDataError);
  }
}
