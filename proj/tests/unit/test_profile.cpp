#include <doctest.h>

#include <cmath>

#include "onofri/dopri.hpp"
#include "onofri/errors.hpp"
#include "onofri/profile.hpp"

using namespace onofri;

TEST_SUITE("profile") {
  TEST_CASE("grids") {
    const auto u = make_grid(5, 2.0, GridKind::uniform);
    CHECK(u == std::vector<double>{0.0, 0.5, 1.0, 1.5, 2.0});
    const auto g = make_grid(5, 1.0, GridKind::graded);
    CHECK(g[1] == doctest::Approx(1.0 / 16.0));
    CHECK(g.back() == 1.0);
    const auto l = log_grid(1e-4, 1.0, 10);
    CHECK(l.front() == 0.0);
    CHECK(l[1] == doctest::Approx(1e-4));
    CHECK(l.back() == 1.0);
    CHECK(l.size() == 42);
  }

  TEST_CASE("Hermite interpolation reproduces cubics") {
    auto f = [](double r) { return 1.0 - 2.0 * r * r + r * r * r; };
    auto df = [](double r) { return -4.0 * r + 3.0 * r * r; };
    const RadialProfile p = sample_profile(make_grid(7, 1.0, GridKind::graded), f, df, GridKind::graded);
    p.validate();
    for (double r : {0.0, 0.01, 0.33, 0.77, 1.0}) {
      CHECK(p.value_at(r) == doctest::Approx(f(r)).epsilon(1e-14));
      CHECK(p.deriv_at(r) == doctest::Approx(df(r)).epsilon(1e-13));
    }
    CHECK(p.first_increase(0.0) == 0);
  }

  TEST_CASE("profile integration") {
    auto f = [](double r) { return std::cos(r); };
    auto df = [](double r) { return -std::sin(r); };
    const RadialProfile p = sample_profile(make_grid(200, 1.0, GridKind::uniform), f, df, GridKind::uniform);
    // int_0^1 r u(r) dr for u = cos r
    const double v = integrate_profile(p, [](double r, double u, double) { return r * u; });
    CHECK(v == doctest::Approx(std::sin(1.0) + std::cos(1.0) - 1.0).epsilon(1e-10));
    const double half = integrate_profile(p, [](double, double, double du) { return du; }, 0.5);
    CHECK(half == doctest::Approx(std::cos(0.5) - 1.0).epsilon(1e-10));
  }

  TEST_CASE("validation") {
    RadialProfile p;
    p.nodes = {0.0, 0.5, 0.4, 1.0};
    p.values = {0, 0, 0, 0};
    p.derivs = {0, 0, 0, 0};
    CHECK_THROWS_AS(p.validate(), DomainError);
    p.nodes = {0.0, 0.5, 1.0};
    CHECK_THROWS_AS(p.validate(), DomainError);
  }

  TEST_CASE("first increase") {
    RadialProfile p = sample_profile({0.0, 0.5, 1.0}, [](double r) { return r == 0.5 ? 2.0 : 1.0; },
                                     [](double) { return 0.0; }, GridKind::uniform);
    CHECK(p.first_increase(0.0) == 1);
    CHECK(p.first_increase(5.0) == 0);
  }
}

TEST_SUITE("dopri") {
  TEST_CASE("exponential growth with dense output") {
    ode::DopriOptions<2> opts;
    opts.rtol = 1e-11;
    opts.atol = {1e-13, 1e-13};
    double worst = 0.0;
    long steps = 0;
    // y0' = y0, y1' = -y1
    const auto res = ode::dopri5<2>(
        [](double, const ode::State<2>& y) { return ode::State<2>{y[0], -y[1]}; }, 0.0,
        ode::State<2>{1.0, 1.0}, 3.0, opts, [&](const ode::DopriStep<2>& s) {
          ++steps;
          for (double th : {0.25, 0.5, 0.9}) {
            const double t = s.t0 + th * (s.t1 - s.t0);
            const auto y = s.at(t);
            worst = std::max(worst, std::abs(y[0] - std::exp(t)) / std::exp(t));
            worst = std::max(worst, std::abs(y[1] - std::exp(-t)) / std::exp(-t));
          }
        });
    CHECK(res.status == ode::DopriStatus::reached_end);
    CHECK(res.t == 3.0);
    CHECK(res.accepted == steps);
    CHECK(res.y[0] == doctest::Approx(std::exp(3.0)).epsilon(1e-9));
    CHECK(worst < 1e-8);
  }

  TEST_CASE("finite-time blow-up is reported") {
    ode::DopriOptions<1> opts;
    opts.atol = {1e-12};
    // y' = y^2, y(0) = 1 blows up at t = 1
    const auto res = ode::dopri5<1>([](double, const ode::State<1>& y) { return ode::State<1>{y[0] * y[0]}; },
                                    0.0, ode::State<1>{1.0}, 2.0, opts, [](const auto&) {});
    CHECK(res.status != ode::DopriStatus::reached_end);
    CHECK(res.t < 1.0);
  }
}
