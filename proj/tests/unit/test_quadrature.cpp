#include <doctest.h>

#include <cmath>
#include <numeric>

#include "onofri/errors.hpp"
#include "onofri/quadrature.hpp"

using namespace onofri;

TEST_SUITE("quadrature") {
  TEST_CASE("adaptive Gauss-Kronrod on smooth and singular integrands") {
    const auto s = quad::gauss_kronrod([](double x) { return std::sin(x); }, 0.0, M_PI, 1e-13, 1e-13);
    CHECK(s.converged);
    CHECK(s.value == doctest::Approx(2.0).epsilon(1e-14));
    const double root = quad::integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-13, 1e-13);
    CHECK(root == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    const double logsing = quad::integrate([](double x) { return std::log(x); }, 0.0, 1.0, 1e-12, 1e-12);
    CHECK(logsing == doctest::Approx(-1.0).epsilon(1e-11));
  }

  TEST_CASE("tolerance that cannot be met") {
    auto f = [](double x) { return std::sin(1.0 / x); };
    const auto r = quad::gauss_kronrod(f, 1e-6, 1.0, 1e-15, 0.0, 5);
    CHECK_FALSE(r.converged);
    CHECK_THROWS_AS(quad::integrate(f, 1e-6, 1.0, 1e-15, 0.0, 5), QuadratureError);
  }

  TEST_CASE("Gauss-Legendre rules") {
    for (std::size_t m : {1u, 3u, 5u, 10u, 20u}) {
      CAPTURE(m);
      const quad::GaussRule g = quad::gauss_legendre(m);
      REQUIRE(g.nodes.size() == m);
      CHECK(std::accumulate(g.weights.begin(), g.weights.end(), 0.0) == doctest::Approx(2.0));
      for (std::size_t i = 1; i < m; ++i) CHECK(g.nodes[i] > g.nodes[i - 1]);
      // exact for degree 2m - 1
      const int deg = static_cast<int>(2 * m - 2);
      double s = 0.0;
      for (std::size_t i = 0; i < m; ++i) s += g.weights[i] * std::pow(g.nodes[i], deg);
      CHECK(s == doctest::Approx(2.0 / (deg + 1)).epsilon(1e-14));
    }
    const quad::GaussRule& u = quad::unit_gauss5();
    CHECK(std::accumulate(u.weights.begin(), u.weights.end(), 0.0) == doctest::Approx(1.0));
    CHECK(u.nodes.front() > 0.0);
    CHECK(u.nodes.back() < 1.0);
  }
}
