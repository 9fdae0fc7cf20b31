#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "onofri/kernels.hpp"
#include "onofri/quadrature.hpp"

using namespace onofri;

namespace {

struct Inputs {
  std::vector<double> grad, weight, left, right, xi, coeff;
};

Inputs make_inputs(std::size_t count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> g(-30.0, 30.0), w(1e-6, 1.0), v(-20.0, 40.0);
  Inputs in;
  for (std::size_t i = 0; i < count; ++i) {
    in.grad.push_back(g(rng));
    in.weight.push_back(w(rng));
    in.left.push_back(v(rng));
    in.right.push_back(in.left.back() + g(rng) * 0.1);
  }
  const quad::GaussRule rule = quad::gauss_legendre(3);
  for (double x : rule.nodes) in.xi.push_back(0.5 * (x + 1.0));
  for (std::size_t q = 0; q < in.xi.size(); ++q)
    for (std::size_t i = 0; i < count; ++i) in.coeff.push_back(w(rng));
  return in;
}

double rel(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("scalar p-Laplace kernel matches its definition") {
    const Inputs in = make_inputs(17, 1);
    const std::size_t m = in.grad.size();
    for (int n : {2, 3, 5}) {
      const double reg = n == 2 ? 0.0 : 1e-6;
      std::vector<double> flux(m), stiff(m);
      const double e = kernels::plaplace_terms(kernels::scalar_table(), n, reg, in.grad, in.weight, flux, stiff);
      double expect = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        const double gg = in.grad[i], ww = in.weight[i], s = gg * gg + reg;
        expect += ww * (std::pow(s, n / 2.0) - std::pow(reg, n / 2.0));
        CHECK(rel(flux[i], ww * std::pow(s, (n - 2) / 2.0) * gg) <= 1e-14);
        const double st = n == 2 ? ww : ww * std::pow(s, (n - 4) / 2.0) * ((n - 1) * gg * gg + reg);
        CHECK(rel(stiff[i], st) <= 1e-14);
      }
      CHECK(rel(e, expect) <= 1e-13);
    }
  }

  TEST_CASE("scalar exp moments match their definition") {
    const Inputs in = make_inputs(9, 2);
    const std::size_t m = in.left.size(), Q = in.xi.size();
    std::vector<double> m0(m), m1(m), m2(m);
    kernels::exp_moments(kernels::scalar_table(), in.left, in.right, in.xi, in.coeff, m0, m1, m2);
    for (std::size_t i = 0; i < m; ++i) {
      double e0 = 0, e1 = 0, e2 = 0;
      for (std::size_t q = 0; q < Q; ++q) {
        const double E = std::exp(in.left[i] * (1 - in.xi[q]) + in.right[i] * in.xi[q]) * in.coeff[q * m + i];
        e0 += E;
        e1 += E * in.xi[q];
        e2 += E * in.xi[q] * in.xi[q];
      }
      CHECK(rel(m0[i], e0) <= 1e-14);
      CHECK(rel(m1[i], e1) <= 1e-14);
      CHECK(rel(m2[i], e2) <= 1e-14);
    }
  }

  TEST_CASE("AVX2 variants agree with the scalar reference") {
    const kernels::KernelTable* avx = kernels::avx2_table();
    if (avx == nullptr) {
      MESSAGE("AVX2 kernels unavailable on this build or CPU; skipped");
      return;
    }
    // odd sizes exercise the remainder loops
    for (std::size_t count : {1u, 3u, 4u, 7u, 64u, 1001u}) {
      CAPTURE(count);
      const Inputs in = make_inputs(count, 42 + static_cast<unsigned>(count));
      for (int n : {2, 3, 4, 7}) {
        const double reg = n == 2 ? 0.0 : 1e-8;
        std::vector<double> f1(count), s1(count), f2(count), s2(count);
        const double e1 = kernels::plaplace_terms(kernels::scalar_table(), n, reg, in.grad, in.weight, f1, s1);
        const double e2 = kernels::plaplace_terms(*avx, n, reg, in.grad, in.weight, f2, s2);
        CHECK(rel(e1, e2) <= 1e-12);
        for (std::size_t i = 0; i < count; ++i) {
          CHECK(rel(f1[i], f2[i]) <= 1e-12);
          CHECK(rel(s1[i], s2[i]) <= 1e-12);
        }
      }
      std::vector<double> a0(count), a1(count), a2(count), b0(count), b1(count), b2(count);
      kernels::exp_moments(kernels::scalar_table(), in.left, in.right, in.xi, in.coeff, a0, a1, a2);
      kernels::exp_moments(*avx, in.left, in.right, in.xi, in.coeff, b0, b1, b2);
      for (std::size_t i = 0; i < count; ++i) {
        CHECK(rel(a0[i], b0[i]) <= 1e-12);
        CHECK(rel(a1[i], b1[i]) <= 1e-12);
        CHECK(rel(a2[i], b2[i]) <= 1e-12);
      }
    }
  }

  TEST_CASE("active table is one of the two") {
    const kernels::KernelTable& t = kernels::active_table();
    CHECK((&t == &kernels::scalar_table() || &t == kernels::avx2_table()));
  }
}
