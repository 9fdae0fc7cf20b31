#pragma once

// Data-parallel inner loops of the radial P1 discretization. Every kernel
// has a scalar reference implementation and, on x86-64 builds, an AVX2/FMA
// variant; the variant is chosen once at runtime from CPUID. Setting
// ONOFRI_LAB_SIMD=scalar forces the reference path.

#include <cstddef>
#include <span>

namespace onofri::kernels {

// Per element e with gradient g = grad[e] and weight w = weight[e]:
//   s        = g^2 + reg
//   flux[e]  = w * s^{(n-2)/2} * g                       (d/dg of energy / n)
//   stiff[e] = w * s^{(n-4)/2} * ((n-1) g^2 + reg)       (d^2/dg^2 of energy / n)
// and returns sum_e w * (s^{n/2} - reg^{n/2}). For n == 2, stiff[e] = w.
using PLaplaceFn = double (*)(int n, double reg, const double* grad, const double* weight,
                              double* flux, double* stiff, std::size_t count);

// Per element e with endpoint values a = left[e], b = right[e] and Q
// quadrature points xi[q] (coeff row-major, Q rows of `count`):
//   E_q   = exp(a (1 - xi_q) + b xi_q)
//   m0[e] = sum_q coeff[q][e] E_q
//   m1[e] = sum_q coeff[q][e] E_q xi_q
//   m2[e] = sum_q coeff[q][e] E_q xi_q^2
using ExpMomentsFn = void (*)(const double* left, const double* right, std::size_t count,
                              const double* xi, std::size_t q_points, const double* coeff,
                              double* m0, double* m1, double* m2);

struct KernelTable {
  const char* name;
  PLaplaceFn plaplace;
  ExpMomentsFn exp_moments;
};

const KernelTable& scalar_table();

// nullptr when the AVX2 variant is not compiled in or the CPU lacks AVX2/FMA.
const KernelTable* avx2_table();

// The table used by the solvers.
const KernelTable& active_table();

double plaplace_terms(const KernelTable& table, int n, double reg, std::span<const double> grad,
                      std::span<const double> weight, std::span<double> flux,
                      std::span<double> stiff);

void exp_moments(const KernelTable& table, std::span<const double> left,
                 std::span<const double> right, std::span<const double> xi,
                 std::span<const double> coeff, std::span<double> m0, std::span<double> m1,
                 std::span<double> m2);

}  // namespace onofri::kernels
