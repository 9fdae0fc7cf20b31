#pragma once

#include "onofri/kernels.hpp"

namespace onofri::kernels::detail {

double plaplace_scalar(int n, double reg, const double* grad, const double* weight, double* flux,
                       double* stiff, std::size_t count);
void exp_moments_scalar(const double* left, const double* right, std::size_t count,
                        const double* xi, std::size_t q_points, const double* coeff, double* m0,
                        double* m1, double* m2);

#if defined(ONOFRI_HAVE_AVX2_KERNELS)
double plaplace_avx2(int n, double reg, const double* grad, const double* weight, double* flux,
                     double* stiff, std::size_t count);
void exp_moments_avx2(const double* left, const double* right, std::size_t count,
                      const double* xi, std::size_t q_points, const double* coeff, double* m0,
                      double* m1, double* m2);
#endif

}  // namespace onofri::kernels::detail
