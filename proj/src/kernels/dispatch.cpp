#include <cstdlib>
#include <cstring>

#include "kernels_internal.hpp"
#include "onofri/errors.hpp"

namespace onofri::kernels {

const KernelTable& scalar_table() {
  static const KernelTable table{"scalar", &detail::plaplace_scalar, &detail::exp_moments_scalar};
  return table;
}

const KernelTable* avx2_table() {
#if defined(ONOFRI_HAVE_AVX2_KERNELS)
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  static const KernelTable table{"avx2", &detail::plaplace_avx2, &detail::exp_moments_avx2};
  return supported ? &table : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active_table() {
  static const KernelTable* chosen = [] {
    const char* env = std::getenv("ONOFRI_LAB_SIMD");
    if (env != nullptr && std::strcmp(env, "scalar") == 0) return &scalar_table();
    if (const KernelTable* simd = avx2_table()) return simd;
    return &scalar_table();
  }();
  return *chosen;
}

double plaplace_terms(const KernelTable& table, int n, double reg, std::span<const double> grad,
                      std::span<const double> weight, std::span<double> flux,
                      std::span<double> stiff) {
  const std::size_t count = grad.size();
  if (weight.size() != count || flux.size() != count || stiff.size() != count)
    throw DomainError("plaplace_terms: span sizes differ");
  if (n < 2) throw DomainError("plaplace_terms: dimension must be >= 2");
  return table.plaplace(n, reg, grad.data(), weight.data(), flux.data(), stiff.data(), count);
}

void exp_moments(const KernelTable& table, std::span<const double> left,
                 std::span<const double> right, std::span<const double> xi,
                 std::span<const double> coeff, std::span<double> m0, std::span<double> m1,
                 std::span<double> m2) {
  const std::size_t count = left.size();
  if (right.size() != count || m0.size() != count || m1.size() != count || m2.size() != count ||
      coeff.size() != count * xi.size())
    throw DomainError("exp_moments: span sizes differ");
  table.exp_moments(left.data(), right.data(), count, xi.data(), xi.size(), coeff.data(), m0.data(),
                    m1.data(), m2.data());
}

}  // namespace onofri::kernels
