// AVX2+FMA variants of the complex kernels.  This translation unit is compiled
// with -mavx2 -mfma; callers reach it only through the runtime dispatcher.

#include "cqec/kernels.hpp"

#if defined(CQEC_HAVE_AVX2_TU) && defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

namespace cqec::kern {
namespace {

// One __m256d holds two complex doubles as [re0 im0 re1 im1].

// (ar + i·ai) · v for broadcast scalar, two complexes at a time:
//   re' = ar·re − ai·im,  im' = ar·im + ai·re
inline __m256d cmul_bcast(__m256d ar, __m256d ai, __m256d v) {
  __m256d vswap = _mm256_permute_pd(v, 0x5);
  return _mm256_fmaddsub_pd(ar, v, _mm256_mul_pd(ai, vswap));
}

void v_axpy(cx* y, const cx* x, std::size_t n, cx a) {
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  double* yd = reinterpret_cast<double*>(y);
  const double* xd = reinterpret_cast<const double*>(x);
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(yv, cmul_bcast(ar, ai, xv)));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void v_scal(cx* x, std::size_t n, cx a) {
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  double* xd = reinterpret_cast<double*>(x);
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    _mm256_storeu_pd(xd + 2 * i, cmul_bcast(ar, ai, xv));
  }
  for (; i < n; ++i) x[i] *= a;
}

cx v_dotc(const cx* x, const cx* y, std::size_t n) {
  // conj(x)·y: re += xr·yr + xi·yi,  im += xr·yi − xi·yr
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t i = 0;
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    acc_re = _mm256_fmadd_pd(xv, yv, acc_re);
    acc_im = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0x5), acc_im);
  }
  alignas(32) double re4[4], im4[4];
  _mm256_store_pd(re4, acc_re);
  _mm256_store_pd(im4, acc_im);
  double re = re4[0] + re4[1] + re4[2] + re4[3];
  // im lanes alternate +xr·yi, −(−…): even lanes carry xr·yi, odd lanes xi·yr.
  double im = (im4[0] - im4[1]) + (im4[2] - im4[3]);
  for (; i < n; ++i) {
    const cx v = std::conj(x[i]) * y[i];
    re += v.real();
    im += v.imag();
  }
  return {re, im};
}

void v_gemm_nn(cx* C, const cx* A, const cx* B, std::size_t m, std::size_t k,
               std::size_t n, cx alpha) {
  for (std::size_t i = 0; i < m; ++i) {
    cx* crow = C + i * n;
    for (std::size_t l = 0; l < k; ++l) {
      const cx a = alpha * A[i * k + l];
      if (a == cx{0.0, 0.0}) continue;
      v_axpy(crow, B + l * n, n, a);
    }
  }
}

void v_gemm_nh(cx* C, const cx* A, const cx* B, std::size_t m, std::size_t k,
               std::size_t n, cx alpha) {
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      C[i * n + j] += alpha * std::conj(v_dotc(A + i * k, B + j * k, k));
}

void v_gemm_hn(cx* C, const cx* A, const cx* B, std::size_t m, std::size_t k,
               std::size_t n, cx alpha) {
  for (std::size_t l = 0; l < k; ++l) {
    const cx* brow = B + l * n;
    for (std::size_t i = 0; i < m; ++i) {
      const cx a = alpha * std::conj(A[l * m + i]);
      if (a == cx{0.0, 0.0}) continue;
      v_axpy(C + i * n, brow, n, a);
    }
  }
}

constexpr Ops kAvx2 = {"avx2", v_gemm_nn, v_gemm_nh, v_gemm_hn, v_axpy, v_scal, v_dotc};

}  // namespace

const Ops* avx2_ops() {
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return &kAvx2;
  return nullptr;
}

}  // namespace cqec::kern

#else

namespace cqec::kern {
const Ops* avx2_ops() { return nullptr; }
}  // namespace cqec::kern

#endif
