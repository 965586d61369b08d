#include "cqec/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <iostream>

namespace cqec::kern {

namespace {

void s_axpy(cx* y, const cx* x, std::size_t n, cx a) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void s_scal(cx* x, std::size_t n, cx a) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

cx s_dotc(const cx* x, const cx* y, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const cx v = std::conj(x[i]) * y[i];
    re += v.real();
    im += v.imag();
  }
  return {re, im};
}

void s_gemm_nn(cx* C, const cx* A, const cx* B, std::size_t m, std::size_t k,
               std::size_t n, cx alpha) {
  for (std::size_t i = 0; i < m; ++i) {
    cx* crow = C + i * n;
    for (std::size_t l = 0; l < k; ++l) {
      const cx a = alpha * A[i * k + l];
      if (a == cx{0.0, 0.0}) continue;
      s_axpy(crow, B + l * n, n, a);
    }
  }
}

void s_gemm_nh(cx* C, const cx* A, const cx* B, std::size_t m, std::size_t k,
               std::size_t n, cx alpha) {
  // C[i,j] += alpha · Σ_l A[i,l]·conj(B[j,l]) = alpha · conj(dotc(A_i, B_j))
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      C[i * n + j] += alpha * std::conj(s_dotc(A + i * k, B + j * k, k));
}

void s_gemm_hn(cx* C, const cx* A, const cx* B, std::size_t m, std::size_t k,
               std::size_t n, cx alpha) {
  for (std::size_t l = 0; l < k; ++l) {
    const cx* brow = B + l * n;
    for (std::size_t i = 0; i < m; ++i) {
      const cx a = alpha * std::conj(A[l * m + i]);
      if (a == cx{0.0, 0.0}) continue;
      s_axpy(C + i * n, brow, n, a);
    }
  }
}

constexpr Ops kScalar = {"scalar", s_gemm_nn, s_gemm_nh, s_gemm_hn, s_axpy, s_scal, s_dotc};

const Ops* select() {
  const char* env = std::getenv("CQEC_KERNELS");
  const Ops* simd = avx2_ops();
  if (env) {
    if (std::strcmp(env, "scalar") == 0) return &kScalar;
    if (std::strcmp(env, "avx2") == 0) {
      if (simd) return simd;
      std::cerr << "cqec: CQEC_KERNELS=avx2 requested but unavailable; using scalar\n";
      return &kScalar;
    }
    std::cerr << "cqec: unknown CQEC_KERNELS value '" << env << "'; using default\n";
  }
  return simd ? simd : &kScalar;
}

}  // namespace

const Ops& scalar_ops() { return kScalar; }

const Ops& active() {
  static const Ops* sel = select();
  return *sel;
}

std::string_view active_name() { return active().name; }

void kron_acc(cx* C, const cx* A, std::size_t ma, std::size_t na, const cx* B,
              std::size_t mb, std::size_t nb, cx alpha) {
  const Ops& ops = active();
  const std::size_t ncols = na * nb;
  for (std::size_t ia = 0; ia < ma; ++ia)
    for (std::size_t ja = 0; ja < na; ++ja) {
      const cx a = alpha * A[ia * na + ja];
      if (a == cx{0.0, 0.0}) continue;
      for (std::size_t ib = 0; ib < mb; ++ib)
        ops.axpy(C + (ia * mb + ib) * ncols + ja * nb, B + ib * nb, nb, a);
    }
}

}  // namespace cqec::kern
