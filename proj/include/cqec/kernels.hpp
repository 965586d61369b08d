#pragma once
// Complex double arithmetic kernels: scalar reference implementations plus
// AVX2 variants selected at runtime.  All matrices are dense row-major.
//
// Conventions (no aliasing between C and A/B):
//   gemm_nn : C(m×n) += alpha · A(m×k) · B(k×n)
//   gemm_nh : C(m×n) += alpha · A(m×k) · B(n×k)†      (B conjugate-transposed)
//   gemm_hn : C(m×n) += alpha · A(k×m)† · B(k×n)      (A conjugate-transposed)
//   axpy    : y[i] += a · x[i]
//   scal    : x[i] *= a
//   dotc    : Σ conj(x[i]) · y[i]

#include <complex>
#include <cstddef>
#include <string_view>

namespace cqec::kern {

using cx = std::complex<double>;

struct Ops {
  const char* name;
  void (*gemm_nn)(cx*, const cx*, const cx*, std::size_t, std::size_t, std::size_t, cx);
  void (*gemm_nh)(cx*, const cx*, const cx*, std::size_t, std::size_t, std::size_t, cx);
  void (*gemm_hn)(cx*, const cx*, const cx*, std::size_t, std::size_t, std::size_t, cx);
  void (*axpy)(cx*, const cx*, std::size_t, cx);
  void (*scal)(cx*, std::size_t, cx);
  cx (*dotc)(const cx*, const cx*, std::size_t);
};

const Ops& scalar_ops();
const Ops* avx2_ops();  // nullptr when not compiled in
// Runtime selection: AVX2 when the CPU supports it, else scalar.
// Environment variable CQEC_KERNELS=scalar|avx2 overrides.
const Ops& active();
std::string_view active_name();

inline void gemm_nn(cx* C, const cx* A, const cx* B, std::size_t m, std::size_t k,
                    std::size_t n, cx alpha = {1.0, 0.0}) {
  active().gemm_nn(C, A, B, m, k, n, alpha);
}
inline void gemm_nh(cx* C, const cx* A, const cx* B, std::size_t m, std::size_t k,
                    std::size_t n, cx alpha = {1.0, 0.0}) {
  active().gemm_nh(C, A, B, m, k, n, alpha);
}
inline void gemm_hn(cx* C, const cx* A, const cx* B, std::size_t m, std::size_t k,
                    std::size_t n, cx alpha = {1.0, 0.0}) {
  active().gemm_hn(C, A, B, m, k, n, alpha);
}
inline void axpy(cx* y, const cx* x, std::size_t n, cx a) { active().axpy(y, x, n, a); }
inline void scal(cx* x, std::size_t n, cx a) { active().scal(x, n, a); }
inline cx dotc(const cx* x, const cx* y, std::size_t n) { return active().dotc(x, y, n); }

// C(ma·mb × na·nb) += alpha · A ⊗ B, with A's indices slow.
void kron_acc(cx* C, const cx* A, std::size_t ma, std::size_t na, const cx* B,
              std::size_t mb, std::size_t nb, cx alpha = {1.0, 0.0});

}  // namespace cqec::kern
