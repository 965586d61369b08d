#include "doctest.h"

#include <complex>
#include <vector>
#include <array>

#include "cqec/kernels.hpp"
#include "cqec/rng.hpp"

using cqec::Rng;
using cqec::kern::cx;

namespace {

std::vector<cx> random_vec(std::size_t n, Rng& rng) {
  std::vector<cx> v(n);
  for (cx& x : v) x = rng.complex_gaussian();
  return v;
}

// independent naive oracles
void naive_nn(std::vector<cx>& C, const std::vector<cx>& A, const std::vector<cx>& B,
              std::size_t m, std::size_t k, std::size_t n, cx alpha) {
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cx s{0, 0};
      for (std::size_t l = 0; l < k; ++l) s += A[i * k + l] * B[l * n + j];
      C[i * n + j] += alpha * s;
    }
}

void naive_nh(std::vector<cx>& C, const std::vector<cx>& A, const std::vector<cx>& B,
              std::size_t m, std::size_t k, std::size_t n, cx alpha) {
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cx s{0, 0};
      for (std::size_t l = 0; l < k; ++l) s += A[i * k + l] * std::conj(B[j * k + l]);
      C[i * n + j] += alpha * s;
    }
}

void naive_hn(std::vector<cx>& C, const std::vector<cx>& A, const std::vector<cx>& B,
              std::size_t m, std::size_t k, std::size_t n, cx alpha) {
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cx s{0, 0};
      for (std::size_t l = 0; l < k; ++l) s += std::conj(A[l * m + i]) * B[l * n + j];
      C[i * n + j] += alpha * s;
    }
}

double max_diff(const std::vector<cx>& a, const std::vector<cx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("gemm variants match a naive oracle") {
  Rng rng(7);
  const cx alpha{0.7, -0.3};
  for (auto [m, k, n] : std::vector<std::array<int, 3>>{{1, 1, 1},
                         {3, 5, 4},
                         {8, 8, 8},
                         {7, 13, 9},
                         {17, 2, 31}}) {
    auto A = random_vec(static_cast<std::size_t>(m * k), rng);
    auto Ah = random_vec(static_cast<std::size_t>(k * m), rng);
    auto B = random_vec(static_cast<std::size_t>(k * n), rng);
    auto Bh = random_vec(static_cast<std::size_t>(n * k), rng);
    std::vector<cx> c0(static_cast<std::size_t>(m * n), cx{0.5, 0.5});
    auto c1 = c0, c2 = c0;

    naive_nn(c1, A, B, m, k, n, alpha);
    cqec::kern::gemm_nn(c2.data(), A.data(), B.data(), m, k, n, alpha);
    CHECK(max_diff(c1, c2) < 1e-12);

    c1 = c0, c2 = c0;
    naive_nh(c1, A, Bh, m, k, n, alpha);
    cqec::kern::gemm_nh(c2.data(), A.data(), Bh.data(), m, k, n, alpha);
    CHECK(max_diff(c1, c2) < 1e-12);

    c1 = c0, c2 = c0;
    naive_hn(c1, Ah, B, m, k, n, alpha);
    cqec::kern::gemm_hn(c2.data(), Ah.data(), B.data(), m, k, n, alpha);
    CHECK(max_diff(c1, c2) < 1e-12);
  }
}

TEST_CASE("simd and scalar paths agree") {
  const cqec::kern::Ops& sc = cqec::kern::scalar_ops();
  const cqec::kern::Ops* simd = cqec::kern::avx2_ops();
  if (!simd) {
    MESSAGE("avx2 kernels not available on this host; scalar-only");
    return;
  }
  Rng rng(13);
  for (std::size_t n : {1u, 2u, 3u, 5u, 16u, 33u, 257u}) {
    auto x = random_vec(n, rng);
    auto y0 = random_vec(n, rng);
    auto y1 = y0;
    const cx a{-1.25, 0.75};
    sc.axpy(y0.data(), x.data(), n, a);
    simd->axpy(y1.data(), x.data(), n, a);
    CHECK(max_diff(y0, y1) < 1e-13);

    auto z0 = x, z1 = x;
    sc.scal(z0.data(), n, a);
    simd->scal(z1.data(), n, a);
    CHECK(max_diff(z0, z1) < 1e-13);

    cx d0 = sc.dotc(x.data(), y0.data(), n);
    cx d1 = simd->dotc(x.data(), y0.data(), n);
    CHECK(std::abs(d0 - d1) < 1e-12 * (1.0 + static_cast<double>(n)));
  }
  for (auto [m, k, n] : std::vector<std::array<int, 3>>{{5, 7, 6}, {12, 12, 12}, {9, 31, 2}}) {
    auto A = random_vec(static_cast<std::size_t>(m * k), rng);
    auto B = random_vec(static_cast<std::size_t>(k * n), rng);
    std::vector<cx> c0(static_cast<std::size_t>(m * n), cx{0, 0});
    auto c1 = c0;
    sc.gemm_nn(c0.data(), A.data(), B.data(), m, k, n, cx{1, 0});
    simd->gemm_nn(c1.data(), A.data(), B.data(), m, k, n, cx{1, 0});
    CHECK(max_diff(c0, c1) < 1e-12);
  }
}

TEST_CASE("kron_acc lays out indices row-major with left factor slow") {
  // A = [[0,1],[0,0]], B = I2: (A⊗B)[(0,b),(1,b')] = δ_bb'
  std::vector<cx> A = {cx{0, 0}, cx{1, 0}, cx{0, 0}, cx{0, 0}};
  std::vector<cx> B = {cx{1, 0}, cx{0, 0}, cx{0, 0}, cx{1, 0}};
  std::vector<cx> C(16, cx{0, 0});
  cqec::kern::kron_acc(C.data(), A.data(), 2, 2, B.data(), 2, 2);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      const bool expect = (r == 0 && c == 2) || (r == 1 && c == 3);
      CHECK(C[static_cast<std::size_t>(r * 4 + c)] == (expect ? cx{1, 0} : cx{0, 0}));
    }
}

TEST_CASE("active kernel reports a name") {
  CHECK((cqec::kern::active_name() == "avx2" || cqec::kern::active_name() == "scalar"));
}

}  // TEST_SUITE
