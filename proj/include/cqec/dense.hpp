#pragma once
// Dense complex kets and operators over mode-structured spaces, plus the
// tensor-algebra operations every other layer builds on.  Values are
// immutable-by-convention after construction; all functions are pure.

#include <complex>
#include <cstdint>
#include <vector>

#include "cqec/kernels.hpp"
#include "cqec/mode_space.hpp"

namespace cqec {

using cx = std::complex<double>;

struct DenseKet {
  ModeSpace space;
  std::vector<cx> amp;

  DenseKet() = default;
  explicit DenseKet(ModeSpace s) : space(std::move(s)), amp(space.total(), cx{0, 0}) {}
  DenseKet(ModeSpace s, std::vector<cx> a);

  int64_t dim() const { return static_cast<int64_t>(amp.size()); }
  double norm() const;
  bool is_normalized(double tol = 1e-12) const;
  DenseKet normalized() const;
};

struct DenseOperator {
  ModeSpace space_out;
  ModeSpace space_in;
  std::vector<cx> a;  // row-major, rows = out index, cols = in index

  DenseOperator() = default;
  DenseOperator(ModeSpace out, ModeSpace in)
      : space_out(std::move(out)), space_in(std::move(in)),
        a(static_cast<std::size_t>(space_out.total() * space_in.total()), cx{0, 0}) {}
  DenseOperator(ModeSpace out, ModeSpace in, std::vector<cx> entries);

  int64_t rows() const { return space_out.total(); }
  int64_t cols() const { return space_in.total(); }
  bool is_square() const { return rows() == cols(); }

  cx& at(int64_t r, int64_t c) { return a[static_cast<std::size_t>(r * cols() + c)]; }
  const cx& at(int64_t r, int64_t c) const {
    return a[static_cast<std::size_t>(r * cols() + c)];
  }

  static DenseOperator identity(const ModeSpace& s);
  static DenseOperator zero(const ModeSpace& out, const ModeSpace& in) {
    return DenseOperator(out, in);
  }

  DenseOperator adjoint() const;
  DenseOperator transpose() const;
  DenseOperator conjugate() const;
  cx trace() const;
  double max_abs() const;

  // Re-labels the spaces without moving data (index-override convention).
  DenseOperator relabeled(ModeSpace out, ModeSpace in) const;

  bool is_hermitian(double tol = 1e-10) const;
  bool is_isometry(double tol = 1e-10) const;   // A†A = I on space_in
  bool is_unitary(double tol = 1e-10) const;
  bool is_trace_one(double tol = 1e-10) const;
};

// ── arithmetic ───────────────────────────────────────────────────────────────
DenseOperator mul(const DenseOperator& A, const DenseOperator& B);          // A·B
DenseOperator mul_nh(const DenseOperator& A, const DenseOperator& B);       // A·B†
DenseOperator mul_hn(const DenseOperator& A, const DenseOperator& B);       // A†·B
DenseOperator add(const DenseOperator& A, const DenseOperator& B);
DenseOperator sub(const DenseOperator& A, const DenseOperator& B);
DenseOperator scale(const DenseOperator& A, cx s);
void add_scaled_into(DenseOperator& acc, const DenseOperator& X, cx s);
double max_abs_diff(const DenseOperator& A, const DenseOperator& B);

DenseKet apply(const DenseOperator& A, const DenseKet& v);
cx inner(const DenseKet& u, const DenseKet& v);  // ⟨u|v⟩
DenseOperator outer(const DenseKet& u, const DenseKet& v);  // |u⟩⟨v|
DenseOperator density(const DenseKet& v);                   // |v⟩⟨v|

// ── tensor structure ─────────────────────────────────────────────────────────
DenseOperator tensor_product(const DenseOperator& A, const DenseOperator& B);
DenseKet tensor_product(const DenseKet& u, const DenseKet& v);

// Reduced operator on the kept modes (ascending, unique); keep = {} yields the
// 1×1 full trace.  Mode order of the kept modes is preserved.
DenseOperator partial_trace(const DenseOperator& op, const std::vector<std::size_t>& keep);

// I ⊗ op ⊗ I placed on the given modes (ascending) of `space`.
DenseOperator embed_operator(const ModeSpace& space, const std::vector<std::size_t>& modes,
                             const DenseOperator& op);

// Ket with modes re-ordered: new mode m is old mode perm[m].
DenseKet permute_ket_modes(const DenseKet& v, const std::vector<std::size_t>& perm);

DenseKet basis_ket(const ModeSpace& s, int64_t flat_index);

std::vector<std::size_t> complement_modes(std::size_t num_modes,
                                          const std::vector<std::size_t>& drop);

}  // namespace cqec
