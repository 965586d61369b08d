#include "cqec/dense.hpp"

#include <algorithm>
#include <cmath>

#include "cqec/util.hpp"

namespace cqec {

DenseKet::DenseKet(ModeSpace s, std::vector<cx> a) : space(std::move(s)), amp(std::move(a)) {
  require(static_cast<int64_t>(amp.size()) == space.total(),
          "DenseKet: amplitude length ", amp.size(), " != total dimension ", space.total());
}

double DenseKet::norm() const {
  double s = 0.0;
  for (const cx& v : amp) s += std::norm(v);
  return std::sqrt(s);
}

bool DenseKet::is_normalized(double tol) const { return std::abs(norm() - 1.0) <= tol; }

DenseKet DenseKet::normalized() const {
  const double n = norm();
  require(n > 0.0, "DenseKet: cannot normalize the zero vector");
  DenseKet r = *this;
  kern::scal(r.amp.data(), r.amp.size(), cx{1.0 / n, 0.0});
  return r;
}

DenseOperator::DenseOperator(ModeSpace out, ModeSpace in, std::vector<cx> entries)
    : space_out(std::move(out)), space_in(std::move(in)), a(std::move(entries)) {
  require(static_cast<int64_t>(a.size()) == space_out.total() * space_in.total(),
          "DenseOperator: entry count mismatch");
}

DenseOperator DenseOperator::identity(const ModeSpace& s) {
  DenseOperator r(s, s);
  const int64_t n = s.total();
  for (int64_t i = 0; i < n; ++i) r.at(i, i) = cx{1.0, 0.0};
  return r;
}

DenseOperator DenseOperator::adjoint() const {
  DenseOperator r(space_in, space_out);
  const int64_t m = rows(), n = cols();
  for (int64_t i = 0; i < m; ++i)
    for (int64_t j = 0; j < n; ++j) r.at(j, i) = std::conj(at(i, j));
  return r;
}

DenseOperator DenseOperator::transpose() const {
  DenseOperator r(space_in, space_out);
  const int64_t m = rows(), n = cols();
  for (int64_t i = 0; i < m; ++i)
    for (int64_t j = 0; j < n; ++j) r.at(j, i) = at(i, j);
  return r;
}

DenseOperator DenseOperator::conjugate() const {
  DenseOperator r = *this;
  for (cx& v : r.a) v = std::conj(v);
  return r;
}

cx DenseOperator::trace() const {
  require(is_square(), "trace: operator not square");
  cx t{0, 0};
  for (int64_t i = 0; i < rows(); ++i) t += at(i, i);
  return t;
}

double DenseOperator::max_abs() const {
  double m = 0.0;
  for (const cx& v : a) m = std::max(m, std::abs(v));
  return m;
}

DenseOperator DenseOperator::relabeled(ModeSpace out, ModeSpace in) const {
  require(out.total() == rows() && in.total() == cols(),
          "relabeled: new spaces do not match matrix shape");
  DenseOperator r = *this;
  r.space_out = std::move(out);
  r.space_in = std::move(in);
  return r;
}

bool DenseOperator::is_hermitian(double tol) const {
  if (!is_square()) return false;
  const int64_t n = rows();
  for (int64_t i = 0; i < n; ++i)
    for (int64_t j = i; j < n; ++j)
      if (std::abs(at(i, j) - std::conj(at(j, i))) > tol) return false;
  return true;
}

bool DenseOperator::is_isometry(double tol) const {
  DenseOperator g = mul_hn(*this, *this);
  const int64_t n = g.rows();
  for (int64_t i = 0; i < n; ++i) g.at(i, i) -= cx{1.0, 0.0};
  return g.max_abs() <= tol;
}

bool DenseOperator::is_unitary(double tol) const { return is_square() && is_isometry(tol); }

bool DenseOperator::is_trace_one(double tol) const {
  return is_square() && std::abs(trace() - cx{1.0, 0.0}) <= tol;
}

// ── arithmetic ───────────────────────────────────────────────────────────────

DenseOperator mul(const DenseOperator& A, const DenseOperator& B) {
  require(A.cols() == B.rows(), "mul: inner dimensions ", A.cols(), " vs ", B.rows());
  DenseOperator C(A.space_out, B.space_in);
  kern::gemm_nn(C.a.data(), A.a.data(), B.a.data(), A.rows(), A.cols(), B.cols());
  return C;
}

DenseOperator mul_nh(const DenseOperator& A, const DenseOperator& B) {
  require(A.cols() == B.cols(), "mul_nh: inner dimensions ", A.cols(), " vs ", B.cols());
  DenseOperator C(A.space_out, B.space_out);
  kern::gemm_nh(C.a.data(), A.a.data(), B.a.data(), A.rows(), A.cols(), B.rows());
  return C;
}

DenseOperator mul_hn(const DenseOperator& A, const DenseOperator& B) {
  require(A.rows() == B.rows(), "mul_hn: inner dimensions ", A.rows(), " vs ", B.rows());
  DenseOperator C(A.space_in, B.space_in);
  kern::gemm_hn(C.a.data(), A.a.data(), B.a.data(), A.cols(), A.rows(), B.cols());
  return C;
}

DenseOperator add(const DenseOperator& A, const DenseOperator& B) {
  require(A.rows() == B.rows() && A.cols() == B.cols(), "add: shape mismatch");
  DenseOperator C = A;
  kern::axpy(C.a.data(), B.a.data(), C.a.size(), cx{1.0, 0.0});
  return C;
}

DenseOperator sub(const DenseOperator& A, const DenseOperator& B) {
  require(A.rows() == B.rows() && A.cols() == B.cols(), "sub: shape mismatch");
  DenseOperator C = A;
  kern::axpy(C.a.data(), B.a.data(), C.a.size(), cx{-1.0, 0.0});
  return C;
}

DenseOperator scale(const DenseOperator& A, cx s) {
  DenseOperator C = A;
  kern::scal(C.a.data(), C.a.size(), s);
  return C;
}

void add_scaled_into(DenseOperator& acc, const DenseOperator& X, cx s) {
  require(acc.rows() == X.rows() && acc.cols() == X.cols(), "add_scaled_into: shape mismatch");
  kern::axpy(acc.a.data(), X.a.data(), acc.a.size(), s);
}

double max_abs_diff(const DenseOperator& A, const DenseOperator& B) {
  require(A.rows() == B.rows() && A.cols() == B.cols(), "max_abs_diff: shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < A.a.size(); ++i) m = std::max(m, std::abs(A.a[i] - B.a[i]));
  return m;
}

DenseKet apply(const DenseOperator& A, const DenseKet& v) {
  require(A.cols() == v.dim(), "apply: dimension mismatch");
  DenseKet r(A.space_out);
  kern::gemm_nn(r.amp.data(), A.a.data(), v.amp.data(), A.rows(), A.cols(), 1);
  return r;
}

cx inner(const DenseKet& u, const DenseKet& v) {
  require(u.dim() == v.dim(), "inner: dimension mismatch");
  return kern::dotc(u.amp.data(), v.amp.data(), u.amp.size());
}

DenseOperator outer(const DenseKet& u, const DenseKet& v) {
  DenseOperator r(u.space, v.space);
  const int64_t m = u.dim(), n = v.dim();
  for (int64_t i = 0; i < m; ++i)
    for (int64_t j = 0; j < n; ++j) r.at(i, j) = u.amp[i] * std::conj(v.amp[j]);
  return r;
}

DenseOperator density(const DenseKet& v) { return outer(v, v); }

// ── tensor structure ─────────────────────────────────────────────────────────

DenseOperator tensor_product(const DenseOperator& A, const DenseOperator& B) {
  DenseOperator C(ModeSpace::concat(A.space_out, B.space_out),
                  ModeSpace::concat(A.space_in, B.space_in));
  kern::kron_acc(C.a.data(), A.a.data(), A.rows(), A.cols(), B.a.data(), B.rows(), B.cols());
  return C;
}

DenseKet tensor_product(const DenseKet& u, const DenseKet& v) {
  DenseKet r(ModeSpace::concat(u.space, v.space));
  const int64_t n = v.dim();
  for (int64_t i = 0; i < u.dim(); ++i)
    kern::axpy(r.amp.data() + i * n, v.amp.data(), n, u.amp[i]);
  return r;
}

DenseOperator partial_trace(const DenseOperator& op, const std::vector<std::size_t>& keep) {
  require(op.is_square() && op.space_out.same_dims(op.space_in),
          "partial_trace: operator must be square over one ModeSpace");
  const ModeSpace& sp = op.space_out;
  const std::size_t nm = sp.num_modes();
  for (std::size_t i = 0; i < keep.size(); ++i) {
    require(keep[i] < nm, "partial_trace: invalid mode index ", keep[i]);
    if (i) require(keep[i] > keep[i - 1], "partial_trace: keep modes must be ascending unique");
  }
  const std::vector<std::size_t> traced = complement_modes(nm, keep);
  const std::vector<int64_t> strides = sp.strides();

  // keep = {} is the full trace, returned as a 1×1 operator.
  ModeSpace out_sp = keep.empty() ? ModeSpace::single(1) : sp.subspace(keep);
  DenseOperator r(out_sp, out_sp);

  int64_t keep_total = 1;
  for (std::size_t m : keep) keep_total *= sp.dims[m];
  int64_t traced_total = 1;
  for (std::size_t m : traced) traced_total *= sp.dims[m];

  auto offset_of = [&](int64_t flat, const std::vector<std::size_t>& modes) {
    int64_t off = 0;
    for (std::size_t i = modes.size(); i-- > 0;) {
      const std::size_t m = modes[i];
      off += (flat % sp.dims[m]) * strides[m];
      flat /= sp.dims[m];
    }
    return off;
  };

  std::vector<int64_t> keep_off(keep_total), tr_off(traced_total);
  for (int64_t f = 0; f < keep_total; ++f) keep_off[f] = offset_of(f, keep);
  for (int64_t f = 0; f < traced_total; ++f) tr_off[f] = offset_of(f, traced);

  const int64_t n = op.cols();
  for (int64_t rk = 0; rk < keep_total; ++rk)
    for (int64_t ck = 0; ck < keep_total; ++ck) {
      cx s{0, 0};
      for (int64_t t = 0; t < traced_total; ++t)
        s += op.a[static_cast<std::size_t>((keep_off[rk] + tr_off[t]) * n + keep_off[ck] +
                                           tr_off[t])];
      r.at(rk, ck) = s;
    }
  return r;
}

DenseOperator embed_operator(const ModeSpace& space, const std::vector<std::size_t>& modes,
                             const DenseOperator& op) {
  require(op.space_out.same_dims(op.space_in), "embed_operator: op must be square");
  ModeSpace sub = space.subspace(modes);
  require(sub.total() == op.rows(), "embed_operator: op shape does not match target modes");
  for (std::size_t i = 1; i < modes.size(); ++i)
    require(modes[i] > modes[i - 1], "embed_operator: modes must be ascending unique");

  const std::vector<std::size_t> rest = complement_modes(space.num_modes(), modes);
  const std::vector<int64_t> strides = space.strides();

  int64_t sub_total = sub.total(), rest_total = 1;
  for (std::size_t m : rest) rest_total *= space.dims[m];

  auto offset_of = [&](int64_t flat, const std::vector<std::size_t>& mv) {
    int64_t off = 0;
    for (std::size_t i = mv.size(); i-- > 0;) {
      const std::size_t m = mv[i];
      off += (flat % space.dims[m]) * strides[m];
      flat /= space.dims[m];
    }
    return off;
  };

  DenseOperator r(space, space);
  const int64_t n = space.total();
  for (int64_t rs = 0; rs < sub_total; ++rs)
    for (int64_t cs = 0; cs < sub_total; ++cs) {
      const cx v = op.at(rs, cs);
      if (v == cx{0, 0}) continue;
      const int64_t ro = offset_of(rs, modes), co = offset_of(cs, modes);
      for (int64_t t = 0; t < rest_total; ++t) {
        const int64_t to = offset_of(t, rest);
        r.a[static_cast<std::size_t>((ro + to) * n + co + to)] = v;
      }
    }
  return r;
}

DenseKet permute_ket_modes(const DenseKet& v, const std::vector<std::size_t>& perm) {
  const ModeSpace& sp = v.space;
  require(perm.size() == sp.num_modes(), "permute_ket_modes: permutation length mismatch");
  ModeSpace nsp = sp.subspace(perm);  // validates indices
  DenseKet r(nsp);
  const std::vector<int64_t> old_strides = sp.strides();
  const int64_t total = v.dim();
  std::vector<int64_t> new_idx(perm.size());
  for (int64_t f = 0; f < total; ++f) {
    std::vector<int64_t> old_idx = unflatten(f, sp.dims);
    for (std::size_t m = 0; m < perm.size(); ++m) new_idx[m] = old_idx[perm[m]];
    r.amp[static_cast<std::size_t>(flatten(new_idx, nsp.dims))] = v.amp[static_cast<std::size_t>(f)];
  }
  return r;
}

DenseKet basis_ket(const ModeSpace& s, int64_t flat_index) {
  DenseKet r(s);
  require(flat_index >= 0 && flat_index < r.dim(), "basis_ket: index out of range");
  r.amp[static_cast<std::size_t>(flat_index)] = cx{1.0, 0.0};
  return r;
}

std::vector<std::size_t> complement_modes(std::size_t num_modes,
                                          const std::vector<std::size_t>& drop) {
  std::vector<std::size_t> rest;
  for (std::size_t m = 0; m < num_modes; ++m)
    if (std::find(drop.begin(), drop.end(), m) == drop.end()) rest.push_back(m);
  return rest;
}

}  // namespace cqec
