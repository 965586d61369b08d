#include "cqec/linalg.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "cqec/util.hpp"

namespace cqec {

namespace {

using EMat = Eigen::Matrix<cx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using EMap = Eigen::Map<const EMat>;

EMap map_of(const DenseOperator& op) { return EMap(op.a.data(), op.rows(), op.cols()); }

DenseOperator from_eigen(const Eigen::Ref<const EMat>& m, ModeSpace out, ModeSpace in) {
  DenseOperator r(std::move(out), std::move(in));
  Eigen::Map<EMat>(r.a.data(), r.rows(), r.cols()) = m;
  return r;
}

}  // namespace

HermEig herm_eig(const DenseOperator& op, double herm_tol) {
  require(op.is_square(), "herm_eig: operator not square");
  require(op.is_hermitian(herm_tol), "herm_eig: operator not Hermitian within ", herm_tol);
  Eigen::SelfAdjointEigenSolver<EMat> es(map_of(op));
  require(es.info() == Eigen::Success, "herm_eig: eigensolver failed");
  HermEig r;
  const auto& ev = es.eigenvalues();
  r.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  r.eigenvectors = from_eigen(es.eigenvectors(), op.space_out, op.space_in);
  return r;
}

Svd svd(const DenseOperator& op) {
  Eigen::JacobiSVD<EMat> sv(map_of(op), Eigen::ComputeThinU | Eigen::ComputeThinV);
  Svd r;
  const auto& s = sv.singularValues();
  r.singular_values.assign(s.data(), s.data() + s.size());
  const int64_t k = static_cast<int64_t>(r.singular_values.size());
  r.u = from_eigen(sv.matrixU(), op.space_out, ModeSpace::single(k));
  r.vconj = from_eigen(sv.matrixV().conjugate(), op.space_in, ModeSpace::single(k));
  return r;
}

DenseOperator psd_func(const DenseOperator& op, PsdFunc which, double cutoff, double psd_tol) {
  HermEig eig = herm_eig(op, psd_tol);
  const double lmax = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.back();
  for (double l : eig.eigenvalues)
    require(l >= -psd_tol, "psd_func: not PSD (eigenvalue ", l, ")");
  if (cutoff < 0.0) cutoff = 1e-10 * std::max(lmax, 0.0);

  const int64_t n = op.rows();
  std::vector<double> f(eig.eigenvalues.size(), 0.0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double l = eig.eigenvalues[i];
    if (l <= cutoff) continue;  // treated as zero on both branches
    f[i] = which == PsdFunc::Sqrt ? std::sqrt(l) : 1.0 / std::sqrt(l);
  }
  // V diag(f) V†
  DenseOperator scaled = eig.eigenvectors;
  for (int64_t c = 0; c < n; ++c)
    for (int64_t r = 0; r < n; ++r) scaled.at(r, c) *= f[static_cast<std::size_t>(c)];
  return mul_nh(scaled, eig.eigenvectors);
}

double operator_norm(const DenseOperator& op) {
  if (op.is_square() && op.is_hermitian(1e-12)) return herm_norm(op);
  Svd s = svd(op);
  return s.singular_values.empty() ? 0.0 : s.singular_values.front();
}

double trace_norm(const DenseOperator& op) {
  if (op.is_square() && op.is_hermitian(1e-12)) {
    HermEig eig = herm_eig(op);
    double t = 0.0;
    for (double l : eig.eigenvalues) t += std::abs(l);
    return t;
  }
  Svd s = svd(op);
  double t = 0.0;
  for (double x : s.singular_values) t += x;
  return t;
}

double herm_norm(const DenseOperator& op) {
  HermEig eig = herm_eig(op, 1e-7);
  double m = 0.0;
  for (double l : eig.eigenvalues) m = std::max(m, std::abs(l));
  return m;
}

bool is_psd(const DenseOperator& op, double tol) {
  if (!op.is_square() || !op.is_hermitian(tol)) return false;
  HermEig eig = herm_eig(op, tol);
  return eig.eigenvalues.empty() || eig.eigenvalues.front() >= -tol;
}

double fidelity(const DenseOperator& a, const DenseOperator& b, double psd_tol) {
  require(a.is_square() && b.is_square() && a.rows() == b.rows(),
          "fidelity: operators must be square and same size");
  require(is_psd(a, psd_tol), "fidelity: first argument not PSD");
  require(is_psd(b, psd_tol), "fidelity: second argument not PSD");
  DenseOperator sa = psd_func(a, PsdFunc::Sqrt, 0.0, psd_tol);
  DenseOperator m = mul(mul(sa, b), sa);
  HermEig eig = herm_eig(m, 1e-7);
  double f = 0.0;
  for (double l : eig.eigenvalues)
    if (l > 0.0) f += std::sqrt(l);
  return std::min(f, 1.0 + 1e-9);
}

double fidelity_pure(const DenseKet& kappa, const DenseOperator& rho) {
  DenseKet rk = apply(rho, kappa);
  const double v = std::max(0.0, inner(kappa, rk).real());
  return std::sqrt(v);
}

double entropy(const DenseOperator& rho) {
  HermEig eig = herm_eig(rho);
  double s = 0.0;
  for (double l : eig.eigenvalues)
    if (l > 1e-15) s -= l * std::log(l);
  return s;
}

SchmidtDecomposition schmidt_decompose(const DenseKet& ket,
                                       const std::vector<std::size_t>& left_modes) {
  const std::size_t nm = ket.space.num_modes();
  for (std::size_t i = 0; i < left_modes.size(); ++i) {
    require(left_modes[i] < nm, "schmidt_decompose: invalid mode ", left_modes[i]);
    if (i) require(left_modes[i] > left_modes[i - 1], "schmidt_decompose: modes must ascend");
  }
  require(!left_modes.empty() && left_modes.size() < nm,
          "schmidt_decompose: split must be a proper nonempty bipartition");

  const std::vector<std::size_t> right_modes = complement_modes(nm, left_modes);
  std::vector<std::size_t> perm = left_modes;
  perm.insert(perm.end(), right_modes.begin(), right_modes.end());
  DenseKet p = permute_ket_modes(ket, perm);

  const ModeSpace lsp = ket.space.subspace(left_modes);
  const ModeSpace rsp = ket.space.subspace(right_modes);
  DenseOperator m(lsp, rsp, p.amp);  // amplitude matrix, rows = left index

  Svd s = svd(m);
  SchmidtDecomposition out;
  const std::size_t k = s.singular_values.size();
  out.coefficients = s.singular_values;
  out.left.reserve(k);
  out.right.reserve(k);
  for (std::size_t c = 0; c < k; ++c) {
    DenseKet l(lsp), r(rsp);
    for (int64_t i = 0; i < l.dim(); ++i) l.amp[static_cast<std::size_t>(i)] = s.u.at(i, static_cast<int64_t>(c));
    for (int64_t i = 0; i < r.dim(); ++i) r.amp[static_cast<std::size_t>(i)] = s.vconj.at(i, static_cast<int64_t>(c));
    out.left.push_back(std::move(l));
    out.right.push_back(std::move(r));
  }
  return out;
}

}  // namespace cqec
