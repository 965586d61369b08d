#include <algorithm>
#include <cmath>

#include "cqec/codes.hpp"
#include "cqec/linalg.hpp"
#include "cqec/rng.hpp"
#include "cqec/util.hpp"

namespace cqec {

DenseOperator invariant_subspace_isometry(const FiniteGroup& g, int n) {
  const int64_t d = g.order;
  ModeSpace dom;
  ModeSpace cod;
  for (int m = 0; m < n; ++m) dom = m == 0 ? ModeSpace::single(d) : ModeSpace::concat(dom, ModeSpace::single(d));
  for (int m = 0; m < n + 1; ++m)
    cod = m == 0 ? ModeSpace::single(d) : ModeSpace::concat(cod, ModeSpace::single(d));

  DenseOperator mm(cod, dom);
  const double w = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<int64_t> hidx(static_cast<std::size_t>(n));
  std::vector<int64_t> out_idx(static_cast<std::size_t>(n + 1));
  const int64_t dn = dom.total();
  for (int64_t h = 0; h < dn; ++h) {
    int64_t x = h;
    for (std::size_t m = static_cast<std::size_t>(n); m-- > 0;) {
      hidx[m] = x % d;
      x /= d;
    }
    for (int e = 0; e < d; ++e) {
      for (std::size_t m = 0; m < static_cast<std::size_t>(n); ++m)
        out_idx[m] = g.op(e, static_cast<int>(hidx[m]));
      out_idx[static_cast<std::size_t>(n)] = e;
      int64_t flat = 0;
      for (std::size_t m = 0; m < static_cast<std::size_t>(n + 1); ++m)
        flat = flat * d + out_idx[m];
      mm.at(flat, h) += cx{w, 0.0};
    }
  }
  return mm;
}

namespace {

// Schmidt decoder for erasure of register r1 (=output mode 0): apply
// I_1 ⊗ (U23^T V_{2..n}) and keep register 2.
Channel schmidt_decoder(const RandomCodeDiagnostics& diag, const FiniteGroup& g, int n,
                        const ModeSpace& space_in) {
  const int64_t d = g.order;
  ModeSpace s2n;
  for (int m = 0; m < n - 1; ++m)
    s2n = m == 0 ? ModeSpace::single(d) : ModeSpace::concat(s2n, ModeSpace::single(d));

  DenseOperator u23t = diag.schmidt_u01.transpose().relabeled(ModeSpace({d, d}), ModeSpace({d, d}));
  DenseOperator op = mul(embed_operator(s2n, {0, 1}, u23t), diag.schmidt_v2n.relabeled(s2n, s2n));

  ModeSpace full;  // registers 1..n
  for (int m = 0; m < n; ++m)
    full = m == 0 ? ModeSpace::single(d) : ModeSpace::concat(full, ModeSpace::single(d));
  DenseOperator w = tensor_product(DenseOperator::identity(ModeSpace::single(d)), op)
                        .relabeled(full, full);
  Channel dec = apply_then_keep_one(w, 1);
  dec.space_out = space_in;
  for (DenseOperator& k : dec.kraus) k.space_out = space_in;
  return dec;
}

RandomCodeDiagnostics build_diagnostics(const DenseKet& psi, const FiniteGroup& g, int n) {
  RandomCodeDiagnostics diag;
  diag.psi = psi;
  DenseOperator rho = density(psi);
  diag.psi0 = partial_trace(rho, {0});
  diag.psi01 = partial_trace(rho, {0, 1});

  const int64_t d = g.order;
  SchmidtDecomposition sd = schmidt_decompose(psi, {0, 1});
  diag.lambda.resize(sd.coefficients.size());
  for (std::size_t i = 0; i < sd.coefficients.size(); ++i)
    diag.lambda[i] = sd.coefficients[i] * sd.coefficients[i];

  // U01: |L_k⟩ → |k⟩ with the pair label (i,j) = (k / d, k % d)
  const int64_t d2 = d * d;
  DenseOperator u01(ModeSpace({d, d}), ModeSpace({d, d}));
  require(static_cast<int64_t>(sd.left.size()) == d2,
          "random code: unexpected Schmidt rank bookkeeping");
  for (int64_t k = 0; k < d2; ++k)
    for (int64_t c = 0; c < d2; ++c)
      u01.at(k, c) = std::conj(sd.left[static_cast<std::size_t>(k)].amp[static_cast<std::size_t>(c)]);
  diag.schmidt_u01 = u01;

  // V: |R_k⟩ → |i j 0…0⟩; complete the remaining rows with an orthonormal
  // basis of the complement, assigned to the unused row slots in order.
  const int64_t dr = sd.right.empty() ? 0 : sd.right[0].dim();
  DenseOperator v(ModeSpace::single(dr), ModeSpace::single(dr));
  std::vector<bool> row_used(static_cast<std::size_t>(dr), false);
  const int64_t stride = dr / d2;  // d^{n-3} entries per (i,j) block start spacing
  for (int64_t k = 0; k < d2; ++k) {
    const int64_t row = k * stride;
    row_used[static_cast<std::size_t>(row)] = true;
    for (int64_t c = 0; c < dr; ++c)
      v.at(row, c) = std::conj(sd.right[static_cast<std::size_t>(k)].amp[static_cast<std::size_t>(c)]);
  }
  // Gram-Schmidt completion against the already-placed rows
  std::vector<std::vector<cx>> basis;
  basis.reserve(static_cast<std::size_t>(d2));
  for (int64_t k = 0; k < d2; ++k)
    basis.push_back(sd.right[static_cast<std::size_t>(k)].amp);
  int64_t next_row = 0;
  for (int64_t cand = 0; cand < dr && static_cast<int64_t>(basis.size()) < dr; ++cand) {
    std::vector<cx> vcand(static_cast<std::size_t>(dr), cx{0, 0});
    vcand[static_cast<std::size_t>(cand)] = cx{1, 0};
    for (const auto& b : basis) {
      const cx ov = kern::dotc(b.data(), vcand.data(), b.size());
      kern::axpy(vcand.data(), b.data(), b.size(), -ov);
    }
    double nn = 0.0;
    for (const cx& x : vcand) nn += std::norm(x);
    if (nn < 1e-12) continue;
    kern::scal(vcand.data(), vcand.size(), cx{1.0 / std::sqrt(nn), 0});
    while (row_used[static_cast<std::size_t>(next_row)]) ++next_row;
    row_used[static_cast<std::size_t>(next_row)] = true;
    for (int64_t c = 0; c < dr; ++c)
      v.at(next_row, c) = std::conj(vcand[static_cast<std::size_t>(c)]);
    basis.push_back(std::move(vcand));
  }
  require(static_cast<int64_t>(basis.size()) == dr, "random code: V completion failed");
  require(v.is_unitary(1e-8), "random code: Schmidt V not unitary");
  diag.schmidt_v2n = v;
  return diag;
}

}  // namespace

RandomCovariantCode random_covariant_code(const FiniteGroup& g, int n, std::uint64_t seed,
                                          int64_t max_total_dim, double singular_cutoff) {
  require(n >= 3, "random_covariant_code: n must be >= 3");
  const int64_t d = g.order;
  double dn = 1.0;
  for (int m = 0; m < n; ++m) dn *= static_cast<double>(d);
  require(dn <= static_cast<double>(max_total_dim),
          "random_covariant_code: instance too large (d^n = ", dn, " > ", max_total_dim, ")");

  DenseOperator m = invariant_subspace_isometry(g, n);
  Rng rng(seed);
  DenseKet phi = random_haar_ket(m.space_in, rng);
  DenseKet psi = apply(m, phi);

  RandomCodeDiagnostics diag = build_diagnostics(psi, g, n);

  // E = √d ⟨φ⁺|_{in,0}|Ψ⟩ : E[m?, i] = √d Ψ[(i, m?)]
  ModeSpace out_sp;
  for (int k = 1; k <= n; ++k)
    out_sp = k == 1 ? ModeSpace::single(d) : ModeSpace::concat(out_sp, ModeSpace::single(d));
  ModeSpace in_sp = ModeSpace::single(d, "in");
  DenseOperator e(out_sp, in_sp);
  const int64_t rest = out_sp.total();
  const double sqd = std::sqrt(static_cast<double>(d));
  for (int64_t i = 0; i < d; ++i)
    for (int64_t r = 0; r < rest; ++r)
      e.at(r, i) = sqd * psi.amp[static_cast<std::size_t>(i * rest + r)];

  DenseOperator ete = mul_hn(e, e);
  HermEig eig = herm_eig(ete, 1e-9);
  require(eig.eigenvalues.front() > singular_cutoff,
          "random_covariant_code: near-singular E†E; resample (λmin = ",
          eig.eigenvalues.front(), ")");
  DenseOperator t = mul(e, psd_func(ete, PsdFunc::InvSqrt, 0.0));
  require(t.is_isometry(1e-9), "random_covariant_code: T not an isometry");

  RandomCovariantCode rc;
  rc.diag = std::move(diag);
  Code& c = rc.code;
  c.kind = "random-covariant";
  c.group = g;
  c.params["group"] = g.name;
  c.params["n"] = std::to_string(n);
  c.params["seed"] = std::to_string(seed);
  c.space_in = in_sp;
  c.space_out = out_sp;
  c.encoder = t;
  c.encoding = isometry_channel(t);
  c.rep_in = regular_representation(g);
  {
    Representation reg = regular_representation(g);
    std::vector<const Representation*> f(static_cast<std::size_t>(n), &reg);
    c.rep_out = tensor_permutation_rep(f);
  }
  c.decoders.emplace(0, schmidt_decoder(rc.diag, g, n, in_sp));
  return rc;
}

Channel random_code_decoder_for_mode(const FiniteGroup& g, const RandomCovariantCode& rc,
                                     std::size_t j) {
  require(j < rc.code.space_out.num_modes(), "random_code_decoder_for_mode: bad mode ", j);
  if (j == 0) return rc.code.decoders.at(0);
  const int n = static_cast<int>(rc.code.space_out.num_modes());
  // permute invariant-state registers 1 ↔ j+1 and rebuild the Schmidt decoder
  std::vector<std::size_t> perm(static_cast<std::size_t>(n + 1));
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::swap(perm[1], perm[j + 1]);
  DenseKet psi_p = permute_ket_modes(rc.diag.psi, perm);
  RandomCodeDiagnostics diag = build_diagnostics(psi_p, g, n);
  return schmidt_decoder(diag, g, n, rc.code.space_in);
}

}  // namespace cqec
