#include "cqec/channel.hpp"

#include <algorithm>
#include <cmath>

#include "cqec/linalg.hpp"
#include "cqec/util.hpp"

namespace cqec {

double Channel::trace_preservation_residual() const {
  DenseOperator g(space_in, space_in);
  for (const DenseOperator& k : kraus)
    kern::gemm_hn(g.a.data(), k.a.data(), k.a.data(), k.cols(), k.rows(), k.cols());
  for (int64_t i = 0; i < g.rows(); ++i) g.at(i, i) -= cx{1.0, 0.0};
  return g.max_abs();
}

void Channel::validate(double tol) const {
  require(!kraus.empty(), "channel: no Kraus operators");
  for (const DenseOperator& k : kraus)
    require(k.rows() == space_out.total() && k.cols() == space_in.total(),
            "channel: Kraus shape mismatch");
  const double r = trace_preservation_residual();
  require(r <= tol, "channel: trace preservation residual ", r, " exceeds ", tol);
}

Channel identity_channel(const ModeSpace& s) {
  return Channel{s, s, {DenseOperator::identity(s)}};
}

Channel unitary_channel(const DenseOperator& u) {
  require(u.is_square(), "unitary_channel: not square");
  return Channel{u.space_in, u.space_out, {u}};
}

Channel isometry_channel(const DenseOperator& v) {
  return Channel{v.space_in, v.space_out, {v}};
}

DenseOperator apply(const Channel& ch, const DenseOperator& rho) {
  require(rho.is_square() && rho.rows() == ch.space_in.total(),
          "apply: state shape does not match channel input");
  DenseOperator out(ch.space_out, ch.space_out);
  for (const DenseOperator& k : ch.kraus) {
    DenseOperator t = mul(k, rho);
    kern::gemm_nh(out.a.data(), t.a.data(), k.a.data(), t.rows(), t.cols(), k.rows());
  }
  return out;
}

std::vector<DenseKet> apply_ensemble(const Channel& ch, const std::vector<DenseKet>& kets) {
  std::vector<DenseKet> out;
  out.reserve(kets.size() * ch.kraus.size());
  for (const DenseKet& v : kets)
    for (const DenseOperator& k : ch.kraus) out.push_back(apply(k, v));
  return out;
}

double fidelity_pure_ensemble(const DenseKet& kappa, const std::vector<DenseKet>& ensemble) {
  double s = 0.0;
  for (const DenseKet& v : ensemble) s += std::norm(inner(kappa, v));
  return std::sqrt(std::min(s, 1.0 + 1e-9));
}

Channel compose(const Channel& a, const Channel& b) {
  require(a.space_out.same_dims(b.space_in), "compose: a.space_out != b.space_in");
  Channel c{a.space_in, b.space_out, {}};
  c.kraus.reserve(a.kraus.size() * b.kraus.size());
  for (const DenseOperator& kb : b.kraus)
    for (const DenseOperator& ka : a.kraus) c.kraus.push_back(mul(kb, ka));
  return c;
}

Channel tensor(const Channel& a, const Channel& b) {
  Channel c{ModeSpace::concat(a.space_in, b.space_in),
            ModeSpace::concat(a.space_out, b.space_out),
            {}};
  c.kraus.reserve(a.kraus.size() * b.kraus.size());
  for (const DenseOperator& ka : a.kraus)
    for (const DenseOperator& kb : b.kraus) c.kraus.push_back(tensor_product(ka, kb));
  return c;
}

DenseOperator erase_and_fill(const DenseOperator& rho, std::size_t j) {
  require(rho.is_square() && rho.space_out.same_dims(rho.space_in),
          "erase_and_fill: state must be square over one ModeSpace");
  const ModeSpace& sp = rho.space_out;
  require(j < sp.num_modes(), "erase_and_fill: invalid mode index ", j);
  const std::vector<std::size_t> keep = complement_modes(sp.num_modes(), {j});
  DenseOperator red = partial_trace(rho, keep);

  const int64_t dj = sp.dims[j];
  const std::vector<int64_t> strides = sp.strides();
  // offsets of kept multi-indices in the full space
  const int64_t kept_total = red.rows();
  std::vector<int64_t> off(static_cast<std::size_t>(kept_total));
  for (int64_t f = 0; f < kept_total; ++f) {
    int64_t x = f, o = 0;
    for (std::size_t i = keep.size(); i-- > 0;) {
      const std::size_t m = keep[i];
      o += (x % sp.dims[m]) * strides[m];
      x /= sp.dims[m];
    }
    off[static_cast<std::size_t>(f)] = o;
  }

  DenseOperator out(sp, sp);
  const int64_t n = sp.total();
  const cx w{1.0 / static_cast<double>(dj), 0.0};
  for (int64_t m = 0; m < dj; ++m) {
    const int64_t mo = m * strides[j];
    for (int64_t r = 0; r < kept_total; ++r)
      for (int64_t c = 0; c < kept_total; ++c)
        out.a[static_cast<std::size_t>((off[static_cast<std::size_t>(r)] + mo) * n +
                                       off[static_cast<std::size_t>(c)] + mo)] =
            w * red.at(r, c);
  }
  return out;
}

Channel erase_and_fill_channel(const ModeSpace& s, std::size_t j) {
  require(j < s.num_modes(), "erase_and_fill_channel: invalid mode ", j);
  const int64_t dj = s.dims[j];
  const double w = 1.0 / std::sqrt(static_cast<double>(dj));
  Channel ch{s, s, {}};
  DenseOperator unit(ModeSpace::single(dj), ModeSpace::single(dj));
  for (int64_t m = 0; m < dj; ++m)
    for (int64_t k = 0; k < dj; ++k) {
      std::fill(unit.a.begin(), unit.a.end(), cx{0, 0});
      unit.at(m, k) = cx{w, 0.0};
      ch.kraus.push_back(embed_operator(s, {j}, unit).relabeled(s, s));
    }
  return ch;
}

Channel trace_out_channel(const ModeSpace& s, std::size_t j) {
  require(j < s.num_modes(), "trace_out_channel: invalid mode ", j);
  const std::vector<std::size_t> keep = complement_modes(s.num_modes(), {j});
  ModeSpace kept = s.subspace(keep);
  const int64_t dj = s.dims[j];
  const std::vector<int64_t> strides = s.strides();
  const int64_t kept_total = kept.total();

  Channel ch{s, kept, {}};
  for (int64_t m = 0; m < dj; ++m) {
    DenseOperator k(kept, s);
    for (int64_t f = 0; f < kept_total; ++f) {
      int64_t x = f, o = m * strides[j];
      for (std::size_t i = keep.size(); i-- > 0;) {
        const std::size_t mm = keep[i];
        o += (x % s.dims[mm]) * strides[mm];
        x /= s.dims[mm];
      }
      k.at(f, o) = cx{1.0, 0.0};
    }
    ch.kraus.push_back(std::move(k));
  }
  return ch;
}

Channel isometry_erase_channel(const DenseOperator& e, std::size_t j) {
  const ModeSpace& sp = e.space_out;
  require(j < sp.num_modes(), "isometry_erase_channel: invalid mode ", j);
  const std::vector<std::size_t> keep = complement_modes(sp.num_modes(), {j});
  ModeSpace kept = sp.subspace(keep);
  const int64_t dj = sp.dims[j];
  const std::vector<int64_t> strides = sp.strides();
  const int64_t kept_total = kept.total();
  const int64_t cols = e.cols();

  Channel ch{e.space_in, kept, {}};
  for (int64_t m = 0; m < dj; ++m) {
    DenseOperator k(kept, e.space_in);
    for (int64_t f = 0; f < kept_total; ++f) {
      int64_t x = f, o = m * strides[j];
      for (std::size_t i = keep.size(); i-- > 0;) {
        const std::size_t mm = keep[i];
        o += (x % sp.dims[mm]) * strides[mm];
        x /= sp.dims[mm];
      }
      std::copy_n(e.a.begin() + o * cols, cols, k.a.begin() + f * cols);
    }
    ch.kraus.push_back(std::move(k));
  }
  return ch;
}

DenseOperator choi(const Channel& ch) {
  const int64_t D = ch.space_out.total() * ch.space_in.total();
  ModeSpace cs = ModeSpace::concat(ch.space_out, ch.space_in);
  DenseOperator c(cs, cs);
  for (const DenseOperator& k : ch.kraus) {
    // C += vec(K) vec(K)†, vec(K)[(o,i)] = K[o,i]
    for (int64_t x = 0; x < D; ++x) {
      const cx vx = k.a[static_cast<std::size_t>(x)];
      if (vx == cx{0, 0}) continue;
      for (int64_t y = 0; y < D; ++y)
        c.a[static_cast<std::size_t>(x * D + y)] += vx * std::conj(k.a[static_cast<std::size_t>(y)]);
    }
  }
  return c;
}

double choi_distance(const Channel& a, const Channel& b) {
  require(a.space_in.total() == b.space_in.total() &&
              a.space_out.total() == b.space_out.total(),
          "choi_distance: channel shapes differ");
  return trace_norm(sub(choi(a), choi(b)));
}

double choi_distance_lowrank(const Channel& a, const Channel& b) {
  require(a.space_in.total() == b.space_in.total() &&
              a.space_out.total() == b.space_out.total(),
          "choi_distance_lowrank: channel shapes differ");
  const std::size_t ra = a.kraus.size(), rb = b.kraus.size();
  const std::size_t r = ra + rb;
  auto vec_of = [&](std::size_t i) -> const DenseOperator& {
    return i < ra ? a.kraus[i] : b.kraus[i - ra];
  };
  // Gram matrix S[k,l] = tr(K_k† K_l) = ⟨vec K_k, vec K_l⟩
  ModeSpace rs = ModeSpace::single(static_cast<int64_t>(r));
  DenseOperator s(rs, rs);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t l = 0; l < r; ++l)
      s.at(static_cast<int64_t>(i), static_cast<int64_t>(l)) =
          kern::dotc(vec_of(i).a.data(), vec_of(l).a.data(), vec_of(i).a.size());
  // Δ = W D W† with D = diag(+1 on a, −1 on b); nonzero spectrum of Δ equals
  // the spectrum of S^{1/2} D S^{1/2}.
  DenseOperator sh = psd_func(s, PsdFunc::Sqrt, -1.0, 1e-6);
  DenseOperator d(rs, rs);
  for (std::size_t i = 0; i < r; ++i)
    d.at(static_cast<int64_t>(i), static_cast<int64_t>(i)) = i < ra ? cx{1, 0} : cx{-1, 0};
  DenseOperator h = mul(mul(sh, d), sh);
  HermEig eig = herm_eig(h, 1e-7);
  double t = 0.0;
  for (double l : eig.eigenvalues) t += std::abs(l);
  return t;
}

Channel exact_erasure_decoder(const DenseOperator& e, std::size_t j, double kl_tol,
                              int64_t reset_index) {
  Channel enc_erase = isometry_erase_channel(e, j);
  const std::vector<DenseOperator>& bs = enc_erase.kraus;
  const int64_t din = e.cols();
  const int64_t dj = static_cast<int64_t>(bs.size());

  // B_m† B_m' = C[m,m'] · I is the Knill–Laflamme condition for this erasure.
  ModeSpace cs = ModeSpace::single(dj);
  DenseOperator c(cs, cs);
  for (int64_t m = 0; m < dj; ++m)
    for (int64_t mp = 0; mp < dj; ++mp) {
      DenseOperator g = mul_hn(bs[static_cast<std::size_t>(m)], bs[static_cast<std::size_t>(mp)]);
      const cx cv = g.trace() / static_cast<double>(din);
      for (int64_t i = 0; i < din; ++i) g.at(i, i) -= cv;
      require(g.max_abs() <= kl_tol,
              "exact_erasure_decoder: erasure of mode ", j,
              " is not correctable (KL residual ", g.max_abs(), ")");
      c.at(m, mp) = cv;
    }

  HermEig eig = herm_eig(c, 1e-10);
  const double pmax = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.back();

  const ModeSpace& kept = enc_erase.space_out;
  Channel dec{kept, e.space_in, {}};
  DenseOperator range_proj(kept, kept);  // Σ_α K̃_α K̃_α†
  for (int64_t al = 0; al < dj; ++al) {
    const double p = eig.eigenvalues[static_cast<std::size_t>(al)];
    if (p <= 1e-12 * std::max(pmax, 1e-300)) continue;
    DenseOperator kt(kept, e.space_in);
    for (int64_t m = 0; m < dj; ++m)
      add_scaled_into(kt, bs[static_cast<std::size_t>(m)],
                      eig.eigenvectors.at(m, al) / std::sqrt(p));
    kern::gemm_nh(range_proj.a.data(), kt.a.data(), kt.a.data(), kt.rows(), kt.cols(),
                  kt.rows());
    dec.kraus.push_back(kt.adjoint());
  }

  // complete to a trace-preserving map: junk basis states reset to |reset⟩
  for (int64_t i = 0; i < range_proj.rows(); ++i) range_proj.at(i, i) -= cx{1, 0};
  HermEig pe = herm_eig(scale(range_proj, cx{-1, 0}), 1e-8);
  for (std::size_t i = 0; i < pe.eigenvalues.size(); ++i) {
    if (pe.eigenvalues[i] < 0.5) continue;  // eigenvalue 1 ↔ outside the range
    DenseOperator k(e.space_in, kept);
    for (int64_t rr = 0; rr < kept.total(); ++rr)
      k.at(reset_index, rr) = std::conj(pe.eigenvectors.at(rr, static_cast<int64_t>(i)));
    dec.kraus.push_back(std::move(k));
  }
  return dec;
}

Channel isometry_inverse_channel(const DenseOperator& e, int64_t reset_index) {
  require(e.is_isometry(1e-9), "isometry_inverse_channel: not an isometry");
  Channel ch{e.space_out, e.space_in, {e.adjoint()}};
  // complement of range(E): eigenvectors of I − EE† with eigenvalue 1
  DenseOperator proj(e.space_out, e.space_out);
  kern::gemm_nh(proj.a.data(), e.a.data(), e.a.data(), e.rows(), e.cols(), e.rows());
  DenseOperator comp = sub(DenseOperator::identity(e.space_out), proj);
  HermEig pe = herm_eig(comp, 1e-8);
  for (std::size_t i = 0; i < pe.eigenvalues.size(); ++i) {
    if (pe.eigenvalues[i] < 0.5) continue;
    DenseOperator k(e.space_in, e.space_out);
    for (int64_t r = 0; r < e.rows(); ++r)
      k.at(reset_index, r) = std::conj(pe.eigenvectors.at(r, static_cast<int64_t>(i)));
    ch.kraus.push_back(std::move(k));
  }
  return ch;
}

Channel apply_then_keep_one(const DenseOperator& w, std::size_t keep) {
  const ModeSpace& sp = w.space_out;
  require(keep < sp.num_modes(), "apply_then_keep_one: invalid mode ", keep);
  const std::vector<std::size_t> traced = complement_modes(sp.num_modes(), {keep});
  ModeSpace kept = sp.subspace({keep});
  const std::vector<int64_t> strides = sp.strides();
  int64_t traced_total = 1;
  for (std::size_t m : traced) traced_total *= sp.dims[m];
  const int64_t dk = sp.dims[keep], cols = w.cols();

  Channel ch{w.space_in, kept, {}};
  for (int64_t t = 0; t < traced_total; ++t) {
    int64_t x = t, base = 0;
    for (std::size_t i = traced.size(); i-- > 0;) {
      const std::size_t m = traced[i];
      base += (x % sp.dims[m]) * strides[m];
      x /= sp.dims[m];
    }
    DenseOperator k(kept, w.space_in);
    for (int64_t v = 0; v < dk; ++v)
      std::copy_n(w.a.begin() + (base + v * strides[keep]) * cols, cols, k.a.begin() + v * cols);
    ch.kraus.push_back(std::move(k));
  }
  return ch;
}

}  // namespace cqec
