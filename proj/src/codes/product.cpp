#include <cmath>

#include "cqec/codes.hpp"
#include "cqec/util.hpp"

namespace cqec {

Code permutation_covariant_code(const Code& base, const FiniteGroup& g,
                                const GroupAction& action, int64_t max_encoder_entries,
                                int64_t max_decoder_entries) {
  require(base.encoder.has_value(), "permutation_covariant_code: base must have an isometry");
  validate_action(g, action);
  const int64_t blocks = action.set_size;
  const DenseOperator& e0 = *base.encoder;

  // dense size guard: (in·out)^{blocks} entries
  double entries = 1.0;
  for (int64_t a = 0; a < blocks; ++a)
    entries *= static_cast<double>(e0.rows()) * static_cast<double>(e0.cols());
  require(entries <= static_cast<double>(max_encoder_entries),
          "permutation_covariant_code: instance too large (", entries, " encoder entries > ",
          max_encoder_entries, ")");

  Code c;
  c.kind = "permutation-product";
  c.group = g;
  c.params["blocks"] = std::to_string(blocks);
  c.params["group"] = g.name;

  DenseOperator e = e0;
  for (int64_t a = 1; a < blocks; ++a) e = tensor_product(e, e0);
  // block structure without labels (repeated labels are not unique)
  e.space_out.labels.clear();
  e.space_in.labels.clear();
  c.space_in = e.space_in;
  c.space_out = e.space_out;
  c.encoder = e;
  c.encoding = isometry_channel(e);

  ModeSpace base_in = base.space_in;
  base_in.labels.clear();
  ModeSpace base_out = base.space_out;
  base_out.labels.clear();
  c.rep_in = factor_permutation_rep(g, action, base_in);
  c.rep_out = factor_permutation_rep(g, action, base_out);

  // per-block decoders: base decoder on the damaged block, un-encoding on the
  // others; materialized only when the dense Kraus stay small
  const std::size_t bn = base.space_out.num_modes();
  const int64_t kept_dim = c.space_out.total() / base.space_out.dims[0];
  if (!base.decoders.empty() &&
      kept_dim * c.space_in.total() <= max_decoder_entries) {
    Channel unenc = isometry_inverse_channel(e0);
    for (std::size_t m = 0; m < bn * static_cast<std::size_t>(blocks); ++m) {
      const std::size_t blk = m / bn, j = m % bn;
      auto it = base.decoders.find(j);
      if (it == base.decoders.end()) continue;
      Channel dec;
      bool first = true;
      for (std::size_t a = 0; a < static_cast<std::size_t>(blocks); ++a) {
        const Channel& piece = a == blk ? it->second : unenc;
        dec = first ? piece : tensor(dec, piece);
        first = false;
      }
      c.decoders.emplace(m, std::move(dec));
    }
  }
  return c;
}

Code gyroscope_code(const Code& base, const FiniteGroup& g) {
  require(base.encoder.has_value(), "gyroscope_code: base must have an isometry encoder");
  const DenseOperator& e0 = *base.encoder;
  const std::size_t bn = base.space_out.num_modes();
  const int64_t d = g.order;

  // embedded regular representation on every base mode and on the input
  Representation rin = embedded_regular_rep(g, base.space_in.total());
  std::vector<Representation> mode_reps;
  mode_reps.reserve(bn);
  for (std::size_t m = 0; m < bn; ++m)
    mode_reps.push_back(embedded_regular_rep(g, base.space_out.dims[m]));
  Representation anc = regular_representation(g);

  auto combined = [](const std::vector<const Representation*>& f) {
    return tensor_permutation_rep(f);
  };
  std::vector<const Representation*> code_factors;
  for (const Representation& r : mode_reps) code_factors.push_back(&r);
  Representation wout = combined(code_factors);  // W_g on the base output modes

  Code c;
  c.kind = "gyroscope";
  c.group = g;
  c.params["group"] = g.name;
  c.space_in = base.space_in;
  ModeSpace out = base.space_out;
  out.labels.clear();
  c.space_out = ModeSpace::concat(out, ModeSpace({d, d}, {"frame1", "frame2"}));
  c.rep_in = rin;
  {
    std::vector<const Representation*> f = code_factors;
    f.push_back(&anc);
    f.push_back(&anc);
    c.rep_out = combined(f);
  }

  // encoding channel: K_g = |G|^{-1/2} (W_g E0 U_in(g)†) ⊗ |g g⟩
  const double w = 1.0 / std::sqrt(static_cast<double>(d));
  Channel enc{c.space_in, c.space_out, {}};
  for (int e = 0; e < d; ++e) {
    DenseOperator rot = wout.apply_left(e, rin.apply_right(e0, g.inverse(e)));
    DenseOperator anc_col(ModeSpace({d, d}), ModeSpace::single(1));
    anc_col.at(e * d + e, 0) = cx{1.0, 0.0};
    DenseOperator k = tensor_product(rot, anc_col).relabeled(c.space_out, c.space_in);
    kern::scal(k.a.data(), k.a.size(), cx{w, 0.0});
    enc.kraus.push_back(std::move(k));
  }
  enc.validate(1e-10);
  c.encoding = enc;

  // decoders, share indices: base modes 0..bn-1, ancilla bn and bn+1.
  // Conditioned on a surviving ancilla reading g: undo W_g on the kept base
  // modes, decode (or un-encode) in frame, then return to the lab frame with
  // U_in(g).
  for (std::size_t s = 0; s < bn + 2; ++s) {
    const std::vector<std::size_t> keep = complement_modes(bn + 2, {s});
    ModeSpace kept = c.space_out.subspace(keep);
    Channel dec{kept, c.space_in, {}};

    if (s >= bn) {
      // lost an ancilla: measure the surviving one, un-rotate, un-encode
      Channel unenc = isometry_inverse_channel(e0);
      for (int e = 0; e < d; ++e) {
        DenseOperator anc_bra(ModeSpace::single(1), ModeSpace::single(d));
        anc_bra.at(0, e) = cx{1.0, 0.0};
        for (const DenseOperator& ku : unenc.kraus) {
          DenseOperator m = rin.apply_left(e, wout.apply_right(ku, g.inverse(e)));
          dec.kraus.push_back(tensor_product(m, anc_bra).relabeled(c.space_in, kept));
        }
      }
    } else {
      // lost base mode s: measure both ancilla (they agree on valid states)
      auto it = base.decoders.find(s);
      require(it != base.decoders.end(), "gyroscope_code: base decoder missing for mode ", s);
      const Channel& dbase = it->second;  // kept base modes → logical
      std::vector<const Representation*> f;
      for (std::size_t m = 0; m < bn; ++m)
        if (m != s) f.push_back(&mode_reps[m]);
      Representation wkept = combined(f);
      for (int e = 0; e < d; ++e)
        for (int h = 0; h < d; ++h) {
          DenseOperator anc_bra(ModeSpace::single(1), ModeSpace({d, d}));
          anc_bra.at(0, e * d + h) = cx{1.0, 0.0};
          for (const DenseOperator& kb : dbase.kraus) {
            DenseOperator m = rin.apply_left(e, wkept.apply_right(kb, g.inverse(e)));
            dec.kraus.push_back(tensor_product(m, anc_bra).relabeled(c.space_in, kept));
          }
        }
    }
    dec.validate(1e-9);
    c.decoders.emplace(s, std::move(dec));
  }
  return c;
}

}  // namespace cqec
