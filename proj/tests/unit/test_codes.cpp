#include "doctest.h"

#include <cmath>

#include "cqec/codes.hpp"
#include "cqec/linalg.hpp"
#include "cqec/rng.hpp"

using namespace cqec;

namespace {

// encode → erase mode j → decode, for decoders declared on the kept modes
DenseOperator run_pipeline_kept(const Code& c, std::size_t j, const DenseOperator& rho) {
  DenseOperator enc = apply(c.encoding, rho);
  const std::vector<std::size_t> keep = complement_modes(c.space_out.num_modes(), {j});
  DenseOperator kept = partial_trace(enc, keep);
  kept.space_out = c.decoders.at(j).space_in;
  kept.space_in = c.decoders.at(j).space_in;
  return apply(c.decoders.at(j), kept);
}

DenseKet random_input(const Code& c, Rng& rng) { return random_haar_ket(c.space_in, rng); }

}  // namespace

TEST_SUITE("codes_qutrit") {

TEST_CASE("qutrit code: exact isometry, marginals, perfect recovery") {
  Code c = qutrit_base_code();
  CHECK(c.encoder->is_isometry(1e-14));

  Rng rng(2);
  for (int rep = 0; rep < 3; ++rep) {
    DenseKet k = random_input(c, rng);
    DenseOperator enc = apply(c.encoding, density(k));
    // every single-mode marginal of every encoded pure state equals τ
    for (std::size_t m = 0; m < 3; ++m) {
      DenseOperator marg = partial_trace(enc, {m});
      DenseOperator tau = scale(DenseOperator::identity(marg.space_out), cx{1.0 / 3.0, 0});
      CHECK(max_abs_diff(marg, tau) < 1e-12);
    }
    for (std::size_t j = 0; j < 3; ++j) {
      DenseOperator rec = run_pipeline_kept(c, j, density(k));
      CHECK(fidelity_pure(k, rec) >= 1.0 - 1e-12);
    }
  }
}

TEST_CASE("repetition-style embedding is not erasure correcting") {
  // |x⟩ → |x,x,x⟩ on qubits: the decoder construction must reject it
  ModeSpace in = ModeSpace::single(2);
  ModeSpace out({2, 2, 2});
  DenseOperator e(out, in);
  e.at(0, 0) = cx{1, 0};
  e.at(7, 1) = cx{1, 0};
  CHECK_THROWS_WITH_AS(exact_erasure_decoder(e, 0), doctest::Contains("not correctable"),
                       std::runtime_error);
}

}  // TEST_SUITE

TEST_SUITE("codes_u1") {

TEST_CASE("lattice window invariants and the K=1 encoded column") {
  LatticeWindow w = make_lattice_window(1, 1);
  Code c = u1_lattice_code(w);
  CHECK(c.encoder_norm_constant == 3.0);
  CHECK(c.encoder->is_isometry(1e-13));

  // |x=0⟩ → (1/√3)(|3,−1,−2⟩ + |0,0,0⟩ + |−3,1,2⟩)
  const int64_t x0 = 1;  // index of x = 0 in grid {−1,0,1}
  const double w3 = 1.0 / std::sqrt(3.0);
  auto idx = [&](int64_t m1, int64_t m2, int64_t m3) {
    auto find = [](const std::vector<int64_t>& g, int64_t v) {
      return static_cast<int64_t>(std::lower_bound(g.begin(), g.end(), v) - g.begin());
    };
    return flatten({find(w.mode_grids[0], m1), find(w.mode_grids[1], m2),
                    find(w.mode_grids[2], m3)},
                   c.space_out.dims);
  };
  CHECK(std::abs(c.encoder->at(idx(3, -1, -2), x0) - cx{w3, 0}) < 1e-15);
  CHECK(std::abs(c.encoder->at(idx(0, 0, 0), x0) - cx{w3, 0}) < 1e-15);
  CHECK(std::abs(c.encoder->at(idx(-3, 1, 2), x0) - cx{w3, 0}) < 1e-15);

  // exact charge conservation on every nonzero entry
  for (int64_t r = 0; r < c.encoder->rows(); ++r) {
    std::vector<int64_t> mi = unflatten(r, c.space_out.dims);
    const int64_t qout = c.charges_out[0].charges[static_cast<std::size_t>(mi[0])] +
                         c.charges_out[1].charges[static_cast<std::size_t>(mi[1])] +
                         c.charges_out[2].charges[static_cast<std::size_t>(mi[2])];
    for (int64_t col = 0; col < c.encoder->cols(); ++col) {
      if (std::abs(c.encoder->at(r, col)) == 0.0) continue;
      CHECK(qout == c.charges_in[0].charges[static_cast<std::size_t>(col)]);
    }
  }
}

TEST_CASE("corrected lattice maps recover exactly after loss of mode 1") {
  LatticeWindow w = make_lattice_window(2, 6);
  Code c = u1_lattice_code(w);
  Rng rng(9);
  for (int rep = 0; rep < 5; ++rep) {
    DenseKet k = random_input(c, rng);
    DenseOperator rec = run_pipeline_kept(c, 0, density(k));
    CHECK(fidelity_pure(k, rec) >= 1.0 - 1e-12);
  }
}

TEST_CASE("losses of modes 2 and 3 reproduce the window dephasing law exactly") {
  // The sharp summation window admits only 2K+1−|Δx| coherent terms for an
  // off-diagonal |x1⟩⟨x2|; the shipped decoders achieve exactly this optimum.
  LatticeWindow w = make_lattice_window(2, 5);
  Code c = u1_lattice_code(w);
  const int64_t L = w.input_bound, K = w.summation_bound;
  Rng rng(13);
  for (std::size_t j : {std::size_t{1}, std::size_t{2}}) {
    DenseKet k = random_input(c, rng);
    DenseOperator rho = density(k);
    DenseOperator rec = run_pipeline_kept(c, j, rho);
    for (int64_t a = 0; a < 2 * L + 1; ++a)
      for (int64_t b = 0; b < 2 * L + 1; ++b) {
        const double fac =
            static_cast<double>(2 * K + 1 - std::abs(a - b)) / static_cast<double>(2 * K + 1);
        CHECK(std::abs(rec.at(a, b) - rho.at(a, b) * fac) < 1e-12);
      }
    // basis states still decode perfectly
    DenseOperator basis_rec = run_pipeline_kept(c, j, density(basis_ket(c.space_in, 0)));
    CHECK(fidelity_pure(basis_ket(c.space_in, 0), basis_rec) >= 1.0 - 1e-12);
  }
}

TEST_CASE("mode-1 grid is divisible by three on the whole reachable support") {
  LatticeWindow w = make_lattice_window(3, 8);
  for (int64_t v : w.mode_grids[0]) CHECK(v % 3 == 0);
  for (int64_t v : w.mode_grids[2]) CHECK(v % 2 == 0);
}

TEST_CASE("lattice maps: published-vs-corrected final steps differ") {
  const auto& steps = u1_decoder_steps();
  // loss of mode 1 final: (a,b) → (a+b, b)
  auto [a1, b1] = steps[0][2].map(5, -3);
  CHECK(a1 == 2);
  CHECK(b1 == -3);
  // loss of mode 2 final: (a,b) → (b−a, b)
  auto [a2, b2] = steps[1][2].map(5, -3);
  CHECK(a2 == -8);
  CHECK(b2 == -3);
  // loss of mode 3 final: (a,b) → (a+b, −b)
  auto [a3, b3] = steps[2][2].map(5, -3);
  CHECK(a3 == 2);
  CHECK(b3 == 3);
  // divisibility preconditions
  CHECK(steps[1][0].applies(-9, 4));
  CHECK_FALSE(steps[1][0].applies(-8, 4));
  CHECK_FALSE(steps[1][0].applies(-9, 3));
}

}  // TEST_SUITE

TEST_SUITE("codes_product") {

TEST_CASE("trivial group with one block returns the base construction") {
  Code base = qutrit_base_code();
  FiniteGroup z1 = make_cyclic(1);
  GroupAction a = self_action(z1);
  Code c = permutation_covariant_code(base, z1, a);
  CHECK(max_abs_diff(*c.encoder, *base.encoder) == 0.0);
}

TEST_CASE("Z2 two-block product: recovery inside each block") {
  Code base = qutrit_base_code();
  FiniteGroup z2 = make_cyclic(2);
  Code c = permutation_covariant_code(base, z2, self_action(z2));
  CHECK(c.space_in.total() == 9);
  CHECK(c.space_out.total() == 729);
  CHECK(c.encoder->is_isometry(1e-12));
  CHECK(c.decoders.size() == 6);

  Rng rng(21);
  DenseKet k = random_input(c, rng);  // entangled across blocks
  for (std::size_t j : {std::size_t{0}, std::size_t{4}}) {
    DenseOperator rec = run_pipeline_kept(c, j, density(k));
    CHECK(fidelity_pure(k, rec) >= 1.0 - 1e-10);
  }
}

TEST_CASE("oversized instances are rejected") {
  Code base = qutrit_base_code();
  FiniteGroup s3 = make_symmetric(3);
  CHECK_THROWS_WITH_AS(permutation_covariant_code(base, s3, self_action(s3)),
                       doctest::Contains("instance too large"), std::runtime_error);
}

}  // TEST_SUITE

TEST_SUITE("codes_gyroscope") {

TEST_CASE("trivial group appends two fixed ancilla") {
  Code base = qutrit_base_code();
  FiniteGroup z1 = make_cyclic(1);
  Code c = gyroscope_code(base, z1);
  CHECK(c.encoding.kraus.size() == 1);
  Rng rng(3);
  DenseKet k = random_input(c, rng);
  DenseOperator enc = apply(c.encoding, density(k));
  DenseOperator base_enc = apply(base.encoding, density(k));
  DenseOperator anc(ModeSpace({1, 1}), ModeSpace({1, 1}));
  anc.at(0, 0) = cx{1, 0};
  CHECK(max_abs_diff(enc, tensor_product(base_enc, anc).relabeled(enc.space_out, enc.space_in)) <
        1e-13);
}

TEST_CASE("Z2 gyroscope: every one of the five shares is recoverable") {
  Code base = qutrit_base_code();
  FiniteGroup z2 = make_cyclic(2);
  Code c = gyroscope_code(base, z2);
  CHECK(c.space_out.total() == 108);
  c.encoding.validate(1e-10);

  Rng rng(17);
  for (std::size_t s = 0; s < 5; ++s) {
    for (int rep = 0; rep < 3; ++rep) {
      DenseKet k = random_input(c, rng);
      DenseOperator rec = run_pipeline_kept(c, s, density(k));
      CHECK(fidelity_pure(k, rec) >= 1.0 - 1e-10);
    }
  }
}

}  // TEST_SUITE

TEST_SUITE("codes_random") {

TEST_CASE("invariant state and projector identities") {
  for (auto [dn, nn] : std::vector<std::array<int, 2>>{{2, 5}, {3, 3}}) {
    FiniteGroup g = make_cyclic(dn);
    const int n = nn;
    DenseOperator m = invariant_subspace_isometry(g, n);
    CHECK(m.is_isometry(1e-12));

    // tr_i Π = I on the remaining n registers, for each i
    DenseOperator pi(m.space_out, m.space_out);
    kern::gemm_nh(pi.a.data(), m.a.data(), m.a.data(), m.rows(), m.cols(), m.rows());
    for (std::size_t i = 0; i < static_cast<std::size_t>(n + 1); ++i) {
      DenseOperator red = partial_trace(pi, complement_modes(static_cast<std::size_t>(n + 1), {i}));
      CHECK(max_abs_diff(red, DenseOperator::identity(red.space_out)) < 1e-10);
    }

    RandomCovariantCode rc = random_covariant_code(g, n, 12345);
    // Ψ invariance under U(g)^{⊗(n+1)}
    Representation reg = regular_representation(g);
    std::vector<const Representation*> f(static_cast<std::size_t>(n + 1), &reg);
    Representation all = tensor_permutation_rep(f);
    for (int e = 0; e < g.order; ++e) {
      DenseKet rot = all.apply(e, rc.diag.psi);
      double diff = 0.0;
      for (std::size_t i = 0; i < rot.amp.size(); ++i)
        diff = std::max(diff, std::abs(rot.amp[i] - rc.diag.psi.amp[i]));
      CHECK(diff < 1e-12);
    }

    // E†E = d Ψ0^T, with E rebuilt from Ψ as an independent oracle
    const int64_t d = g.order;
    DenseOperator e(rc.code.space_out, rc.code.space_in);
    const int64_t rest = rc.code.space_out.total();
    for (int64_t i = 0; i < d; ++i)
      for (int64_t r = 0; r < rest; ++r)
        e.at(r, i) = std::sqrt(static_cast<double>(d)) *
                     rc.diag.psi.amp[static_cast<std::size_t>(i * rest + r)];
    DenseOperator ete = mul_hn(e, e);
    DenseOperator dpsi0t = scale(rc.diag.psi0.transpose(), cx{static_cast<double>(d), 0});
    CHECK(max_abs_diff(ete, dpsi0t.relabeled(ete.space_out, ete.space_in)) < 1e-10);

    // T covariance: U(g)^{⊗n} T = T U(g)
    CHECK(rc.code.encoder->is_isometry(1e-9));
    for (int eg = 0; eg < g.order; ++eg) {
      DenseOperator lhs = rc.code.rep_out->apply_left(eg, *rc.code.encoder);
      DenseOperator rhs = rc.code.rep_in->apply_right(*rc.code.encoder, eg);
      CHECK(max_abs_diff(lhs, rhs) < 1e-10);
    }

    // Schmidt form: (U01 ⊗ V)|Ψ⟩ = Σ √λ_k |k⟩|emb(k)⟩
    DenseOperator u01 = rc.diag.schmidt_u01;
    DenseOperator v = rc.diag.schmidt_v2n;
    DenseOperator uv = tensor_product(u01, v).relabeled(
        ModeSpace({d * d, rest / d}), ModeSpace({d * d, rest / d}));
    DenseKet psi_flat(ModeSpace({d * d, rest / d}), rc.diag.psi.amp);
    DenseKet rotated = apply(uv, psi_flat);
    const int64_t stride = (rest / d) / (d * d);
    for (int64_t k = 0; k < d * d; ++k) {
      const cx amp = rotated.amp[static_cast<std::size_t>(k * (rest / d) + k * stride)];
      CHECK(std::abs(amp - cx{std::sqrt(rc.diag.lambda[static_cast<std::size_t>(k)]), 0}) <
            1e-9);
    }

    // decoder is a valid channel and recovery is decent (approximate code)
    rc.code.decoders.at(0).validate(1e-9);
    Rng rng(7);
    DenseKet kappa = random_haar_ket(rc.code.space_in, rng);
    DenseOperator enc = apply(rc.code.encoding, density(kappa));
    DenseOperator filled = erase_and_fill(enc, 0);
    DenseOperator rec = apply(rc.code.decoders.at(0), filled);
    const double fid = fidelity_pure(kappa, rec);
    CHECK(fid > 0.3);
    CHECK(fid <= 1.0 + 1e-9);
  }
}

TEST_CASE("guards: n below three and oversized dimensions") {
  FiniteGroup z2 = make_cyclic(2);
  CHECK_THROWS(random_covariant_code(z2, 2, 0));
  CHECK_THROWS_WITH_AS(random_covariant_code(z2, 13, 0), doctest::Contains("too large"),
                       std::runtime_error);
}

}  // TEST_SUITE

TEST_SUITE("codes_chart") {

TEST_CASE("sector bookkeeping: identity embedding and dimension counting") {
  ChargeRep in{{0, 1}};
  ChargeSectorChart ident = make_charge_sector_chart(in, {ChargeRep{{0, 1}}});
  CHECK(ident.param_count() == 4);
  DenseOperator v = u1_covariant_isometry(ident, {1, 0, 1, 0});
  CHECK(max_abs_diff(v, DenseOperator::identity(ModeSpace::single(2)).relabeled(
                            v.space_out, v.space_in)) < 1e-15);

  ChargeSectorChart three =
      make_charge_sector_chart(in, {ChargeRep{{0, 1}}, ChargeRep{{0, 1}}, ChargeRep{{0, 1}}});
  CHECK(three.sectors[0].size() == 1);  // |000⟩
  CHECK(three.sectors[1].size() == 3);  // weight-one states
  CHECK(three.param_count() == 8);
}

TEST_CASE("random chart points are exactly covariant isometries") {
  ChargeRep in{{0, 1}};
  std::vector<ChargeRep> out = {ChargeRep{{0, 1, 2}}, ChargeRep{{0, 1, 2}}, ChargeRep{{0, 1, 2}}};
  ChargeSectorChart chart = make_charge_sector_chart(in, out);
  Rng rng(5);
  for (int rep = 0; rep < 3; ++rep) {
    std::vector<double> params(static_cast<std::size_t>(chart.param_count()));
    for (double& p : params) p = rng.gaussian();
    DenseOperator v = u1_covariant_isometry(chart, params);
    CHECK(v.is_isometry(1e-10));
    for (int64_t r = 0; r < v.rows(); ++r) {
      std::vector<int64_t> mi = unflatten(r, chart.space_out.dims);
      int64_t q = 0;
      for (std::size_t m = 0; m < mi.size(); ++m)
        q += out[m].charges[static_cast<std::size_t>(mi[m])];
      for (int64_t c = 0; c < v.cols(); ++c)
        if (std::abs(v.at(r, c)) > 0.0)
          CHECK(q == in.charges[static_cast<std::size_t>(c)]);
    }
  }

  CHECK_THROWS_WITH_AS(
      make_charge_sector_chart(ChargeRep{{5}}, {ChargeRep{{0, 1}}, ChargeRep{{0, 1}}}),
      doctest::Contains("empty charge sector"), std::runtime_error);

  // orthonormalization across a repeated input charge
  ChargeRep in00{{0, 0}};
  ChargeSectorChart c2 = make_charge_sector_chart(in00, {ChargeRep{{0, 0, 0}}});
  std::vector<double> params(static_cast<std::size_t>(c2.param_count()));
  Rng rng2(8);
  for (double& p : params) p = rng2.gaussian();
  DenseOperator v2 = u1_covariant_isometry(c2, params);
  CHECK(v2.is_isometry(1e-10));
}

}  // TEST_SUITE
