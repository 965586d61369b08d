#include "doctest.h"

#include <cmath>

#include "cqec/channel.hpp"
#include "cqec/linalg.hpp"
#include "cqec/rng.hpp"

using namespace cqec;

namespace {

Channel depolarizing(int64_t d) {
  ModeSpace s = ModeSpace::single(d);
  Channel ch{s, s, {}};
  const double w = 1.0 / std::sqrt(static_cast<double>(d));
  for (int64_t i = 0; i < d; ++i)
    for (int64_t j = 0; j < d; ++j) {
      DenseOperator k(s, s);
      k.at(i, j) = cx{w, 0.0};
      ch.kraus.push_back(std::move(k));
    }
  return ch;
}

Channel random_isometry_channel(const ModeSpace& in, const ModeSpace& out, Rng& rng) {
  DenseOperator v(out, in);
  for (cx& x : v.a) x = rng.complex_gaussian();
  v = mul(v, psd_func(mul_hn(v, v), PsdFunc::InvSqrt));
  return isometry_channel(v);
}

}  // namespace

TEST_SUITE("channels") {

TEST_CASE("apply: identity, isometry on pure states, depolarizing oracle") {
  ModeSpace q = ModeSpace::single(2);
  Rng rng(21);
  DenseOperator rho = random_density(q, rng, 2);
  CHECK(max_abs_diff(apply(identity_channel(q), rho), rho) < 1e-15);

  Channel iso = random_isometry_channel(q, ModeSpace::single(5), rng);
  DenseKet kappa = random_haar_ket(q, rng);
  DenseOperator enc = apply(iso, density(kappa));
  DenseKet direct = apply(iso.kraus[0], kappa);
  CHECK(max_abs_diff(enc, density(direct)) < 1e-14);
  CHECK(std::abs(enc.trace() - cx{1, 0}) < 1e-12);

  Channel dep = depolarizing(3);
  dep.validate(1e-12);
  DenseOperator out = apply(dep, random_density(ModeSpace::single(3), rng, 3));
  DenseOperator tau = scale(DenseOperator::identity(ModeSpace::single(3)), cx{1.0 / 3.0, 0});
  CHECK(max_abs_diff(out, tau) < 1e-12);
}

TEST_CASE("erase_and_fill: fixed points, products, entropy bookkeeping") {
  ModeSpace qq({2, 2});
  DenseOperator tt = scale(DenseOperator::identity(qq), cx{0.25, 0});
  DenseOperator ef = erase_and_fill(tt, 0);
  CHECK(max_abs_diff(ef, tt) < 1e-15);

  Rng rng(5);
  DenseOperator r1 = random_density(ModeSpace::single(2), rng, 2);
  DenseOperator r2 = random_density(ModeSpace::single(2), rng, 2);
  DenseOperator prod = tensor_product(r1, r2);
  DenseOperator expect = tensor_product(r1, scale(DenseOperator::identity(ModeSpace::single(2)),
                                                  cx{0.5, 0}));
  CHECK(max_abs_diff(erase_and_fill(prod, 1), expect) < 1e-14);

  // erase_and_fill adds exactly log d_j of entropy on top of the traced state
  ModeSpace qqq({2, 2, 2});
  DenseKet ghz(qqq);
  ghz.amp[0] = ghz.amp[7] = cx{1.0 / std::sqrt(2.0), 0};
  DenseOperator rho = density(ghz);
  DenseOperator filled = erase_and_fill(rho, 1);
  DenseOperator traced = partial_trace(rho, {0, 2});
  CHECK(entropy(filled) ==
        doctest::Approx(entropy(traced) + std::log(2.0)).epsilon(1e-10));

  CHECK_THROWS(erase_and_fill(rho, 9));
}

TEST_CASE("erase_and_fill agrees with its Kraus channel and isometry slicing") {
  Rng rng(31);
  ModeSpace s({2, 3});
  DenseOperator rho = random_density(s, rng, 3);
  for (std::size_t j = 0; j < 2; ++j) {
    Channel ch = erase_and_fill_channel(s, j);
    ch.validate(1e-12);
    CHECK(max_abs_diff(apply(ch, rho), erase_and_fill(rho, j)) < 1e-13);
  }

  // trace-out channel vs partial_trace
  Channel tr = trace_out_channel(s, 0);
  tr.validate(1e-12);
  CHECK(max_abs_diff(apply(tr, rho), partial_trace(rho, {1})) < 1e-13);

  // slicing an isometry = compose(isometry, trace-out)
  Channel iso = random_isometry_channel(ModeSpace::single(2), ModeSpace({2, 3}), rng);
  Channel sliced = isometry_erase_channel(iso.kraus[0], 1);
  Channel composed = compose(iso, trace_out_channel(ModeSpace({2, 3}), 1));
  CHECK(choi_distance(sliced, composed) < 1e-12);
}

TEST_CASE("compose: identity neutral, unitary product, sequential equality") {
  ModeSpace q = ModeSpace::single(2);
  Rng rng(13);
  Channel ch = random_isometry_channel(q, ModeSpace::single(3), rng);
  Channel c1 = compose(identity_channel(q), ch);
  CHECK(choi_distance(c1, ch) < 1e-12);

  DenseOperator h(q, q);
  const double is2 = 1.0 / std::sqrt(2.0);
  h.at(0, 0) = h.at(0, 1) = h.at(1, 0) = cx{is2, 0};
  h.at(1, 1) = cx{-is2, 0};
  DenseOperator sgate = DenseOperator::identity(q);
  sgate.at(1, 1) = cx{0, 1};
  Channel hu = unitary_channel(h), su = unitary_channel(sgate);
  CHECK(choi_distance(compose(hu, su), unitary_channel(mul(sgate, h))) < 1e-12);

  Channel dep = depolarizing(2);
  DenseOperator rho = random_density(q, rng, 2);
  CHECK(max_abs_diff(apply(compose(ch, trace_out_channel(ModeSpace({3}), 0)), rho),
                     apply(trace_out_channel(ModeSpace({3}), 0), apply(ch, rho))) < 1e-13);
  CHECK(max_abs_diff(apply(compose(dep, ch), rho), apply(ch, apply(dep, rho))) < 1e-12);
}

TEST_CASE("choi: identity fingerprint, closed-form distance") {
  ModeSpace q = ModeSpace::single(2);
  DenseOperator c = choi(identity_channel(q));
  CHECK(std::abs(c.trace() - cx{2, 0}) < 1e-15);
  DenseKet phi(ModeSpace({2, 2}));
  phi.amp[0] = phi.amp[3] = cx{1, 0};  // un-normalized Σ|ii⟩
  CHECK(max_abs_diff(c, density(phi)) < 1e-15);

  CHECK(choi_distance(identity_channel(q), identity_channel(q)) == 0.0);
  CHECK(choi_distance(depolarizing(2), identity_channel(q)) ==
        doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("choi distance: lowrank route matches dense route") {
  Rng rng(77);
  ModeSpace q = ModeSpace::single(2);
  for (int rep = 0; rep < 4; ++rep) {
    Channel a = random_isometry_channel(q, ModeSpace::single(4), rng);
    Channel b = random_isometry_channel(q, ModeSpace::single(4), rng);
    const double dd = choi_distance(a, b);
    const double dl = choi_distance_lowrank(a, b);
    CHECK(std::abs(dd - dl) < 1e-9 * (1.0 + dd));
  }
  Channel dep = depolarizing(2);
  CHECK(std::abs(choi_distance_lowrank(dep, identity_channel(q)) - 3.0) < 1e-10);
}

TEST_CASE("choi distance zero iff identical channel action") {
  Rng rng(41);
  ModeSpace q = ModeSpace::single(2);
  Channel a = random_isometry_channel(q, ModeSpace::single(4), rng);
  // same isometry with a global phase: identical channel
  Channel b = a;
  kern::scal(b.kraus[0].a.data(), b.kraus[0].a.size(), cx{0, 1});
  CHECK(choi_distance(a, b) < 1e-12);
  // verify agreement on a complete operator basis
  for (int64_t i = 0; i < 2; ++i)
    for (int64_t j = 0; j < 2; ++j) {
      DenseOperator e(q, q);
      e.at(i, j) = cx{1, 0};
      CHECK(max_abs_diff(apply(a, e.relabeled(q, q)), apply(b, e.relabeled(q, q))) < 1e-13);
    }
}

TEST_CASE("apply_ensemble mirrors density evolution") {
  Rng rng(3);
  ModeSpace q = ModeSpace::single(3);
  Channel ch = compose(random_isometry_channel(q, ModeSpace({3, 2}), rng),
                       trace_out_channel(ModeSpace({3, 2}), 1));
  DenseKet kappa = random_haar_ket(q, rng);
  DenseOperator rho_out = apply(ch, density(kappa));
  std::vector<DenseKet> ens = apply_ensemble(ch, {kappa});
  DenseOperator acc(ch.space_out, ch.space_out);
  for (const DenseKet& v : ens) add_scaled_into(acc, density(v), cx{1, 0});
  CHECK(max_abs_diff(acc, rho_out) < 1e-13);
  CHECK(fidelity_pure_ensemble(kappa, ens) ==
        doctest::Approx(fidelity_pure(kappa, rho_out)).epsilon(1e-10));
}

}  // TEST_SUITE
