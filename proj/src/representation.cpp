#include "cqec/representation.hpp"

#include <cmath>

#include "cqec/channel.hpp"
#include "cqec/rng.hpp"
#include "cqec/util.hpp"

namespace cqec {

DenseOperator Representation::unitary(int g) const {
  if (is_permutation()) {
    const std::vector<int64_t>& p = perm[static_cast<std::size_t>(g)];
    DenseOperator u(space, space);
    for (int64_t i = 0; i < static_cast<int64_t>(p.size()); ++i)
      u.at(p[static_cast<std::size_t>(i)], i) = cx{1.0, 0.0};
    return u;
  }
  return dense[static_cast<std::size_t>(g)];
}

DenseKet Representation::apply(int g, const DenseKet& v) const {
  if (is_permutation()) {
    const std::vector<int64_t>& p = perm[static_cast<std::size_t>(g)];
    DenseKet r(v.space);
    for (std::size_t i = 0; i < v.amp.size(); ++i)
      r.amp[static_cast<std::size_t>(p[i])] = v.amp[i];
    return r;
  }
  return cqec::apply(dense[static_cast<std::size_t>(g)], v);
}

DenseOperator Representation::apply_left(int g, const DenseOperator& m) const {
  if (is_permutation()) {
    const std::vector<int64_t>& p = perm[static_cast<std::size_t>(g)];
    DenseOperator r(m.space_out, m.space_in);
    const int64_t cols = m.cols();
    for (int64_t i = 0; i < m.rows(); ++i)
      std::copy_n(m.a.begin() + i * cols, cols,
                  r.a.begin() + p[static_cast<std::size_t>(i)] * cols);
    return r;
  }
  return mul(dense[static_cast<std::size_t>(g)], m);
}

DenseOperator Representation::apply_right(const DenseOperator& m, int g) const {
  if (is_permutation()) {
    // (M·U)[r, c] = M[r, p[c]]
    const std::vector<int64_t>& p = perm[static_cast<std::size_t>(g)];
    DenseOperator r(m.space_out, m.space_in);
    const int64_t cols = m.cols();
    for (int64_t i = 0; i < m.rows(); ++i)
      for (int64_t c = 0; c < cols; ++c)
        r.at(i, c) = m.at(i, p[static_cast<std::size_t>(c)]);
    return r;
  }
  return mul(m, dense[static_cast<std::size_t>(g)]);
}

double Representation::homomorphism_residual() const {
  const int d = static_cast<int>(group.order);
  const bool exhaustive = d <= 24;
  Rng rng(0xC0FFEEULL + static_cast<std::uint64_t>(d));
  double worst = 0.0;
  auto check = [&](int g, int h) {
    const int gh = group.op(g, h);
    if (is_permutation()) {
      const auto& pg = perm[static_cast<std::size_t>(g)];
      const auto& ph = perm[static_cast<std::size_t>(h)];
      const auto& pgh = perm[static_cast<std::size_t>(gh)];
      for (std::size_t i = 0; i < pg.size(); ++i)
        if (pg[static_cast<std::size_t>(ph[i])] != pgh[i]) worst = std::max(worst, 1.0);
      return;
    }
    DenseOperator prod = mul(dense[static_cast<std::size_t>(g)], dense[static_cast<std::size_t>(h)]);
    worst = std::max(worst, max_abs_diff(prod, dense[static_cast<std::size_t>(gh)]));
  };
  if (exhaustive) {
    for (int g = 0; g < d; ++g)
      for (int h = 0; h < d; ++h) check(g, h);
  } else {
    for (int t = 0; t < 2000; ++t)
      check(static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(d))),
            static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(d))));
  }
  return worst;
}

void Representation::validate(double tol) const {
  require(static_cast<int64_t>(perm.empty() ? dense.size() : perm.size()) == group.order,
          "representation: one unitary per group element required");
  if (is_permutation()) {
    for (const auto& p : perm) {
      require(static_cast<int64_t>(p.size()) == space.total(), "representation: size mismatch");
      std::vector<bool> seen(p.size(), false);
      for (int64_t v : p) {
        require(v >= 0 && v < static_cast<int64_t>(p.size()) && !seen[static_cast<std::size_t>(v)],
                "representation: not a permutation");
        seen[static_cast<std::size_t>(v)] = true;
      }
    }
  } else {
    for (const DenseOperator& u : dense)
      require(u.is_unitary(tol), "representation: element not unitary within ", tol);
  }
  require(homomorphism_residual() <= tol, "representation: homomorphism residual exceeds ", tol);
}

Representation regular_representation(const FiniteGroup& g) {
  Representation r;
  r.group = g;
  r.space = ModeSpace::single(g.order, "H_G");
  r.perm.resize(static_cast<std::size_t>(g.order));
  for (int e = 0; e < g.order; ++e) {
    auto& p = r.perm[static_cast<std::size_t>(e)];
    p.resize(static_cast<std::size_t>(g.order));
    for (int h = 0; h < g.order; ++h) p[static_cast<std::size_t>(h)] = g.op(e, h);
  }
  r.validate();
  return r;
}

Representation set_permutation_rep(const FiniteGroup& g, const GroupAction& action) {
  validate_action(g, action);
  Representation r;
  r.group = g;
  r.space = ModeSpace::single(action.set_size);
  r.perm.resize(static_cast<std::size_t>(g.order));
  for (int e = 0; e < g.order; ++e) {
    auto& p = r.perm[static_cast<std::size_t>(e)];
    p.resize(static_cast<std::size_t>(action.set_size));
    for (int64_t a = 0; a < action.set_size; ++a)
      p[static_cast<std::size_t>(a)] = action.act(e, a);
  }
  r.validate();
  return r;
}

std::vector<std::size_t> factor_slot_map(const FiniteGroup& g, const GroupAction& action,
                                         int e) {
  // slot a of the result receives the factor previously at slot g^{-1}·a
  const int ginv = g.inverse(e);
  std::vector<std::size_t> m(static_cast<std::size_t>(action.set_size));
  for (int64_t a = 0; a < action.set_size; ++a)
    m[static_cast<std::size_t>(a)] = static_cast<std::size_t>(action.act(ginv, a));
  return m;
}

Representation factor_permutation_rep(const FiniteGroup& g, const GroupAction& action,
                                      const ModeSpace& base, int64_t max_total_dim) {
  validate_action(g, action);
  const int64_t nf = action.set_size;
  ModeSpace full;
  for (int64_t a = 0; a < nf; ++a) full = a == 0 ? base : ModeSpace::concat(full, base);
  require(full.total() <= max_total_dim, "factor_permutation_rep: instance too large (dim ",
          full.total(), " > ", max_total_dim, ")");

  const int64_t bt = base.total();
  const std::size_t bm = base.num_modes();
  const int64_t total = full.total();

  Representation r;
  r.group = g;
  r.space = full;
  r.perm.resize(static_cast<std::size_t>(g.order));
  std::vector<int64_t> slot_idx(static_cast<std::size_t>(nf));
  std::vector<int64_t> new_slot(static_cast<std::size_t>(nf));
  for (int e = 0; e < g.order; ++e) {
    const std::vector<std::size_t> src = factor_slot_map(g, action, e);
    auto& p = r.perm[static_cast<std::size_t>(e)];
    p.resize(static_cast<std::size_t>(total));
    for (int64_t f = 0; f < total; ++f) {
      int64_t x = f;
      for (std::size_t a = static_cast<std::size_t>(nf); a-- > 0;) {
        slot_idx[a] = x % bt;
        x /= bt;
      }
      for (std::size_t a = 0; a < static_cast<std::size_t>(nf); ++a)
        new_slot[a] = slot_idx[src[a]];
      int64_t nf_flat = 0;
      for (std::size_t a = 0; a < static_cast<std::size_t>(nf); ++a)
        nf_flat = nf_flat * bt + new_slot[a];
      p[static_cast<std::size_t>(f)] = nf_flat;
    }
  }
  (void)bm;
  r.validate();
  return r;
}

Representation embedded_regular_rep(const FiniteGroup& g, int64_t dim) {
  require(dim >= g.order, "embedded_regular_rep: mode dimension ", dim,
          " smaller than group order ", g.order);
  Representation r;
  r.group = g;
  r.space = ModeSpace::single(dim);
  r.perm.resize(static_cast<std::size_t>(g.order));
  for (int e = 0; e < g.order; ++e) {
    auto& p = r.perm[static_cast<std::size_t>(e)];
    p.resize(static_cast<std::size_t>(dim));
    for (int64_t h = 0; h < dim; ++h)
      p[static_cast<std::size_t>(h)] =
          h < g.order ? g.op(e, static_cast<int>(h)) : h;
  }
  r.validate();
  return r;
}

Representation tensor_permutation_rep(const std::vector<const Representation*>& factors) {
  require(!factors.empty(), "tensor_permutation_rep: no factors");
  Representation r;
  r.group = factors[0]->group;
  for (const Representation* f : factors) {
    require(f->is_permutation(), "tensor_permutation_rep: factor not a permutation rep");
    require(f->group.order == r.group.order, "tensor_permutation_rep: group mismatch");
    r.space = r.space.dims.empty() ? f->space : ModeSpace::concat(r.space, f->space);
  }
  const int64_t total = r.space.total();
  r.perm.resize(static_cast<std::size_t>(r.group.order));
  for (int e = 0; e < r.group.order; ++e) {
    auto& p = r.perm[static_cast<std::size_t>(e)];
    p.resize(static_cast<std::size_t>(total));
    for (int64_t f = 0; f < total; ++f) {
      int64_t x = f;
      std::vector<int64_t> idx(factors.size());
      for (std::size_t a = factors.size(); a-- > 0;) {
        const int64_t t = factors[a]->space.total();
        idx[a] = factors[a]->perm[static_cast<std::size_t>(e)][static_cast<std::size_t>(x % t)];
        x /= t;
      }
      int64_t nf = 0;
      for (std::size_t a = 0; a < factors.size(); ++a)
        nf = nf * factors[a]->space.total() + idx[a];
      p[static_cast<std::size_t>(f)] = nf;
    }
  }
  r.validate();
  return r;
}

DenseOperator u1_unitary(const ChargeRep& rep, double theta) {
  const int64_t d = static_cast<int64_t>(rep.charges.size());
  require(d >= 1, "u1_unitary: empty charge list");
  DenseOperator u(ModeSpace::single(d), ModeSpace::single(d));
  for (int64_t i = 0; i < d; ++i) {
    const double a = static_cast<double>(rep.charges[static_cast<std::size_t>(i)]) * theta;
    u.at(i, i) = cx{std::cos(a), std::sin(a)};
  }
  return u;
}

Channel twirl_channel(const Channel& ch, const FiniteGroup& g, const Representation& rep_in,
                      const Representation& rep_out) {
  require(rep_in.space.total() == ch.space_in.total(),
          "twirl_channel: input representation dimension mismatch");
  require(rep_out.space.total() == ch.space_out.total(),
          "twirl_channel: output representation dimension mismatch");
  Channel out{ch.space_in, ch.space_out, {}};
  out.kraus.reserve(ch.kraus.size() * static_cast<std::size_t>(g.order));
  const double w = 1.0 / std::sqrt(static_cast<double>(g.order));
  for (int e = 0; e < g.order; ++e) {
    const int einv = g.inverse(e);
    for (const DenseOperator& k : ch.kraus) {
      // U_out(g) · K · U_in(g)† = U_out(g) · K · U_in(g^{-1})
      DenseOperator t = rep_out.apply_left(e, rep_in.apply_right(k, einv));
      kern::scal(t.a.data(), t.a.size(), cx{w, 0.0});
      out.kraus.push_back(std::move(t));
    }
  }
  return out;
}

}  // namespace cqec
