#pragma once
// Unitary representations of finite groups (permutation representations get an
// exact integer fast path), integer U(1) charge representations, and channel
// twirling.

#include <optional>

#include "cqec/dense.hpp"
#include "cqec/group.hpp"

namespace cqec {

struct Channel;  // channel.hpp

struct Representation {
  FiniteGroup group;
  ModeSpace space;
  // Permutation representations: U(g)|i⟩ = |perm[g][i]⟩, exact integers.
  std::vector<std::vector<int64_t>> perm;
  // General representations: one dense unitary per element.
  std::vector<DenseOperator> dense;

  bool is_permutation() const { return !perm.empty(); }
  DenseOperator unitary(int g) const;  // materializes permutations on demand
  DenseKet apply(int g, const DenseKet& v) const;
  // U(g) · M (rows permuted for permutation reps)
  DenseOperator apply_left(int g, const DenseOperator& m) const;
  // M · U(g)
  DenseOperator apply_right(const DenseOperator& m, int g) const;

  // max over pairs (all pairs for order <= 24, sampled above) of
  // ‖U(g)U(h) − U(gh)‖_max; exact 0 for permutation reps with a valid table
  double homomorphism_residual() const;
  void validate(double tol = 1e-10) const;
};

Representation regular_representation(const FiniteGroup& g);
// U(g)|a⟩ = |g·a⟩ on C^{|A|}
Representation set_permutation_rep(const FiniteGroup& g, const GroupAction& action);
// U(g) permutes the |A| tensor factors of base^{⊗|A|}: slot a receives the
// factor previously at slot g^{-1}·a.
Representation factor_permutation_rep(const FiniteGroup& g, const GroupAction& action,
                                      const ModeSpace& base,
                                      int64_t max_total_dim = (int64_t{1} << 22));

// slot permutation realized by g on the |A| factors: result[a] = g^{-1}·a
std::vector<std::size_t> factor_slot_map(const FiniteGroup& g, const GroupAction& action, int e);

// Regular representation embedded in a dim-dimensional mode: acts by left
// multiplication on the first |G| basis states and trivially on the rest.
Representation embedded_regular_rep(const FiniteGroup& g, int64_t dim);

// Combined permutation representation acting mode-wise on the concatenation
// of the factors' spaces (every factor must be a permutation rep of the same
// group).
Representation tensor_permutation_rep(const std::vector<const Representation*>& factors);

struct ChargeRep {
  std::vector<int64_t> charges;  // one per basis vector of the mode
};

// diagonal unitary with phases exp(i · charge_k · θ)
DenseOperator u1_unitary(const ChargeRep& rep, double theta);

// (1/|G|) Σ_g U_out(g) · ch(U_in(g)† ρ U_in(g)) · U_out(g)†
Channel twirl_channel(const Channel& ch, const FiniteGroup& g, const Representation& rep_in,
                      const Representation& rep_out);

}  // namespace cqec
