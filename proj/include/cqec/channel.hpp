#pragma once
// Quantum channels as Kraus families, erasure plumbing, Choi fingerprints.

#include <vector>

#include "cqec/dense.hpp"

namespace cqec {

struct Channel {
  ModeSpace space_in;
  ModeSpace space_out;
  std::vector<DenseOperator> kraus;

  // trace preservation Σ K†K = I within tol
  double trace_preservation_residual() const;
  void validate(double tol = 1e-9) const;
};

Channel identity_channel(const ModeSpace& s);
Channel unitary_channel(const DenseOperator& u);
Channel isometry_channel(const DenseOperator& v);

DenseOperator apply(const Channel& ch, const DenseOperator& rho);
// ρ = Σ_i v_i v_i† represented by its (unnormalized) pure components; the
// channel maps the list to {K v_i}, avoiding large intermediate densities.
std::vector<DenseKet> apply_ensemble(const Channel& ch, const std::vector<DenseKet>& kets);
double fidelity_pure_ensemble(const DenseKet& kappa, const std::vector<DenseKet>& ensemble);

Channel compose(const Channel& a, const Channel& b);  // b after a
Channel tensor(const Channel& a, const Channel& b);

// τ_j ⊗ tr_j(ρ) with the fresh maximally mixed factor kept at position j
DenseOperator erase_and_fill(const DenseOperator& rho, std::size_t j);
// same operation as a Channel (Kraus {|m⟩⟨k|_j ⊗ I / √d_j})
Channel erase_and_fill_channel(const ModeSpace& s, std::size_t j);
// tr_j as a channel onto the kept modes (Kraus {⟨m|_j ⊗ I})
Channel trace_out_channel(const ModeSpace& s, std::size_t j);

// Kraus family {⟨m|_j · E} of encode-then-trace for an isometry E, built by
// row slicing (never materializes the encoded density operator).
Channel isometry_erase_channel(const DenseOperator& e, std::size_t j);

// Choi operator on out ⊗ in via the un-normalized maximally entangled state;
// trace equals dim(in) for a trace-preserving channel.
DenseOperator choi(const Channel& ch);
double choi_distance(const Channel& a, const Channel& b);  // trace norm of difference
// Exact low-rank evaluation through the Gram matrix of vectorized Kraus
// operators; avoids materializing Choi matrices on large spaces.
double choi_distance_lowrank(const Channel& a, const Channel& b);

// Exact decoder for erasure of mode j of an isometry code E, built from the
// orthogonal-isometry decomposition of the encode-then-trace channel.  Throws
// if the erasure is not correctable within kl_tol.  Basis states outside the
// recoverable range are sent to |reset⟩ to keep the channel trace preserving.
Channel exact_erasure_decoder(const DenseOperator& e, std::size_t j, double kl_tol = 1e-9,
                              int64_t reset_index = 0);

// Un-encoding channel of an isometry: Kraus {E†} plus reset completion on the
// orthogonal complement of range(E).
Channel isometry_inverse_channel(const DenseOperator& e, int64_t reset_index = 0);

// Channel applying W and then tracing out every mode except `keep`.
Channel apply_then_keep_one(const DenseOperator& w, std::size_t keep);

}  // namespace cqec
