#pragma once
// Decomposition-backed numerics: Hermitian eigensolves, SVD, operator
// functions, norms, fidelity, Schmidt decomposition.  Everything here is a
// thin wrapper over Eigen, exposed in DenseOperator terms.

#include <vector>

#include "cqec/dense.hpp"

namespace cqec {

struct HermEig {
  std::vector<double> eigenvalues;  // ascending
  DenseOperator eigenvectors;       // column k ↔ eigenvalue k
};
HermEig herm_eig(const DenseOperator& op, double herm_tol = 1e-8);

struct Svd {
  std::vector<double> singular_values;  // descending
  DenseOperator u;                      // rows × r, columns are left vectors
  DenseOperator vconj;                  // cols × r, column k holds conj(v_k)
};
Svd svd(const DenseOperator& op);

enum class PsdFunc { Sqrt, InvSqrt };

// Spectral function of a Hermitian PSD operator.  Eigenvalues below `cutoff`
// are treated as zero (pseudo-inverse convention for InvSqrt).  A negative
// cutoff selects the default 1e-10 · λ_max.  Eigenvalues below -psd_tol raise.
DenseOperator psd_func(const DenseOperator& op, PsdFunc which, double cutoff = -1.0,
                       double psd_tol = 1e-9);

double operator_norm(const DenseOperator& op);  // largest singular value
double trace_norm(const DenseOperator& op);     // sum of singular values
// max |eigenvalue| of a Hermitian operator (faster path used by residual checks)
double herm_norm(const DenseOperator& op);

// Uhlmann fidelity F(a,b) = tr √(√a b √a) ∈ [0,1]; requires PSD inputs.
double fidelity(const DenseOperator& a, const DenseOperator& b, double psd_tol = 1e-9);
// F(|κ⟩⟨κ|, ρ) = √(⟨κ|ρ|κ⟩)
double fidelity_pure(const DenseKet& kappa, const DenseOperator& rho);

double entropy(const DenseOperator& rho);  // von Neumann, natural log

bool is_psd(const DenseOperator& op, double tol = 1e-9);

struct SchmidtDecomposition {
  std::vector<double> coefficients;  // nonnegative, descending
  std::vector<DenseKet> left;        // kets on the left subspace
  std::vector<DenseKet> right;       // kets on the right subspace
};
// Splits `ket` across (left_modes | remaining modes); left_modes ascending.
SchmidtDecomposition schmidt_decompose(const DenseKet& ket,
                                       const std::vector<std::size_t>& left_modes);

}  // namespace cqec
