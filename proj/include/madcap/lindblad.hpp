#ifndef MADCAP_LINDBLAD_HPP
#define MADCAP_LINDBLAD_HPP

#include <complex>
#include <vector>

#include "madcap/channel.hpp"

namespace madcap {

//============================================================================
// Master-equation oracle
//
// Builds the dissipative generator of the damping dynamics, diagonalizes
// it in biorthogonal left/right eigenoperator pairs, and evolves states —
// an independent cross-check of the Kraus construction.
//============================================================================

/// Decay rates for the three transitions plus an evolution time.
struct RateParams {
  double gamma1 = 0.0; ///< |1⟩→|0⟩ (jointly |11⟩→|00⟩)
  double gamma2 = 0.0; ///< |2⟩→|0⟩ (jointly |22⟩→|00⟩)
  double gamma3 = 0.0; ///< |2⟩→|1⟩ (jointly |22⟩→|11⟩)
  double t = 0.0;
};

/// One mode of the generator: L·vec(right) = λ·vec(right),
/// vec(left)†·L = λ·vec(left)†, and tr(leftᵢ·rightⱼ) = δᵢⱼ.
struct DampingMode {
  std::complex<double> lambda;
  CMatrix left;
  CMatrix right;
};

/// Single-qutrit dissipator (9×9 superoperator on a 3-level system) with
/// jump operators σ₁₂, σ₀₂, σ₀₁ at rates γ₃, γ₂, γ₁:
///   L = Σ (γ/2)(2 σ⊗σ̄ − σ†σ⊗I − I⊗(σ†σ)ᵀ)  (row-major convention).
SuperOperator dissipator_single(const RateParams &g);

/// Correlated two-qutrit dissipator (81×81) with joint jump operators
/// S_kl = σ_kl ⊗ σ_kl for the same three transitions.
SuperOperator dissipator_correlated(const RateParams &g);

/// Biorthogonal eigensystem of a generator.
///
/// Degenerate eigenvalue clusters (tolerance 1e-8·max|λ|) are
/// biorthogonalized blockwise; throws DefectiveSpectrum when no
/// biorthogonal completion exists within tolerance.
std::vector<DampingMode> damping_basis(const SuperOperator &L);

/// Evolve a two-qutrit state for time g.t under the correlated
/// dissipator: ρ_t = Σ tr(Lᵢ ρ) e^{λᵢ t} Rᵢ.
CMatrix evolve(const CMatrix &rho, const RateParams &g);

/// Eigenvalues of the generator clustered into (value, multiplicity)
/// pairs, sorted by descending real part.  Clustering tolerance is
/// 1e-8·max|λ|.
std::vector<std::pair<std::complex<double>, int>>
spectral_multiset(const SuperOperator &L);

/// Maximum entrywise deviation between master-equation evolution and the
/// Kraus channel built from pᵢ = 1 − e^{−Γᵢt}, over `trials` seeded
/// random states.
double kraus_consistency(const RateParams &g, int trials = 20,
                         unsigned long long seed = 20250822ULL);

} // namespace madcap

#endif // MADCAP_LINDBLAD_HPP
