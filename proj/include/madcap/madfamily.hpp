#ifndef MADCAP_MADFAMILY_HPP
#define MADCAP_MADFAMILY_HPP

#include <string>
#include <utility>
#include <vector>

#include "madcap/channel.hpp"

namespace madcap {

//============================================================================
// Fully correlated two-qutrit amplitude damping family
//
// Two qutrits share a single damping environment; basis order is
// |ij⟩ ↦ 3i+j, so the jointly decaying levels are |00⟩=0, |11⟩=4, |22⟩=8.
// Damping probabilities pᵢ relate to rates by pᵢ = 1 − e^{−Γᵢt}.
//============================================================================

/// Decay probabilities plus the derived branching data for one channel.
struct DecayParams {
  double p1 = 0.0;
  double p2 = 0.0;
  double p3 = 0.0;
  /// Branching weight Θ of the two-step |22⟩→|11⟩→|00⟩ pathway; zero
  /// whenever the pathway carries no weight (p123 ≈ 0 or p3 = 0).
  double theta = 0.0;
  /// Excess decay weight p123 = (1−p1) − (1−p2)(1−p3) ≥ 0.
  double p123 = 0.0;
};

/// Named sub-families of the channel, selecting which parameters are free.
enum class FamilyTag {
  Full,         ///< generic (p1, p2, p3)
  SingleDecay1, ///< only |11⟩→|00⟩ active: Φ_(p1,0,0)
  SingleDecay2, ///< level-swapped copy: |00⟩↔|11⟩ conjugation
  SingleDecay3, ///< level-swapped copy: |00⟩↔|22⟩ conjugation
  VType,        ///< p3 = 0: Φ_(p1,p2,0)
  LambdaType,   ///< p1 = 0: Φ_(0,p2,p3)
  ThreeDecay,   ///< surface 1−p1 = (1−p2)(1−p3)
  FullDamp1,    ///< edge map Φ_(1,p2,0)
  EqualRates,   ///< Φ_(p,p,p)
};

/// CLI names: full, single1, single2, single3, v, lambda, three,
/// fulldamp1, equal.  Lookup throws UnsupportedFamily on unknown names.
FamilyTag family_tag_from_name(const std::string &name);
std::string family_name(FamilyTag tag);

//============================================================================
// Constructors
//============================================================================

/// Branching weight Θ = ln(1−p3) / (ln(1−p3) + ln(1−p2) − ln(1−p1)).
///
/// Throws Undefined when p123 ≤ 1e-14 (the weight multiplies a vanishing
/// pathway there) and Singular when a log or the denominator degenerates.
double theta_from_p(double p1, double p2, double p3);

/// Validate (p1,p2,p3) against the physical domain and derive theta/p123.
/// Throws CptpViolation when (1−p1) < (1−p2)(1−p3) − 1e-12 and OutOfRange
/// for probabilities outside [0,1].
DecayParams make_decay_params(double p1, double p2, double p3);

/// The fully correlated channel with Kraus operators
///   E00 = diag(1,1,1,1,√(1−p1),1,1,1,√((1−p2)(1−p3))),
///   E11 = √p1 |00⟩⟨11|,
///   E22 = √(p1 + (1−Θ)p123) |00⟩⟨22|,
///   E33 = √(Θ·p123) |11⟩⟨22|   (omitted when its weight vanishes).
KrausChannel mad_channel(const DecayParams &params);
KrausChannel mad_channel(double p1, double p2, double p3);

/// Build a named family member from the CLI parameter slots (p1,p2,p3);
/// each tag reads only its own free parameters:
///   full: (p1,p2,p3)   single1/2/3: p1   v: (p1,p2)   lambda: (p2,p3)
///   three: (p2,p3)     fulldamp1: p2     equal: p1
/// Returns the channel together with the underlying decay parameters
/// (for the swapped families these are the pre-conjugation parameters).
std::pair<KrausChannel, DecayParams>
family_channel(FamilyTag tag, double p1 = 0.0, double p2 = 0.0,
               double p3 = 0.0);

//============================================================================
// Covariance group and twirling
//============================================================================

/// The sixteen diagonal ±1 unitaries V_m ⊗ V_n with V₀ = I₃,
/// V₁ = diag(1,1,−1), V₂ = diag(1,−1,1), V₃ = diag(−1,1,1).
std::vector<CMatrix> sign_unitaries();

/// The five permutation unitaries that fix |00⟩, |11⟩, |22⟩ and permute
/// the remaining six basis states; each commutes with every Kraus
/// operator of the family.
std::vector<CMatrix> swap_unitaries();

/// Sign-unitary twirl ρ' = (1/16)(ρ + Σᵢ UᵢρUᵢ): preserves the diagonal
/// and removes every off-diagonal element.
CMatrix twirl_diagonal(const CMatrix &rho);

/// Swap symmetrization ρ̄ = (1/6)(ρ' + Σᵢ Vᵢρ'Vᵢ) of a diagonal state:
/// averages the six non-corner populations to a common β while leaving
/// indices 0, 4, 8 untouched.  Throws NonDiagonalInput when off-diagonal
/// weight exceeds 1e-12.
CMatrix symmetrize_swap(const CMatrix &rho);

} // namespace madcap

#endif // MADCAP_MADFAMILY_HPP
