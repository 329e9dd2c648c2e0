#ifndef MADCAP_CAPACITY_HPP
#define MADCAP_CAPACITY_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "madcap/degradability.hpp"
#include "madcap/madfamily.hpp"

namespace madcap {

//============================================================================
// Capacity value types
//============================================================================

/// Symmetric diagonal input state diag(α,β,β,β,γ,β,β,β,δ) with
/// α + 6β + γ + δ = 1; channel covariance makes this family sufficient
/// for every optimization in this module.
struct DiagonalState {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;

  /// The 9×9 density matrix with this diagonal.
  CMatrix to_density() const;
};

enum class CapStatus { Exact, UpperBound, LowerBound };
enum class CapRegion {
  Degradable,
  NonDegradableExactByMonotonicity,
  NonDegradableBoundsOnly,
};

std::string status_name(CapStatus s);
std::string region_name(CapRegion r);

struct CapacityResult {
  double value = 0.0;
  CapStatus status = CapStatus::Exact;
  DiagonalState argmax;
  CapRegion region = CapRegion::Degradable;
  std::vector<std::string> notes;
};

//============================================================================
// Entropic functionals
//============================================================================

/// Coherent information I_c = S(Φ(ρ)) − S(Φ̃(ρ)).
double coherent_information(const KrausChannel &ch, const CMatrix &rho);

/// Mutual information I = S(ρ) + I_c.
double mutual_information(const KrausChannel &ch, const CMatrix &rho);

/// Shannon binary entropy H₂(x) = −x log₂x − (1−x)log₂(1−x);
/// throws OutOfRange outside [0,1] (up to 1e-12 slack).
double binary_entropy(double x);

/// Nonzero output eigenvalues (η⁺, η⁻) of the p3 = 0 channel applied to a
/// pure state with corner amplitudes a (|00⟩), e (|11⟩), k (|22⟩):
///   η± = (1 ± √(1−l²))/2,  l² = 4(1−a²−p1e²−p2k²)(p1e²+p2k²).
/// Throws OutOfRange when l² exceeds 1 beyond 1e-12.
std::pair<double, double> v_output_eigs(double a, double e, double k,
                                        double p1, double p2);

//============================================================================
// Deterministic simplex optimizer
//============================================================================

/// Which diagonal family the optimizer walks.
enum class SimplexFamily {
  Full9,    ///< α + 6β + γ + δ = 1 over (α, γ, δ)
  Reduced8, ///< γ removed (level |11⟩ projected out): α + 6β + δ = 1
};

struct SimplexOptimum {
  double value = 0.0;
  DiagonalState argmax;
};

/// Deterministic maximizer: coarse 0.02 grid over the free coordinates
/// (β implied by the constraint), then reflection-based simplex descent
/// with projection onto the constraint set from the best 5 grid points,
/// refined until the search simplex shrinks below `tol`.  Repeated runs
/// are bit-identical.
SimplexOptimum
maximize_simplex(const std::function<double(const DiagonalState &)> &f,
                 double tol = 1e-10,
                 SimplexFamily family = SimplexFamily::Full9);

//============================================================================
// Closed-form objectives
//
// Scalar formulas for the entropic functionals on the symmetric diagonal
// family.  Each is validated against the generic entropy pipeline; the
// capacity assemblies optimize these.
//============================================================================

/// Coherent-information objective of the family member at a symmetric
/// diagonal state (single-decay, V, Λ and three-decay use their printed
/// per-family forms; the rest use the generic four-level weight form).
double coherent_info_objective(FamilyTag tag, const DecayParams &p,
                               const DiagonalState &s);

/// Mutual-information objective (adds the input entropy term).
double mutual_info_objective(FamilyTag tag, const DecayParams &p,
                             const DiagonalState &s);

/// Single-shot classical (Holevo) relaxation objective; only the
/// single-decay and V-type families have one.  Throws UnsupportedFamily.
double holevo_objective(FamilyTag tag, const DecayParams &p,
                        const DiagonalState &s);

/// The 8-dimensional restriction of the edge map Φ_(1,p2,0) with level
/// |11⟩ removed, and its coherent-information objective on the reduced
/// diagonal family (γ slot unused).
KrausChannel reduced_fulldamp_channel(double p2);
double reduced_coherent_info_objective(double p2, const DiagonalState &s);

//============================================================================
// Capacities
//============================================================================

/// Single-shot quantum capacity of a family member.
///
/// Degradable parameters give Exact values from the optimized closed
/// form (cross-checked against the entropy pipeline).  Non-degradable
/// parameters are pinched between the noiseless-subspace lower bound and
/// a monotonicity/edge-map upper bound; when the pinch closes within
/// 1e-6 the value is Exact, otherwise the value is the lower bound with
/// the upper bound recorded in notes.
CapacityResult quantum_capacity(FamilyTag tag, double p1 = 0.0,
                                double p2 = 0.0, double p3 = 0.0);

/// Optimized coherent information over the symmetric diagonal family
/// (Exact = quantum capacity when degradable, otherwise a lower bound).
CapacityResult max_coherent_information(FamilyTag tag, double p1 = 0.0,
                                        double p2 = 0.0, double p3 = 0.0);

/// Single-shot classical-capacity upper bound (always status
/// UpperBound).  Supported for the single-decay and V-type families;
/// throws UnsupportedFamily otherwise.
CapacityResult holevo_upper_bound(FamilyTag tag, double p1 = 0.0,
                                  double p2 = 0.0, double p3 = 0.0);

/// Entanglement-assisted quantum capacity Q_E = (1/2)·max I; Exact for
/// every family (mutual information is additive).
CapacityResult ea_quantum_capacity(FamilyTag tag, double p1 = 0.0,
                                   double p2 = 0.0, double p3 = 0.0);

/// Entanglement-assisted classical capacity C_E = 2·Q_E.
CapacityResult ea_classical_capacity(FamilyTag tag, double p1 = 0.0,
                                     double p2 = 0.0, double p3 = 0.0);

//============================================================================
// Brute-force Holevo oracle and concavity check
//============================================================================

/// One ensemble member: a weight and a pure state.
struct EnsembleMember {
  double weight = 0.0;
  CVector state;
};

/// Exact Holevo quantity χ = S(Φ(ρ̄)) − Σ ξⱼS(Φ(|ψⱼ⟩⟨ψⱼ|)) of a given
/// pure-state ensemble (weights must sum to 1 within 1e-9).
double brute_force_holevo(const KrausChannel &ch,
                          const std::vector<EnsembleMember> &ensemble);

/// Deterministic random pure-state ensemble for bound validation.
std::vector<EnsembleMember> random_ensemble(Eigen::Index dim, int size,
                                            std::mt19937_64 &rng);

struct DominanceReport {
  double worst_margin = 0.0; ///< min over trials of I_c(ρ̄) − I_c(ρ)
  int trials = 0;
};

/// For a degradable channel, checks over seeded random states that the
/// twirled-and-symmetrized diagonal state never loses coherent
/// information: I_c(ρ̄) ≥ I_c(ρ) − 1e-9.  Throws PreconditionViolation
/// when the channel is not degradable.
DominanceReport diagonal_dominance_check(const KrausChannel &ch, int trials,
                                         unsigned long long seed);

} // namespace madcap

#endif // MADCAP_CAPACITY_HPP
