#ifndef MADCAP_DEGRADABILITY_HPP
#define MADCAP_DEGRADABILITY_HPP

#include <string>
#include <vector>

#include "madcap/madfamily.hpp"

namespace madcap {

//============================================================================
// Degradability analysis
//
// A channel is degradable when some CPTP map carries its output to the
// complementary output, and anti-degradable in the reverse direction.
// Classification inverts the channel superoperator where possible and
// falls back to structural arguments where it is singular.
//============================================================================

/// Three-valued verdict: Inconclusive is a legitimate answer, never an
/// exception.
enum class Verdict { Yes, No, Inconclusive };

std::string verdict_name(Verdict v);

struct DegradabilityReport {
  Verdict degradable = Verdict::Inconclusive;
  Verdict antidegradable = Verdict::Inconclusive;
  /// Smallest Choi eigenvalue of the candidate degrading map (relative to
  /// ‖C‖); NaN when the inversion route was unavailable.
  double min_choi_eig_deg = 0.0;
  /// Same for the candidate anti-degrading map.
  double min_choi_eig_anti = 0.0;
  int rank_phi = 0;  ///< rank of the channel superoperator
  int rank_phic = 0; ///< rank of the complement superoperator
  std::vector<std::string> structural_notes;
};

/// Classify one channel.
///
/// Inversion route: the candidate map M_Φ̃·M_Φ⁻¹ (resp. M_Φ·M_Φ̃⁻¹) is
/// formed when the inverted superoperator is well-conditioned (smallest
/// singular value > 1e-10·‖M‖) and judged by reshuffled-Choi positivity
/// at threshold −tol·‖C‖.  A No verdict additionally requires the
/// candidate to be the unique solution (full rank, environment no larger
/// than the system) or a structural obstruction:
///   (a) an input coefficient visible in the complement but absent from
///       the output blocks degradability;
///   (b) ker Φ̃ ⊄ ker Φ blocks anti-degradability;
///   (c) a noiseless subspace of dimension ≥ 2 blocks anti-degradability.
/// Pseudo-inversion is never used to claim Yes.
DegradabilityReport classify(const KrausChannel &ch, double tol = 1e-8);

/// One grid point of a family degradability map.
struct RegionRow {
  double p1 = 0.0;
  double p2 = 0.0;
  double p3 = 0.0;
  DegradabilityReport report;
};

/// Classify a family over its free-parameter grid (step in (0, 0.25]),
/// restricted to the physical domain, in deterministic lexicographic
/// order.  Throws OutOfRange for an invalid step.
std::vector<RegionRow> region_map(FamilyTag tag, double grid_step,
                                  double tol = 1e-8);

/// Maximal set B of computational basis indices with Φ(|i⟩⟨j|) = |i⟩⟨j|
/// within 1e-12 for all i,j ∈ B (exhaustively confirmed for dim ≤ 9).
std::vector<Eigen::Index> noiseless_subspace(const KrausChannel &ch);

} // namespace madcap

#endif // MADCAP_DEGRADABILITY_HPP
