#ifndef MADCAP_CHANNEL_HPP
#define MADCAP_CHANNEL_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "madcap/linalg.hpp"

namespace madcap {

//============================================================================
// Channel value types
//============================================================================

/// A quantum channel in Kraus representation: ρ ↦ Σ_n E_n ρ E_n†.
///
/// Each operator is dim_out × dim_in and the set satisfies the completeness
/// relation Σ E_n†E_n = I within 1e-10.
struct KrausChannel {
  Eigen::Index dim_in = 0;
  Eigen::Index dim_out = 0;
  std::vector<CMatrix> kraus;

  /// Throws InvalidState / DimensionMismatch when the representation
  /// invariants (shape consistency, completeness within `tol`) fail.
  void validate(double tol = 1e-10) const;
};

/// Matrix representation M of a channel acting on row-major vectorized
/// states: vec(Φ(ρ)) = M·vec(ρ).  M is dim_out² × dim_in².
struct SuperOperator {
  Eigen::Index dim_in = 0;
  Eigen::Index dim_out = 0;
  CMatrix mat;
};

/// Choi matrix C = Σ_{k,l} Φ(|k⟩⟨l|) ⊗ |k⟩⟨l| (unnormalized: the trace of
/// a trace-preserving map's Choi matrix equals dim_in).
struct ChoiMatrix {
  Eigen::Index dim_in = 0;
  Eigen::Index dim_out = 0;
  CMatrix mat;
};

//============================================================================
// Channel operations
//============================================================================

/// Apply the channel to a state: Σ E_n ρ E_n†.
CMatrix apply(const KrausChannel &ch, const CMatrix &rho);

/// Choi matrix of the channel (output factor first, input factor second).
ChoiMatrix choi(const KrausChannel &ch);

/// Completeness plus Choi positivity test: true iff ‖ΣE†E − I‖_max ≤ tol
/// and every Choi eigenvalue ≥ −tol·‖C‖.
bool is_cptp(const KrausChannel &ch, double tol = 1e-10);

/// Complementary channel mapping the input to the environment.
///
/// The environment dimension equals the number of Kraus operators; the
/// output satisfies Φ̃(ρ)[k,l] = tr(E_k ρ E_l†).
KrausChannel complementary(const KrausChannel &ch);

/// Superoperator matrix M = Σ_n E_n ⊗ conj(E_n) (row-major convention).
SuperOperator superoperator(const KrausChannel &ch);

/// Reshuffle a superoperator into the corresponding Choi matrix:
/// C[(i,k),(j,l)] = M[(i,j),(k,l)].
ChoiMatrix superop_to_choi(const SuperOperator &m);

/// Channel concatenation: (second ∘ first)(ρ) = second(first(ρ)).
/// The Kraus set is all pairwise products {F_j·E_i}.
KrausChannel compose(const KrausChannel &second, const KrausChannel &first);

/// Recover a Kraus representation from a Choi matrix by
/// eigendecomposition, dropping eigenvalues below `clamp_tol` and
/// rejecting eigenvalues below −`clamp_tol`·‖C‖ (InvalidState).
KrausChannel channel_from_choi(const ChoiMatrix &c, double clamp_tol = 1e-12);

/// Two-use memory channel interpolating between independent uses of a
/// single-carrier channel and a fully correlated two-carrier channel:
///
///   Kraus = {√(1−μ)·(E_i ⊗ E_j)} ∪ {√μ·F_k}
///
/// where {E_i} belongs to `memoryless` (one carrier) and {F_k} to
/// `correlated` (both carriers jointly).  Throws OutOfRange for μ outside
/// [0,1] and DimensionMismatch unless correlated dims equal the squared
/// memoryless dims.
KrausChannel memory_channel(double mu, const KrausChannel &memoryless,
                            const KrausChannel &correlated);

//============================================================================
// Serialization
//
// Plain-text format (see README for the grammar): header lines `dim_in N`,
// `dim_out M`, `operators K`, then for each operator a line `operator k`
// followed by M rows of N whitespace-separated "re,im" pairs.  Lines
// starting with '#' and blank lines are ignored.
//============================================================================

/// Write a channel in the plain-text format with round-trip precision.
void write_channel(std::ostream &os, const KrausChannel &ch);
void write_channel_file(const std::string &path, const KrausChannel &ch);

/// Parse a channel from the plain-text format.  Throws IoError on
/// malformed input or unreadable files.
KrausChannel read_channel(std::istream &is);
KrausChannel read_channel_file(const std::string &path);

} // namespace madcap

#endif // MADCAP_CHANNEL_HPP
