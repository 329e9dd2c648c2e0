#ifndef MADCAP_LINALG_HPP
#define MADCAP_LINALG_HPP

#include <complex>
#include <random>

#include <Eigen/Dense>

#include "madcap/errors.hpp"

namespace madcap {

//============================================================================
// Basic aliases
//============================================================================

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Which tensor factor to keep in a partial trace.
enum class Subsystem { A, B };

/// Eigendecomposition of a Hermitian matrix.
struct HermitianEig {
  RVector eigenvalues; ///< ascending order
  CMatrix eigenvectors; ///< column i pairs with eigenvalues(i)
};

//============================================================================
// Elementary operations
//============================================================================

/// Largest absolute entry of a matrix (max norm).
double max_abs(const CMatrix &m);

/// True when ‖m − m†‖_max ≤ tol.
bool is_hermitian(const CMatrix &m, double tol = 1e-10);

/// Kronecker product a ⊗ b.
CMatrix kron(const CMatrix &a, const CMatrix &b);

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
///
/// Throws NonHermitian when the symmetry check (tolerance `herm_tol`)
/// fails.  The reconstruction V·diag(λ)·V† matches the input within
/// 1e-9·‖m‖ and the eigenvector columns are orthonormal to 1e-9.
HermitianEig hermitian_eig(const CMatrix &m, double herm_tol = 1e-10);

/// x·log₂(x) with the conventional continuous extension 0·log0 = 0,
/// clamped below 1e-12.
double xlog2x(double x);

/// Von Neumann entropy −tr[ρ log₂ ρ] in bits.
///
/// Eigenvalues at or below 1e-12 contribute zero; an eigenvalue below
/// −1e-8 throws InvalidState.
double von_neumann_entropy(const CMatrix &rho);

/// Row-major vectorization: vec(ρ)[r·cols + c] = ρ(r, c).
CVector vec(const CMatrix &m);

/// Inverse of vec for a rows×cols matrix.  Throws DimensionMismatch when
/// the vector length does not factor as rows·cols.
CMatrix unvec(const CVector &v, Eigen::Index rows, Eigen::Index cols);

/// Partial trace of an operator on a dA⊗dB space, keeping one factor.
/// Throws DimensionMismatch when the operator is not (dA·dB)-square.
CMatrix partial_trace(const CMatrix &m, Eigen::Index dA, Eigen::Index dB,
                      Subsystem keep);

//============================================================================
// Seeded random objects (deterministic test and verification inputs)
//============================================================================

/// Random density matrix ρ = GG†/tr(GG†) with G a complex Ginibre sample.
CMatrix random_density_matrix(Eigen::Index dim, std::mt19937_64 &rng);

/// Haar-ish random unitary via QR of a Ginibre sample with phase fixing.
CMatrix random_unitary(Eigen::Index dim, std::mt19937_64 &rng);

/// Random normalized pure-state vector.
CVector random_pure_state(Eigen::Index dim, std::mt19937_64 &rng);

} // namespace madcap

#endif // MADCAP_LINALG_HPP
