#include "madcap/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "madcap/madfamily.hpp"

namespace madcap {

namespace {

/// σ_kl = |k⟩⟨l| on one qutrit.
CMatrix sigma3(Eigen::Index k, Eigen::Index l) {
  CMatrix m = CMatrix::Zero(3, 3);
  m(k, l) = 1.0;
  return m;
}

/// One Lindblad dissipator term for jump operator L at rate γ, acting on
/// row-major vectorized states:
///   (γ/2)(2 L⊗L̄ − L†L⊗I − I⊗(L†L)ᵀ).
CMatrix dissipator_term(double gamma, const CMatrix &L) {
  const Eigen::Index d = L.rows();
  const CMatrix eye = CMatrix::Identity(d, d);
  const CMatrix ldl = L.adjoint() * L;
  return (gamma / 2.0) *
         (2.0 * kron(L, L.conjugate()) - kron(ldl, eye) -
          kron(eye, ldl.transpose()));
}

/// Jump operators with their rates, in a fixed order.
std::vector<std::pair<double, CMatrix>> jump_list(const RateParams &g,
                                                  bool correlated) {
  const CMatrix s12 = sigma3(1, 2);
  const CMatrix s02 = sigma3(0, 2);
  const CMatrix s01 = sigma3(0, 1);
  std::vector<std::pair<double, CMatrix>> jumps;
  if (correlated) {
    jumps.emplace_back(g.gamma3, kron(s12, s12));
    jumps.emplace_back(g.gamma2, kron(s02, s02));
    jumps.emplace_back(g.gamma1, kron(s01, s01));
  } else {
    jumps.emplace_back(g.gamma3, s12);
    jumps.emplace_back(g.gamma2, s02);
    jumps.emplace_back(g.gamma1, s01);
  }
  return jumps;
}

SuperOperator build_dissipator(const RateParams &g, bool correlated) {
  if (g.gamma1 < 0.0 || g.gamma2 < 0.0 || g.gamma3 < 0.0) {
    throw OutOfRange("decay rates must be nonnegative");
  }
  const Eigen::Index d = correlated ? 9 : 3;
  CMatrix m = CMatrix::Zero(d * d, d * d);
  for (const auto &[gamma, L] : jump_list(g, correlated)) {
    m += dissipator_term(gamma, L);
  }
  return SuperOperator{d, d, std::move(m)};
}

/// Group eigenvalue indices into clusters of nearby values.
std::vector<std::vector<Eigen::Index>>
cluster_indices(const CVector &values, double tol) {
  std::vector<std::vector<Eigen::Index>> clusters;
  std::vector<bool> used(static_cast<std::size_t>(values.size()), false);
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (used[static_cast<std::size_t>(i)]) {
      continue;
    }
    std::vector<Eigen::Index> cluster{i};
    used[static_cast<std::size_t>(i)] = true;
    for (Eigen::Index j = i + 1; j < values.size(); ++j) {
      if (!used[static_cast<std::size_t>(j)] &&
          std::abs(values(j) - values(i)) <= tol) {
        cluster.push_back(j);
        used[static_cast<std::size_t>(j)] = true;
      }
    }
    clusters.push_back(std::move(cluster));
  }
  return clusters;
}

} // namespace

SuperOperator dissipator_single(const RateParams &g) {
  return build_dissipator(g, false);
}

SuperOperator dissipator_correlated(const RateParams &g) {
  return build_dissipator(g, true);
}

std::vector<DampingMode> damping_basis(const SuperOperator &L) {
  if (L.mat.rows() != L.mat.cols()) {
    throw DimensionMismatch("damping_basis requires a square generator");
  }
  const Eigen::Index dim2 = L.mat.rows();
  const Eigen::Index d = L.dim_in;
  if (d * d != dim2) {
    throw DimensionMismatch(
        "damping_basis: generator size is not a squared dimension");
  }

  // The eigensolver only supplies eigenvalues; the mode matrices are
  // rebuilt per cluster from SVD kernels below.
  Eigen::ComplexEigenSolver<CMatrix> right_solver(L.mat, false);
  if (right_solver.info() != Eigen::Success) {
    throw DefectiveSpectrum("damping_basis: eigensolver failed to converge");
  }
  const CVector lam_r = right_solver.eigenvalues();

  double lam_max = 0.0;
  for (Eigen::Index i = 0; i < lam_r.size(); ++i) {
    lam_max = std::max(lam_max, std::abs(lam_r(i)));
  }
  const double tol = 1e-8 * std::max(1.0, lam_max);

  std::vector<DampingMode> modes;
  modes.reserve(static_cast<std::size_t>(dim2));
  const CMatrix eye = CMatrix::Identity(dim2, dim2);

  for (const std::vector<Eigen::Index> &cluster : cluster_indices(lam_r, tol)) {
    std::complex<double> lam = 0.0;
    for (Eigen::Index i : cluster) {
      lam += lam_r(i);
    }
    lam /= static_cast<double>(cluster.size());
    const Eigen::Index k = static_cast<Eigen::Index>(cluster.size());

    // Both cluster bases come from orthonormal SVD kernels: the raw
    // eigensolver columns can be linearly dependent inside a degenerate
    // cluster (e.g. when Γ₂ + Γ₃ = Γ₁ merges two eigenvalues), while the
    // kernel of (L − λI) always spans the full geometric eigenspace.
    const Eigen::BDCSVD<CMatrix> right_svd(L.mat - lam * eye,
                                           Eigen::ComputeFullV);
    const CMatrix vc = right_svd.matrixV().rightCols(k);
    const Eigen::BDCSVD<CMatrix> kernel_svd(L.mat.transpose() - lam * eye,
                                            Eigen::ComputeFullV);
    const CMatrix zc = kernel_svd.matrixV().rightCols(k);

    // Bilinear biorthogonalization within the cluster: find Z̃ with
    // Z̃ᵀV = I via the Gram matrix G = ZᵀV.
    const CMatrix gram = zc.transpose() * vc;
    const Eigen::JacobiSVD<CMatrix> svd(gram);
    const double smin = svd.singularValues().minCoeff();
    const double smax = svd.singularValues().maxCoeff();
    if (smax <= 0.0 || smin < 1e-12 * smax) {
      std::ostringstream msg;
      msg << "damping_basis: eigenvalue cluster at " << lam
          << " admits no biorthogonal completion (relative conditioning "
          << (smax > 0.0 ? smin / smax : 0.0) << ")";
      throw DefectiveSpectrum(msg.str());
    }
    const CMatrix z_tilde = zc * gram.inverse().transpose();

    for (Eigen::Index c = 0; c < k; ++c) {
      DampingMode mode;
      mode.lambda = lam;
      mode.right = unvec(vc.col(c), d, d);
      mode.left = unvec(z_tilde.col(c), d, d).transpose();
      modes.push_back(std::move(mode));
    }
  }
  if (static_cast<Eigen::Index>(modes.size()) != dim2) {
    throw DefectiveSpectrum("damping_basis: incomplete eigensystem");
  }
  return modes;
}

namespace {

CMatrix evolve_with_modes(const CMatrix &rho,
                          const std::vector<DampingMode> &modes, double t) {
  CMatrix out = CMatrix::Zero(rho.rows(), rho.cols());
  for (const DampingMode &mode : modes) {
    const std::complex<double> weight = (mode.left * rho).trace();
    out += weight * std::exp(mode.lambda * t) * mode.right;
  }
  return out;
}

} // namespace

CMatrix evolve(const CMatrix &rho, const RateParams &g) {
  if (rho.rows() != 9 || rho.cols() != 9) {
    throw DimensionMismatch("evolve expects a two-qutrit (9x9) state");
  }
  if (g.t < 0.0) {
    throw OutOfRange("evolution time must be nonnegative");
  }
  const std::vector<DampingMode> modes =
      damping_basis(dissipator_correlated(g));
  return evolve_with_modes(rho, modes, g.t);
}

std::vector<std::pair<std::complex<double>, int>>
spectral_multiset(const SuperOperator &L) {
  Eigen::ComplexEigenSolver<CMatrix> solver(L.mat, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw DefectiveSpectrum("spectral_multiset: eigensolver failed");
  }
  const CVector lam = solver.eigenvalues();
  double lam_max = 0.0;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    lam_max = std::max(lam_max, std::abs(lam(i)));
  }
  const double tol = 1e-8 * std::max(1.0, lam_max);

  std::vector<std::pair<std::complex<double>, int>> out;
  for (const std::vector<Eigen::Index> &cluster : cluster_indices(lam, tol)) {
    std::complex<double> mean = 0.0;
    for (Eigen::Index i : cluster) {
      mean += lam(i);
    }
    mean /= static_cast<double>(cluster.size());
    out.emplace_back(mean, static_cast<int>(cluster.size()));
  }
  std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) {
    if (a.first.real() != b.first.real()) {
      return a.first.real() > b.first.real();
    }
    return a.first.imag() > b.first.imag();
  });
  return out;
}

double kraus_consistency(const RateParams &g, int trials,
                         unsigned long long seed) {
  const std::vector<DampingMode> modes =
      damping_basis(dissipator_correlated(g));
  const double p1 = 1.0 - std::exp(-g.gamma1 * g.t);
  const double p2 = 1.0 - std::exp(-g.gamma2 * g.t);
  const double p3 = 1.0 - std::exp(-g.gamma3 * g.t);
  const KrausChannel ch = mad_channel(p1, p2, p3);

  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int n = 0; n < trials; ++n) {
    const CMatrix rho = random_density_matrix(9, rng);
    const CMatrix via_generator = evolve_with_modes(rho, modes, g.t);
    const CMatrix via_kraus = madcap::apply(ch, rho);
    worst = std::max(worst, max_abs(via_generator - via_kraus));
  }
  return worst;
}

} // namespace madcap
