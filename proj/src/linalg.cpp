#include "madcap/linalg.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace madcap {

namespace {
constexpr double kEntropyClamp = 1e-12;
} // namespace

double max_abs(const CMatrix &m) {
  if (m.size() == 0) {
    return 0.0;
  }
  return m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const CMatrix &m, double tol) {
  if (m.rows() != m.cols()) {
    return false;
  }
  return max_abs(m - m.adjoint()) <= tol;
}

CMatrix kron(const CMatrix &a, const CMatrix &b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

HermitianEig hermitian_eig(const CMatrix &m, double herm_tol) {
  if (m.rows() != m.cols()) {
    std::ostringstream msg;
    msg << "hermitian_eig requires a square matrix, got " << m.rows() << "x"
        << m.cols();
    throw DimensionMismatch(msg.str());
  }
  const double scale = std::max(1.0, max_abs(m));
  if (max_abs(m - m.adjoint()) > herm_tol * scale) {
    std::ostringstream msg;
    msg << "hermitian_eig input deviates from Hermitian symmetry by "
        << max_abs(m - m.adjoint());
    throw NonHermitian(msg.str());
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m);
  if (solver.info() != Eigen::Success) {
    throw NonHermitian("hermitian_eig: eigensolver failed to converge");
  }
  return HermitianEig{solver.eigenvalues(), solver.eigenvectors()};
}

double xlog2x(double x) {
  if (x <= kEntropyClamp) {
    return 0.0;
  }
  return x * std::log2(x);
}

double von_neumann_entropy(const CMatrix &rho) {
  const HermitianEig eig = hermitian_eig(rho);
  double bits = 0.0;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    const double lam = eig.eigenvalues(i);
    if (lam < -1e-8) {
      std::ostringstream msg;
      msg << "von_neumann_entropy: state has negative eigenvalue " << lam;
      throw InvalidState(msg.str());
    }
    bits -= xlog2x(lam);
  }
  return bits;
}

CVector vec(const CMatrix &m) {
  CVector v(m.rows() * m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      v(r * m.cols() + c) = m(r, c);
    }
  }
  return v;
}

CMatrix unvec(const CVector &v, Eigen::Index rows, Eigen::Index cols) {
  if (v.size() != rows * cols) {
    std::ostringstream msg;
    msg << "unvec: vector of length " << v.size() << " does not reshape to "
        << rows << "x" << cols;
    throw DimensionMismatch(msg.str());
  }
  CMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = v(r * cols + c);
    }
  }
  return m;
}

CMatrix partial_trace(const CMatrix &m, Eigen::Index dA, Eigen::Index dB,
                      Subsystem keep) {
  if (m.rows() != dA * dB || m.cols() != dA * dB) {
    std::ostringstream msg;
    msg << "partial_trace: operator is " << m.rows() << "x" << m.cols()
        << " but dims give " << dA * dB;
    throw DimensionMismatch(msg.str());
  }
  if (keep == Subsystem::A) {
    CMatrix out = CMatrix::Zero(dA, dA);
    for (Eigen::Index i = 0; i < dA; ++i) {
      for (Eigen::Index j = 0; j < dA; ++j) {
        for (Eigen::Index b = 0; b < dB; ++b) {
          out(i, j) += m(i * dB + b, j * dB + b);
        }
      }
    }
    return out;
  }
  CMatrix out = CMatrix::Zero(dB, dB);
  for (Eigen::Index i = 0; i < dB; ++i) {
    for (Eigen::Index j = 0; j < dB; ++j) {
      for (Eigen::Index a = 0; a < dA; ++a) {
        out(i, j) += m(a * dB + i, a * dB + j);
      }
    }
  }
  return out;
}

namespace {

CMatrix ginibre(Eigen::Index rows, Eigen::Index cols, std::mt19937_64 &rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix g(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = std::complex<double>(re, im);
    }
  }
  return g;
}

} // namespace

CMatrix random_density_matrix(Eigen::Index dim, std::mt19937_64 &rng) {
  const CMatrix g = ginibre(dim, dim, rng);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return rho;
}

CMatrix random_unitary(Eigen::Index dim, std::mt19937_64 &rng) {
  const CMatrix g = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase ambiguity so the distribution is uniform.
  for (Eigen::Index j = 0; j < dim; ++j) {
    const std::complex<double> d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) {
      q.col(j) *= d / mag;
    }
  }
  return q;
}

CVector random_pure_state(Eigen::Index dim, std::mt19937_64 &rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector psi(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    psi(i) = std::complex<double>(normal(rng), normal(rng));
  }
  psi.normalize();
  return psi;
}

} // namespace madcap
