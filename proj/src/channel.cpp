#include "madcap/channel.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace madcap {

void KrausChannel::validate(double tol) const {
  if (kraus.empty()) {
    throw InvalidState("channel has no Kraus operators");
  }
  if (dim_in <= 0 || dim_out <= 0) {
    throw DimensionMismatch("channel dimensions must be positive");
  }
  for (std::size_t n = 0; n < kraus.size(); ++n) {
    if (kraus[n].rows() != dim_out || kraus[n].cols() != dim_in) {
      std::ostringstream msg;
      msg << "Kraus operator " << n << " is " << kraus[n].rows() << "x"
          << kraus[n].cols() << ", expected " << dim_out << "x" << dim_in;
      throw DimensionMismatch(msg.str());
    }
  }
  CMatrix sum = CMatrix::Zero(dim_in, dim_in);
  for (const CMatrix &e : kraus) {
    sum += e.adjoint() * e;
  }
  const double defect = max_abs(sum - CMatrix::Identity(dim_in, dim_in));
  if (defect > tol) {
    std::ostringstream msg;
    msg << "Kraus completeness relation violated by " << defect;
    throw CptpViolation(msg.str());
  }
}

CMatrix apply(const KrausChannel &ch, const CMatrix &rho) {
  if (rho.rows() != ch.dim_in || rho.cols() != ch.dim_in) {
    std::ostringstream msg;
    msg << "apply: state is " << rho.rows() << "x" << rho.cols()
        << " but channel input dimension is " << ch.dim_in;
    throw DimensionMismatch(msg.str());
  }
  CMatrix out = CMatrix::Zero(ch.dim_out, ch.dim_out);
  for (const CMatrix &e : ch.kraus) {
    out += e * rho * e.adjoint();
  }
  return out;
}

ChoiMatrix choi(const KrausChannel &ch) {
  const Eigen::Index d_in = ch.dim_in;
  const Eigen::Index d_out = ch.dim_out;
  CMatrix c = CMatrix::Zero(d_out * d_in, d_out * d_in);
  // C = Σ_n (E_n ⊗ I)|Ω⟩⟨Ω|(E_n ⊗ I)† with |Ω⟩ = Σ_k |kk⟩; assembled
  // directly from the Kraus columns.
  for (const CMatrix &e : ch.kraus) {
    CVector w(d_out * d_in);
    for (Eigen::Index i = 0; i < d_out; ++i) {
      for (Eigen::Index k = 0; k < d_in; ++k) {
        w(i * d_in + k) = e(i, k);
      }
    }
    c += w * w.adjoint();
  }
  return ChoiMatrix{d_in, d_out, std::move(c)};
}

bool is_cptp(const KrausChannel &ch, double tol) {
  CMatrix sum = CMatrix::Zero(ch.dim_in, ch.dim_in);
  for (const CMatrix &e : ch.kraus) {
    if (e.rows() != ch.dim_out || e.cols() != ch.dim_in) {
      return false;
    }
    sum += e.adjoint() * e;
  }
  if (max_abs(sum - CMatrix::Identity(ch.dim_in, ch.dim_in)) > tol) {
    return false;
  }
  const ChoiMatrix c = choi(ch);
  const HermitianEig eig = hermitian_eig(c.mat, 1e-8);
  const double scale = std::max(1.0, max_abs(c.mat));
  return eig.eigenvalues.minCoeff() >= -tol * scale;
}

KrausChannel complementary(const KrausChannel &ch) {
  const Eigen::Index n_env = static_cast<Eigen::Index>(ch.kraus.size());
  // The complement sends ρ to the environment state with entries
  // Φ̃(ρ)[k,l] = tr(E_k ρ E_l†); its Kraus operators F_i are indexed by
  // the direct output basis and collect row i of every E_k:
  // (F_i)_{k,m} = (E_k)_{i,m}.
  std::vector<CMatrix> f(static_cast<std::size_t>(ch.dim_out),
                         CMatrix::Zero(n_env, ch.dim_in));
  for (Eigen::Index k = 0; k < n_env; ++k) {
    for (Eigen::Index i = 0; i < ch.dim_out; ++i) {
      for (Eigen::Index m = 0; m < ch.dim_in; ++m) {
        f[static_cast<std::size_t>(i)](k, m) =
            ch.kraus[static_cast<std::size_t>(k)](i, m);
      }
    }
  }
  return KrausChannel{ch.dim_in, n_env, std::move(f)};
}

SuperOperator superoperator(const KrausChannel &ch) {
  CMatrix m = CMatrix::Zero(ch.dim_out * ch.dim_out, ch.dim_in * ch.dim_in);
  for (const CMatrix &e : ch.kraus) {
    m += kron(e, e.conjugate());
  }
  return SuperOperator{ch.dim_in, ch.dim_out, std::move(m)};
}

ChoiMatrix superop_to_choi(const SuperOperator &m) {
  const Eigen::Index d_in = m.dim_in;
  const Eigen::Index d_out = m.dim_out;
  if (m.mat.rows() != d_out * d_out || m.mat.cols() != d_in * d_in) {
    std::ostringstream msg;
    msg << "superop_to_choi: matrix is " << m.mat.rows() << "x"
        << m.mat.cols() << " but dims give " << d_out * d_out << "x"
        << d_in * d_in;
    throw DimensionMismatch(msg.str());
  }
  CMatrix c(d_out * d_in, d_out * d_in);
  // Reshuffle: C[(i,k),(j,l)] = M[(i,j),(k,l)].
  for (Eigen::Index i = 0; i < d_out; ++i) {
    for (Eigen::Index k = 0; k < d_in; ++k) {
      for (Eigen::Index j = 0; j < d_out; ++j) {
        for (Eigen::Index l = 0; l < d_in; ++l) {
          c(i * d_in + k, j * d_in + l) = m.mat(i * d_out + j, k * d_in + l);
        }
      }
    }
  }
  return ChoiMatrix{d_in, d_out, std::move(c)};
}

KrausChannel compose(const KrausChannel &second, const KrausChannel &first) {
  if (first.dim_out != second.dim_in) {
    std::ostringstream msg;
    msg << "compose: first channel outputs dimension " << first.dim_out
        << " but second expects " << second.dim_in;
    throw DimensionMismatch(msg.str());
  }
  std::vector<CMatrix> prod;
  prod.reserve(first.kraus.size() * second.kraus.size());
  for (const CMatrix &f : second.kraus) {
    for (const CMatrix &e : first.kraus) {
      prod.push_back(f * e);
    }
  }
  return KrausChannel{first.dim_in, second.dim_out, std::move(prod)};
}

KrausChannel channel_from_choi(const ChoiMatrix &c, double clamp_tol) {
  const Eigen::Index d_in = c.dim_in;
  const Eigen::Index d_out = c.dim_out;
  if (c.mat.rows() != d_out * d_in || c.mat.cols() != d_out * d_in) {
    throw DimensionMismatch(
        "channel_from_choi: matrix shape inconsistent with dims");
  }
  const HermitianEig eig = hermitian_eig(c.mat, 1e-8);
  const double scale = std::max(1.0, max_abs(c.mat));
  KrausChannel ch;
  ch.dim_in = d_in;
  ch.dim_out = d_out;
  for (Eigen::Index n = 0; n < eig.eigenvalues.size(); ++n) {
    const double lam = eig.eigenvalues(n);
    if (lam < -clamp_tol * scale) {
      std::ostringstream msg;
      msg << "channel_from_choi: Choi matrix has negative eigenvalue " << lam;
      throw InvalidState(msg.str());
    }
    if (lam <= clamp_tol) {
      continue;
    }
    // Column vector |v⟩ over (out, in) index pairs becomes the operator
    // E(i, k) = √λ·v(i·d_in + k).
    CMatrix e(d_out, d_in);
    const double w = std::sqrt(lam);
    for (Eigen::Index i = 0; i < d_out; ++i) {
      for (Eigen::Index k = 0; k < d_in; ++k) {
        e(i, k) = w * eig.eigenvectors(i * d_in + k, n);
      }
    }
    ch.kraus.push_back(std::move(e));
  }
  if (ch.kraus.empty()) {
    throw InvalidState("channel_from_choi: Choi matrix is numerically zero");
  }
  return ch;
}

KrausChannel memory_channel(double mu, const KrausChannel &memoryless,
                            const KrausChannel &correlated) {
  if (mu < 0.0 || mu > 1.0) {
    std::ostringstream msg;
    msg << "memory_channel: mu = " << mu << " outside [0,1]";
    throw OutOfRange(msg.str());
  }
  if (correlated.dim_in != memoryless.dim_in * memoryless.dim_in ||
      correlated.dim_out != memoryless.dim_out * memoryless.dim_out) {
    throw DimensionMismatch(
        "memory_channel: correlated dims must equal squared memoryless dims");
  }
  std::vector<CMatrix> ops;
  ops.reserve(memoryless.kraus.size() * memoryless.kraus.size() +
              correlated.kraus.size());
  const double w_mem = std::sqrt(1.0 - mu);
  for (const CMatrix &a : memoryless.kraus) {
    for (const CMatrix &b : memoryless.kraus) {
      if (w_mem > 0.0) {
        ops.push_back(w_mem * kron(a, b));
      }
    }
  }
  const double w_cor = std::sqrt(mu);
  for (const CMatrix &f : correlated.kraus) {
    if (w_cor > 0.0) {
      ops.push_back(w_cor * f);
    }
  }
  return KrausChannel{correlated.dim_in, correlated.dim_out, std::move(ops)};
}

//============================================================================
// Serialization
//============================================================================

void write_channel(std::ostream &os, const KrausChannel &ch) {
  os << std::setprecision(17);
  os << "dim_in " << ch.dim_in << "\n";
  os << "dim_out " << ch.dim_out << "\n";
  os << "operators " << ch.kraus.size() << "\n";
  for (std::size_t n = 0; n < ch.kraus.size(); ++n) {
    os << "operator " << n << "\n";
    const CMatrix &e = ch.kraus[n];
    for (Eigen::Index r = 0; r < e.rows(); ++r) {
      for (Eigen::Index c = 0; c < e.cols(); ++c) {
        if (c > 0) {
          os << " ";
        }
        os << e(r, c).real() << "," << e(r, c).imag();
      }
      os << "\n";
    }
  }
}

void write_channel_file(const std::string &path, const KrausChannel &ch) {
  std::ofstream os(path);
  if (!os) {
    throw IoError("cannot open '" + path + "' for writing");
  }
  write_channel(os, ch);
  if (!os) {
    throw IoError("write to '" + path + "' failed");
  }
}

namespace {

/// Next content line (skipping blanks and '#' comments); false at EOF.
bool next_line(std::istream &is, std::string &line) {
  while (std::getline(is, line)) {
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') {
      continue;
    }
    return true;
  }
  return false;
}

long expect_header(std::istream &is, const std::string &key) {
  std::string line;
  if (!next_line(is, line)) {
    throw IoError("channel text ended before '" + key + "' header");
  }
  std::istringstream ss(line);
  std::string word;
  long value = -1;
  if (!(ss >> word >> value) || word != key || value < 0) {
    throw IoError("expected '" + key + " <count>', got: " + line);
  }
  return value;
}

} // namespace

KrausChannel read_channel(std::istream &is) {
  const long d_in = expect_header(is, "dim_in");
  const long d_out = expect_header(is, "dim_out");
  const long n_ops = expect_header(is, "operators");
  if (d_in <= 0 || d_out <= 0 || n_ops <= 0) {
    throw IoError("channel header counts must be positive");
  }
  KrausChannel ch;
  ch.dim_in = d_in;
  ch.dim_out = d_out;
  for (long n = 0; n < n_ops; ++n) {
    const long idx = expect_header(is, "operator");
    if (idx != n) {
      std::ostringstream msg;
      msg << "operator blocks out of order: expected " << n << ", got " << idx;
      throw IoError(msg.str());
    }
    CMatrix e(d_out, d_in);
    for (long r = 0; r < d_out; ++r) {
      std::string line;
      if (!next_line(is, line)) {
        throw IoError("channel text ended inside an operator block");
      }
      std::istringstream row(line);
      for (long c = 0; c < d_in; ++c) {
        std::string pair;
        if (!(row >> pair)) {
          std::ostringstream msg;
          msg << "operator " << n << " row " << r << " has fewer than "
              << d_in << " entries";
          throw IoError(msg.str());
        }
        const std::size_t comma = pair.find(',');
        if (comma == std::string::npos) {
          throw IoError("matrix entry '" + pair + "' is not 're,im'");
        }
        try {
          const double re = std::stod(pair.substr(0, comma));
          const double im = std::stod(pair.substr(comma + 1));
          e(r, c) = std::complex<double>(re, im);
        } catch (const std::exception &) {
          throw IoError("matrix entry '" + pair + "' is not numeric");
        }
      }
    }
    ch.kraus.push_back(std::move(e));
  }
  return ch;
}

KrausChannel read_channel_file(const std::string &path) {
  std::ifstream is(path);
  if (!is) {
    throw IoError("cannot open '" + path + "' for reading");
  }
  return read_channel(is);
}

} // namespace madcap
