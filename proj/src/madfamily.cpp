#include "madcap/madfamily.hpp"

#include <cmath>
#include <sstream>

namespace madcap {

namespace {

constexpr double kSurfaceSlack = 1e-12; ///< width of the p123 = 0 surface
constexpr double kEdgeSlack = 1e-15;    ///< detection of exact 0/1 inputs

void check_probability(double p, const char *name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream msg;
    msg << name << " = " << p << " outside [0,1]";
    throw OutOfRange(msg.str());
  }
}

double clamp0(double x) { return x > 0.0 ? x : 0.0; }

/// |t⟩⟨f| on the 9-dimensional joint space.
CMatrix lowering(Eigen::Index to, Eigen::Index from) {
  CMatrix m = CMatrix::Zero(9, 9);
  m(to, from) = 1.0;
  return m;
}

/// Permutation unitary from a list of index transpositions.
CMatrix transposition_unitary(
    const std::vector<std::pair<Eigen::Index, Eigen::Index>> &swaps,
    Eigen::Index dim = 9) {
  CMatrix u = CMatrix::Identity(dim, dim);
  for (const auto &[i, j] : swaps) {
    u(i, i) = 0.0;
    u(j, j) = 0.0;
    u(i, j) = 1.0;
    u(j, i) = 1.0;
  }
  return u;
}

} // namespace

FamilyTag family_tag_from_name(const std::string &name) {
  if (name == "full") return FamilyTag::Full;
  if (name == "single1") return FamilyTag::SingleDecay1;
  if (name == "single2") return FamilyTag::SingleDecay2;
  if (name == "single3") return FamilyTag::SingleDecay3;
  if (name == "v") return FamilyTag::VType;
  if (name == "lambda") return FamilyTag::LambdaType;
  if (name == "three") return FamilyTag::ThreeDecay;
  if (name == "fulldamp1") return FamilyTag::FullDamp1;
  if (name == "equal") return FamilyTag::EqualRates;
  throw UnsupportedFamily("unknown family name '" + name + "'");
}

std::string family_name(FamilyTag tag) {
  switch (tag) {
  case FamilyTag::Full: return "full";
  case FamilyTag::SingleDecay1: return "single1";
  case FamilyTag::SingleDecay2: return "single2";
  case FamilyTag::SingleDecay3: return "single3";
  case FamilyTag::VType: return "v";
  case FamilyTag::LambdaType: return "lambda";
  case FamilyTag::ThreeDecay: return "three";
  case FamilyTag::FullDamp1: return "fulldamp1";
  case FamilyTag::EqualRates: return "equal";
  }
  throw UnsupportedFamily("unknown family tag");
}

double theta_from_p(double p1, double p2, double p3) {
  check_probability(p1, "p1");
  check_probability(p2, "p2");
  check_probability(p3, "p3");
  const double p123 = (1.0 - p1) - (1.0 - p2) * (1.0 - p3);
  if (p123 <= 1e-14) {
    std::ostringstream msg;
    msg << "branching weight undefined: excess decay weight p123 = " << p123
        << " vanishes at (" << p1 << ", " << p2 << ", " << p3 << ")";
    throw Undefined(msg.str());
  }
  if (p1 >= 1.0 || p2 >= 1.0 || p3 >= 1.0) {
    throw Singular("branching weight requires all damping probabilities "
                   "strictly below 1 for the log mapping");
  }
  const double num = std::log(1.0 - p3);
  const double den =
      std::log(1.0 - p3) + std::log(1.0 - p2) - std::log(1.0 - p1);
  if (std::abs(den) < 1e-300) {
    throw Singular("branching weight denominator vanishes");
  }
  return num / den;
}

DecayParams make_decay_params(double p1, double p2, double p3) {
  check_probability(p1, "p1");
  check_probability(p2, "p2");
  check_probability(p3, "p3");
  DecayParams prm;
  prm.p1 = p1;
  prm.p2 = p2;
  prm.p3 = p3;
  prm.p123 = (1.0 - p1) - (1.0 - p2) * (1.0 - p3);

  // The two-step |22⟩→|11⟩→|00⟩ pathway weight Θ comes from the rate
  // mapping Γᵢt = −ln(1−pᵢ).  Several edges of the cube are reached only
  // as limits of that mapping; each gets its limiting value so the family
  // extends continuously to the entire physical domain:
  //  * p3 = 0 (no |22⟩→|11⟩ transition): Θ = 0, valid for every (p1,p2);
  //  * p1 = 1 (instantaneous first decay): Θ = 0;
  //  * the p123 = 0 surface: the pathway carries no weight, Θ unused;
  //  * p2 = 1 / p3 = 1: Θ = 0 / Θ = 1; at the doubly-instantaneous
  //    corner p2 = p3 = 1 the symmetric-rate limit Θ = 1/2 is adopted.
  if (p3 <= kEdgeSlack) {
    prm.theta = 0.0;
  } else if (p1 >= 1.0 - kEdgeSlack) {
    prm.theta = 0.0;
  } else if (std::abs(prm.p123) <= kSurfaceSlack) {
    prm.theta = 0.0;
  } else if (prm.p123 < -kSurfaceSlack) {
    std::ostringstream msg;
    msg << "parameters (" << p1 << ", " << p2 << ", " << p3
        << ") leave the physical domain: (1-p1) = " << 1.0 - p1
        << " < (1-p2)(1-p3) = " << (1.0 - p2) * (1.0 - p3);
    throw CptpViolation(msg.str());
  } else if (p2 >= 1.0 - kEdgeSlack && p3 >= 1.0 - kEdgeSlack) {
    prm.theta = 0.5;
  } else if (p2 >= 1.0 - kEdgeSlack) {
    prm.theta = 0.0;
  } else if (p3 >= 1.0 - kEdgeSlack) {
    prm.theta = 1.0;
  } else {
    prm.theta = theta_from_p(p1, p2, p3);
  }
  return prm;
}

KrausChannel mad_channel(const DecayParams &params) {
  const double p1 = params.p1;
  const double w11_sq = p1;
  const double w22_sq = clamp0(p1 + (1.0 - params.theta) * params.p123);
  const double w33_sq = clamp0(params.theta * params.p123);
  const double survive_8 = (1.0 - params.p2) * (1.0 - params.p3);

  CMatrix e00 = CMatrix::Identity(9, 9);
  e00(4, 4) = std::sqrt(clamp0(1.0 - p1));
  e00(8, 8) = std::sqrt(clamp0(survive_8));

  KrausChannel ch;
  ch.dim_in = 9;
  ch.dim_out = 9;
  ch.kraus.push_back(std::move(e00));
  if (w11_sq > 0.0) {
    ch.kraus.push_back(std::sqrt(w11_sq) * lowering(0, 4));
  }
  if (w22_sq > 0.0) {
    ch.kraus.push_back(std::sqrt(w22_sq) * lowering(0, 8));
  }
  if (w33_sq > 0.0) {
    ch.kraus.push_back(std::sqrt(w33_sq) * lowering(4, 8));
  }
  ch.validate(1e-12);
  return ch;
}

KrausChannel mad_channel(double p1, double p2, double p3) {
  return mad_channel(make_decay_params(p1, p2, p3));
}

std::pair<KrausChannel, DecayParams> family_channel(FamilyTag tag, double p1,
                                                    double p2, double p3) {
  switch (tag) {
  case FamilyTag::Full: {
    DecayParams prm = make_decay_params(p1, p2, p3);
    return {mad_channel(prm), prm};
  }
  case FamilyTag::SingleDecay1: {
    DecayParams prm = make_decay_params(p1, 0.0, 0.0);
    return {mad_channel(prm), prm};
  }
  case FamilyTag::SingleDecay2:
  case FamilyTag::SingleDecay3: {
    DecayParams prm = make_decay_params(p1, 0.0, 0.0);
    KrausChannel base = mad_channel(prm);
    const CMatrix u = transposition_unitary(
        {{0, tag == FamilyTag::SingleDecay2 ? Eigen::Index(4)
                                            : Eigen::Index(8)}});
    for (CMatrix &e : base.kraus) {
      e = u * e * u.adjoint();
    }
    return {std::move(base), prm};
  }
  case FamilyTag::VType: {
    DecayParams prm = make_decay_params(p1, p2, 0.0);
    return {mad_channel(prm), prm};
  }
  case FamilyTag::LambdaType: {
    DecayParams prm = make_decay_params(0.0, p2, p3);
    return {mad_channel(prm), prm};
  }
  case FamilyTag::ThreeDecay: {
    const double p23 = 1.0 - (1.0 - p2) * (1.0 - p3);
    DecayParams prm = make_decay_params(p23, p2, p3);
    return {mad_channel(prm), prm};
  }
  case FamilyTag::FullDamp1: {
    DecayParams prm = make_decay_params(1.0, p2, 0.0);
    return {mad_channel(prm), prm};
  }
  case FamilyTag::EqualRates: {
    DecayParams prm = make_decay_params(p1, p1, p1);
    return {mad_channel(prm), prm};
  }
  }
  throw UnsupportedFamily("unknown family tag");
}

std::vector<CMatrix> sign_unitaries() {
  const double signs[4][3] = {
      {1.0, 1.0, 1.0}, {1.0, 1.0, -1.0}, {1.0, -1.0, 1.0}, {-1.0, 1.0, 1.0}};
  std::vector<CMatrix> vs;
  vs.reserve(4);
  for (const auto &s : signs) {
    CMatrix v = CMatrix::Zero(3, 3);
    v(0, 0) = s[0];
    v(1, 1) = s[1];
    v(2, 2) = s[2];
    vs.push_back(std::move(v));
  }
  std::vector<CMatrix> us;
  us.reserve(16);
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) {
      us.push_back(kron(vs[m], vs[n]));
    }
  }
  return us;
}

std::vector<CMatrix> swap_unitaries() {
  return {
      transposition_unitary({{1, 2}, {3, 5}, {6, 7}}),
      transposition_unitary({{1, 7}, {2, 3}, {5, 6}}),
      transposition_unitary({{1, 3}, {2, 6}, {5, 7}}),
      transposition_unitary({{1, 5}, {3, 6}, {2, 7}}),
      transposition_unitary({{1, 6}, {3, 7}, {2, 5}}),
  };
}

CMatrix twirl_diagonal(const CMatrix &rho) {
  if (rho.rows() != 9 || rho.cols() != 9) {
    std::ostringstream msg;
    msg << "twirl_diagonal: expected a 9x9 state, got " << rho.rows() << "x"
        << rho.cols();
    throw DimensionMismatch(msg.str());
  }
  const std::vector<CMatrix> us = sign_unitaries();
  CMatrix acc = CMatrix::Zero(9, 9);
  for (const CMatrix &u : us) {
    acc += u * rho * u.adjoint();
  }
  return acc / 16.0;
}

CMatrix symmetrize_swap(const CMatrix &rho) {
  if (rho.rows() != 9 || rho.cols() != 9) {
    std::ostringstream msg;
    msg << "symmetrize_swap: expected a 9x9 state, got " << rho.rows() << "x"
        << rho.cols();
    throw DimensionMismatch(msg.str());
  }
  const CMatrix off = rho - rho.diagonal().asDiagonal().toDenseMatrix();
  if (max_abs(off) > 1e-12) {
    std::ostringstream msg;
    msg << "symmetrize_swap: input has off-diagonal weight " << max_abs(off)
        << "; twirl first";
    throw NonDiagonalInput(msg.str());
  }
  CMatrix acc = rho;
  for (const CMatrix &v : swap_unitaries()) {
    acc += v * rho * v.adjoint();
  }
  return acc / 6.0;
}

} // namespace madcap
