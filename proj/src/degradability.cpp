#include "madcap/degradability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/SVD>

namespace madcap {

std::string verdict_name(Verdict v) {
  switch (v) {
  case Verdict::Yes: return "yes";
  case Verdict::No: return "no";
  case Verdict::Inconclusive: return "inconclusive";
  }
  throw OutOfRange("unknown verdict");
}

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

struct SvdFacts {
  int rank = 0;
  double smax = 0.0;
  double smin = 0.0; ///< smallest singular value (0 when not square)
  Eigen::BDCSVD<CMatrix> svd;
};

SvdFacts svd_facts(const CMatrix &m) {
  SvdFacts f;
  f.svd.compute(m, Eigen::ComputeThinU | Eigen::ComputeFullV);
  const RVector s = f.svd.singularValues();
  f.smax = s.size() > 0 ? s(0) : 0.0;
  const double cut = 1e-10 * std::max(1.0, f.smax);
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cut) {
      ++f.rank;
    }
  }
  f.smin = (m.rows() == m.cols() && s.size() > 0) ? s(s.size() - 1) : 0.0;
  return f;
}

/// Columns of a superoperator are vec of the image of one matrix unit;
/// reports which matrix units the map annihilates.
std::vector<Eigen::Index> zero_columns(const CMatrix &m) {
  const double cut = 1e-12 * std::max(1.0, m.cwiseAbs().maxCoeff());
  std::vector<Eigen::Index> cols;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    if (m.col(j).cwiseAbs().maxCoeff() <= cut) {
      cols.push_back(j);
    }
  }
  return cols;
}

/// Smallest eigenvalue of the reshuffled Choi matrix of the candidate map,
/// together with the scale used for the positivity threshold.
std::pair<double, double> choi_floor(const SuperOperator &cand) {
  const ChoiMatrix c = superop_to_choi(cand);
  const HermitianEig eig = hermitian_eig(c.mat, 1e-8);
  const double lo = eig.eigenvalues.minCoeff();
  const double hi = eig.eigenvalues.cwiseAbs().maxCoeff();
  return {lo, std::max(1.0, hi)};
}

} // namespace

DegradabilityReport classify(const KrausChannel &ch, double tol) {
  if (tol <= 0.0) {
    throw OutOfRange("classification tolerance must be positive");
  }
  ch.validate();

  const SuperOperator m_phi = superoperator(ch);
  const KrausChannel comp = complementary(ch);
  const SuperOperator m_phic = superoperator(comp);

  const SvdFacts f_phi = svd_facts(m_phi.mat);
  const SvdFacts f_phic = svd_facts(m_phic.mat);

  DegradabilityReport rep;
  rep.rank_phi = f_phi.rank;
  rep.rank_phic = f_phic.rank;
  rep.min_choi_eig_deg = kNan;
  rep.min_choi_eig_anti = kNan;

  const bool phi_invertible =
      m_phi.mat.rows() == m_phi.mat.cols() &&
      f_phi.smin > 1e-10 * std::max(1.0, f_phi.smax);
  const bool phic_invertible =
      m_phic.mat.rows() == m_phic.mat.cols() &&
      f_phic.smin > 1e-10 * std::max(1.0, f_phic.smax);

  //--------------------------------------------------------------------------
  // Degradability: solve D·M_Φ = M_Φ̃ when M_Φ is invertible — the solution
  // is then the unique linear intertwiner, so its Choi spectrum is decisive
  // either way.
  //--------------------------------------------------------------------------
  if (phi_invertible) {
    SuperOperator cand;
    cand.dim_in = ch.dim_out;
    cand.dim_out = comp.dim_out;
    cand.mat = m_phi.mat.transpose()
                   .fullPivLu()
                   .solve(m_phic.mat.transpose())
                   .transpose();
    const auto [lo, scale] = choi_floor(cand);
    rep.min_choi_eig_deg = lo;
    if (lo >= -tol * scale) {
      rep.degradable = Verdict::Yes;
    } else {
      rep.degradable = Verdict::No;
      std::ostringstream note;
      note << "unique degrading candidate has Choi eigenvalue " << lo;
      rep.structural_notes.push_back(note.str());
    }
  } else {
    // Structural obstruction (a): a matrix unit annihilated by the channel
    // but visible in the complement can never be recovered by
    // post-processing the channel output.
    bool blocked = false;
    const double comp_cut =
        1e-10 * std::max(1.0, m_phic.mat.cwiseAbs().maxCoeff());
    for (Eigen::Index j : zero_columns(m_phi.mat)) {
      if (m_phic.mat.col(j).cwiseAbs().maxCoeff() > comp_cut) {
        blocked = true;
        std::ostringstream note;
        note << "input coefficient (" << j / ch.dim_in << ","
             << j % ch.dim_in
             << ") reaches the environment but not the output";
        rep.structural_notes.push_back(note.str());
        break;
      }
    }
    if (blocked) {
      rep.degradable = Verdict::No;
    } else {
      rep.degradable = Verdict::Inconclusive;
      rep.structural_notes.push_back(
          "channel superoperator is singular; pseudo-inversion is not used "
          "to claim degradability");
    }
  }

  //--------------------------------------------------------------------------
  // Anti-degradability: same inversion route through the complement;
  // otherwise structural obstructions (b) and (c).
  //--------------------------------------------------------------------------
  if (phic_invertible) {
    SuperOperator cand;
    cand.dim_in = comp.dim_out;
    cand.dim_out = ch.dim_out;
    cand.mat = m_phic.mat.transpose()
                   .fullPivLu()
                   .solve(m_phi.mat.transpose())
                   .transpose();
    const auto [lo, scale] = choi_floor(cand);
    rep.min_choi_eig_anti = lo;
    if (lo >= -tol * scale) {
      rep.antidegradable = Verdict::Yes;
    } else {
      rep.antidegradable = Verdict::No;
      std::ostringstream note;
      note << "unique anti-degrading candidate has Choi eigenvalue " << lo;
      rep.structural_notes.push_back(note.str());
    }
  } else {
    bool blocked = false;
    // (b) ker Φ̃ ⊄ ker Φ: a direction the complement erases but the channel
    // transmits cannot be reproduced by post-processing the complement.
    const Eigen::Index n = m_phic.mat.cols();
    const Eigen::Index nullity = n - f_phic.rank;
    if (nullity > 0) {
      const CMatrix v = f_phic.svd.matrixV();
      const double cut = 1e-8 * std::max(1.0, f_phi.smax);
      for (Eigen::Index k = 0; k < nullity && !blocked; ++k) {
        const CVector dir = v.col(n - 1 - k);
        if ((m_phi.mat * dir).norm() > cut) {
          blocked = true;
          rep.structural_notes.push_back(
              "complement kernel is not contained in the channel kernel");
        }
      }
    }
    // (c) a noiseless subspace of dimension ≥ 2 carries quantum
    // information perfectly, which an anti-degradable channel cannot.
    if (!blocked && ch.dim_in == ch.dim_out) {
      const std::vector<Eigen::Index> nl = noiseless_subspace(ch);
      if (nl.size() >= 2) {
        blocked = true;
        std::ostringstream note;
        note << "noiseless subspace of dimension " << nl.size()
             << " forbids anti-degradability";
        rep.structural_notes.push_back(note.str());
      }
    }
    if (blocked) {
      rep.antidegradable = Verdict::No;
    } else {
      rep.antidegradable = Verdict::Inconclusive;
      rep.structural_notes.push_back(
          "complement superoperator is singular; pseudo-inversion is not "
          "used to claim anti-degradability");
    }
  }

  return rep;
}

namespace {

/// 0, step, 2·step, …, 1 (last point clamped to exactly 1).
std::vector<double> grid_axis(double step) {
  std::vector<double> axis;
  for (int i = 0;; ++i) {
    const double p = i * step;
    if (p > 1.0 + 1e-12) {
      break;
    }
    axis.push_back(std::min(p, 1.0));
  }
  if (axis.back() < 1.0 - 1e-12) {
    axis.push_back(1.0);
  }
  return axis;
}

} // namespace

std::vector<RegionRow> region_map(FamilyTag tag, double grid_step,
                                  double tol) {
  if (!(grid_step > 0.0) || grid_step > 0.25) {
    throw OutOfRange("grid step must lie in (0, 0.25]");
  }
  const std::vector<double> axis = grid_axis(grid_step);

  int free_params = 0;
  switch (tag) {
  case FamilyTag::SingleDecay1:
  case FamilyTag::SingleDecay2:
  case FamilyTag::SingleDecay3:
  case FamilyTag::FullDamp1:
  case FamilyTag::EqualRates:
    free_params = 1;
    break;
  case FamilyTag::VType:
  case FamilyTag::LambdaType:
  case FamilyTag::ThreeDecay:
    free_params = 2;
    break;
  case FamilyTag::Full:
    free_params = 3;
    break;
  }

  std::vector<RegionRow> rows;
  // Route the free grid coordinates into the argument slots each family
  // actually reads (p2/p3 for the Λ-shaped families, p1/p2 for V, …).
  const auto visit = [&](double a, double b, double c) {
    double q1 = 0.0;
    double q2 = 0.0;
    double q3 = 0.0;
    switch (tag) {
    case FamilyTag::SingleDecay1:
    case FamilyTag::SingleDecay2:
    case FamilyTag::SingleDecay3:
    case FamilyTag::EqualRates:
      q1 = a;
      break;
    case FamilyTag::FullDamp1:
      q2 = a;
      break;
    case FamilyTag::VType:
      q1 = a;
      q2 = b;
      break;
    case FamilyTag::LambdaType:
    case FamilyTag::ThreeDecay:
      q2 = a;
      q3 = b;
      break;
    case FamilyTag::Full:
      q1 = a;
      q2 = b;
      q3 = c;
      break;
    }
    try {
      auto [ch, prm] = family_channel(tag, q1, q2, q3);
      RegionRow row;
      row.p1 = prm.p1;
      row.p2 = prm.p2;
      row.p3 = prm.p3;
      row.report = classify(ch, tol);
      rows.push_back(std::move(row));
    } catch (const CptpViolation &) {
      // Outside the physical domain of the family: skipped.
    }
  };

  // Lexicographic order over the free grid coordinates.
  for (double a : axis) {
    if (free_params == 1) {
      visit(a, 0.0, 0.0);
      continue;
    }
    for (double b : axis) {
      if (free_params == 2) {
        visit(a, b, 0.0);
        continue;
      }
      for (double c : axis) {
        visit(a, b, c);
      }
    }
  }
  return rows;
}

std::vector<Eigen::Index> noiseless_subspace(const KrausChannel &ch) {
  ch.validate();
  if (ch.dim_in != ch.dim_out) {
    return {};
  }
  const Eigen::Index d = ch.dim_in;
  if (d > 16) {
    throw OutOfRange("noiseless_subspace supports dimension <= 16");
  }
  const SuperOperator m = superoperator(ch);

  // good(i,j): the matrix unit |i⟩⟨j| is a fixed point within 1e-12.
  std::vector<std::vector<bool>> good(static_cast<std::size_t>(d),
                                      std::vector<bool>(static_cast<std::size_t>(d), false));
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      CMatrix image = unvec(m.mat.col(i * d + j), d, d);
      image(i, j) -= 1.0;
      good[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          max_abs(image) <= 1e-12;
    }
  }

  // Exhaustive subset search; ties broken toward the lexicographically
  // smallest index set.
  std::vector<Eigen::Index> best;
  const unsigned long top = 1UL << d;
  for (unsigned long mask = 1; mask < top; ++mask) {
    std::vector<Eigen::Index> members;
    for (Eigen::Index i = 0; i < d; ++i) {
      if (mask & (1UL << i)) {
        members.push_back(i);
      }
    }
    if (members.size() < best.size()) {
      continue;
    }
    bool ok = true;
    for (std::size_t a = 0; a < members.size() && ok; ++a) {
      for (std::size_t b = 0; b < members.size() && ok; ++b) {
        ok = good[static_cast<std::size_t>(members[a])]
                 [static_cast<std::size_t>(members[b])];
      }
    }
    if (!ok) {
      continue;
    }
    if (members.size() > best.size() ||
        (members.size() == best.size() && members < best)) {
      best = std::move(members);
    }
  }
  return best;
}

} // namespace madcap
