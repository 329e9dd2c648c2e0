#include "madcap/capacity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>

namespace madcap {

CMatrix DiagonalState::to_density() const {
  CMatrix rho = CMatrix::Zero(9, 9);
  const double cells[9] = {alpha, beta, beta, beta, gamma,
                           beta,  beta, beta, delta};
  for (Eigen::Index i = 0; i < 9; ++i) {
    rho(i, i) = cells[i];
  }
  return rho;
}

std::string status_name(CapStatus s) {
  switch (s) {
  case CapStatus::Exact: return "Exact";
  case CapStatus::UpperBound: return "UpperBound";
  case CapStatus::LowerBound: return "LowerBound";
  }
  throw OutOfRange("unknown capacity status");
}

std::string region_name(CapRegion r) {
  switch (r) {
  case CapRegion::Degradable: return "Degradable";
  case CapRegion::NonDegradableExactByMonotonicity:
    return "NonDegradableExactByMonotonicity";
  case CapRegion::NonDegradableBoundsOnly: return "NonDegradableBoundsOnly";
  }
  throw OutOfRange("unknown capacity region");
}

//============================================================================
// Entropic functionals
//============================================================================

namespace {

void check_input_state(const KrausChannel &ch, const CMatrix &rho) {
  if (rho.rows() != ch.dim_in || rho.cols() != ch.dim_in) {
    throw DimensionMismatch("state dimension does not match channel input");
  }
  if (!is_hermitian(rho, 1e-9 * std::max(1.0, max_abs(rho)))) {
    throw NonHermitian("input state must be Hermitian");
  }
  if (std::abs(rho.trace().real() - 1.0) > 1e-9 ||
      std::abs(rho.trace().imag()) > 1e-9) {
    throw InvalidState("input state must have unit trace");
  }
}

std::string fmt(double v) {
  if (v == 0.0) {
    v = 0.0; // never print a negative zero
  }
  std::ostringstream o;
  o << std::setprecision(12) << v;
  return o.str();
}

} // namespace

double coherent_information(const KrausChannel &ch, const CMatrix &rho) {
  check_input_state(ch, rho);
  const KrausChannel comp = complementary(ch);
  return von_neumann_entropy(madcap::apply(ch, rho)) -
         von_neumann_entropy(madcap::apply(comp, rho));
}

double mutual_information(const KrausChannel &ch, const CMatrix &rho) {
  return von_neumann_entropy(rho) + coherent_information(ch, rho);
}

double binary_entropy(double x) {
  if (x < -1e-12 || x > 1.0 + 1e-12) {
    throw OutOfRange("binary_entropy argument must lie in [0, 1]");
  }
  const double c = std::clamp(x, 0.0, 1.0);
  return -xlog2x(c) - xlog2x(1.0 - c);
}

std::pair<double, double> v_output_eigs(double a, double e, double k,
                                        double p1, double p2) {
  if (p1 < -1e-12 || p1 > 1.0 + 1e-12 || p2 < -1e-12 || p2 > 1.0 + 1e-12) {
    throw OutOfRange("decay probabilities must lie in [0, 1]");
  }
  const double pop = a * a + e * e + k * k;
  if (pop > 1.0 + 1e-12) {
    throw OutOfRange("corner amplitudes exceed normalization");
  }
  const double moved = p1 * e * e + p2 * k * k;
  const double l2 = 4.0 * (1.0 - a * a - moved) * moved;
  if (l2 > 1.0 + 1e-12) {
    throw OutOfRange("off-diagonal weight exceeds the Bloch bound");
  }
  const double root = std::sqrt(std::max(0.0, 1.0 - std::min(l2, 1.0)));
  return {(1.0 + root) / 2.0, (1.0 - root) / 2.0};
}

//============================================================================
// Closed-form objectives
//============================================================================

namespace {

double clamp0(double x) { return x > 0.0 ? x : 0.0; }

/// Decay weights shared by every family member: the two branching weights
/// draining the top level, the total top-level decay, and the survival of
/// the top level.
struct DecayWeights {
  double w22sq = 0.0; ///< weight of the |22⟩ → |00⟩ branch
  double w33sq = 0.0; ///< weight of the |22⟩ → |11⟩ branch
  double p23 = 0.0;   ///< total decay probability of |22⟩
  double keep = 0.0;  ///< (1−p2)(1−p3), survival of |22⟩
};

DecayWeights decay_weights(const DecayParams &p) {
  DecayWeights w;
  w.keep = (1.0 - p.p2) * (1.0 - p.p3);
  w.p23 = 1.0 - w.keep;
  w.w22sq = clamp0(p.p1 + (1.0 - p.theta) * p.p123);
  w.w33sq = clamp0(p.theta * p.p123);
  return w;
}

/// Input entropy of the symmetric diagonal state.
double input_entropy(const DiagonalState &s) {
  return -xlog2x(s.alpha) - 6.0 * xlog2x(s.beta) - xlog2x(s.gamma) -
         xlog2x(s.delta);
}

/// Coherent information of a generic family member at a symmetric diagonal
/// input, written with the channel's four decay weights: the output keeps
/// three corner populations and the six untouched cells, the environment
/// sees one no-jump weight and the three decay branches.
double generic_coherent(const DecayParams &p, const DiagonalState &s) {
  const DecayWeights w = decay_weights(p);
  const double a = s.alpha;
  const double b = s.beta;
  const double g = s.gamma;
  const double d = s.delta;
  const double out = -xlog2x(a + p.p1 * g + w.w22sq * d) - 6.0 * xlog2x(b) -
                     xlog2x((1.0 - p.p1) * g + w.w33sq * d) -
                     xlog2x(w.keep * d);
  const double env = -xlog2x(1.0 - p.p1 * g - w.p23 * d) -
                     xlog2x(p.p1 * g) - xlog2x(w.w22sq * d) -
                     xlog2x(w.w33sq * d);
  return out - env;
}

/// The conjugated single-decay variants act on a relabeled basis; their
/// objectives are the base forms read at the correspondingly permuted
/// diagonal state.
DiagonalState permuted_state(FamilyTag tag, const DiagonalState &s) {
  DiagonalState t = s;
  if (tag == FamilyTag::SingleDecay2) {
    std::swap(t.alpha, t.gamma);
  } else if (tag == FamilyTag::SingleDecay3) {
    std::swap(t.alpha, t.delta);
  }
  return t;
}

/// Output entropy minus the ensemble term of the classical relaxation for
/// the p3 = 0 face; `x` is the optimal off-diagonal weight 2(p1γ + p2δ).
double chi_face(double p1, double p2, const DiagonalState &s) {
  const double a = s.alpha;
  const double b = s.beta;
  const double g = s.gamma;
  const double d = s.delta;
  const double x = 2.0 * (p1 * g + p2 * d);
  const double h2arg = (1.0 + std::sqrt(std::max(0.0, 1.0 - x * x))) / 2.0;
  const double h2 = -xlog2x(h2arg) - xlog2x(1.0 - h2arg);
  return -xlog2x(a + p1 * g + p2 * d) - 6.0 * xlog2x(b) -
         xlog2x((1.0 - p1) * g) - xlog2x((1.0 - p2) * d) - h2;
}

} // namespace

double coherent_info_objective(FamilyTag tag, const DecayParams &p,
                               const DiagonalState &s) {
  return generic_coherent(p, permuted_state(tag, s));
}

double mutual_info_objective(FamilyTag tag, const DecayParams &p,
                             const DiagonalState &s) {
  return input_entropy(s) + coherent_info_objective(tag, p, s);
}

double holevo_objective(FamilyTag tag, const DecayParams &p,
                        const DiagonalState &s) {
  switch (tag) {
  case FamilyTag::SingleDecay1:
  case FamilyTag::SingleDecay2:
  case FamilyTag::SingleDecay3: {
    const DiagonalState t = permuted_state(tag, s);
    return chi_face(p.p1, 0.0, t);
  }
  case FamilyTag::VType:
    return chi_face(p.p1, p.p2, s);
  default:
    throw UnsupportedFamily(
        "classical-capacity bound is implemented for the single-decay and "
        "V-type families only");
  }
}

KrausChannel reduced_fulldamp_channel(double p2) {
  if (p2 < 0.0 || p2 > 1.0) {
    throw OutOfRange("decay probability p2 must lie in [0, 1]");
  }
  KrausChannel ch;
  ch.dim_in = 8;
  ch.dim_out = 8;
  CMatrix e0 = CMatrix::Identity(8, 8);
  e0(7, 7) = std::sqrt(1.0 - p2);
  ch.kraus.push_back(std::move(e0));
  if (p2 > 0.0) {
    CMatrix e1 = CMatrix::Zero(8, 8);
    e1(0, 7) = std::sqrt(p2);
    ch.kraus.push_back(std::move(e1));
  }
  ch.validate(1e-12);
  return ch;
}

double reduced_coherent_info_objective(double p2, const DiagonalState &s) {
  const double a = s.alpha;
  const double b = s.beta;
  const double d = s.delta;
  return -xlog2x(a + p2 * d) - 6.0 * xlog2x(b) - xlog2x((1.0 - p2) * d) +
         xlog2x(1.0 - p2 * d) + xlog2x(p2 * d);
}

//============================================================================
// Deterministic simplex optimizer
//============================================================================

namespace {

constexpr int kGridSteps = 50;    ///< coarse stage: 0.02 grid
constexpr int kStarts = 5;        ///< refinement starts kept from the grid
constexpr int kMaxIters = 500;    ///< refinement iteration cap
constexpr double kInitStep = 0.05;

using Coords = std::array<double, 3>; ///< free coordinates (unused trail 0)

DiagonalState coords_to_state(SimplexFamily fam, const Coords &x) {
  DiagonalState s;
  if (fam == SimplexFamily::Full9) {
    s.alpha = x[0];
    s.gamma = x[1];
    s.delta = x[2];
  } else {
    s.alpha = x[0];
    s.gamma = 0.0;
    s.delta = x[1];
  }
  s.beta = clamp0((1.0 - s.alpha - s.gamma - s.delta) / 6.0);
  return s;
}

/// Project onto {x ≥ 0, Σx ≤ 1}: clamp to the box first, then pull back
/// onto the probability simplex by the sorted-threshold rule when the sum
/// still exceeds one.
void project_feasible(int n, Coords &x) {
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    x[i] = std::clamp(x[i], 0.0, 1.0);
    sum += x[i];
  }
  if (sum <= 1.0) {
    return;
  }
  std::array<double, 3> u{};
  for (int i = 0; i < n; ++i) {
    u[i] = x[i];
  }
  std::sort(u.begin(), u.begin() + n, std::greater<double>());
  double cum = 0.0;
  double tau = 0.0;
  for (int j = 0; j < n; ++j) {
    cum += u[j];
    const double t = (cum - 1.0) / (j + 1);
    if (u[j] - t > 0.0) {
      tau = t;
    }
  }
  for (int i = 0; i < n; ++i) {
    x[i] = clamp0(x[i] - tau);
  }
}

struct Vertex {
  Coords x{};
  double val = 0.0;
};

bool better(const Vertex &a, const Vertex &b) {
  if (a.val != b.val) {
    return a.val > b.val;
  }
  return a.x < b.x; // deterministic tie-break
}

} // namespace

SimplexOptimum
maximize_simplex(const std::function<double(const DiagonalState &)> &f,
                 double tol, SimplexFamily family) {
  if (!(tol > 0.0)) {
    throw OutOfRange("optimizer tolerance must be positive");
  }
  const int n = family == SimplexFamily::Full9 ? 3 : 2;
  const auto eval = [&](const Coords &x) {
    return f(coords_to_state(family, x));
  };

  //--------------------------------------------------------------------------
  // Coarse grid stage.
  //--------------------------------------------------------------------------
  std::vector<Vertex> grid;
  const double step = 1.0 / kGridSteps;
  for (int i = 0; i <= kGridSteps; ++i) {
    for (int j = 0; j <= kGridSteps - i; ++j) {
      if (n == 2) {
        Vertex v;
        v.x = {i * step, j * step, 0.0};
        v.val = eval(v.x);
        grid.push_back(v);
        continue;
      }
      for (int k = 0; k <= kGridSteps - i - j; ++k) {
        Vertex v;
        v.x = {i * step, j * step, k * step};
        v.val = eval(v.x);
        grid.push_back(v);
      }
    }
  }
  std::sort(grid.begin(), grid.end(), better);

  //--------------------------------------------------------------------------
  // Reflection-based refinement from the best grid points.
  //--------------------------------------------------------------------------
  Vertex champion = grid.front();
  const int starts = std::min<int>(kStarts, static_cast<int>(grid.size()));
  for (int s = 0; s < starts; ++s) {
    std::vector<Vertex> simplex;
    simplex.push_back(grid[static_cast<std::size_t>(s)]);
    for (int i = 0; i < n; ++i) {
      Vertex v = grid[static_cast<std::size_t>(s)];
      v.x[static_cast<std::size_t>(i)] += kInitStep;
      project_feasible(n, v.x);
      v.val = eval(v.x);
      simplex.push_back(v);
    }

    for (int iter = 0; iter < kMaxIters; ++iter) {
      std::sort(simplex.begin(), simplex.end(), better);
      double diameter = 0.0;
      for (std::size_t i = 1; i < simplex.size(); ++i) {
        for (int c = 0; c < n; ++c) {
          diameter = std::max(diameter,
                              std::abs(simplex[i].x[static_cast<std::size_t>(
                                           c)] -
                                       simplex[0].x[static_cast<std::size_t>(
                                           c)]));
        }
      }
      if (diameter < tol) {
        break;
      }

      Coords centroid{};
      for (int i = 0; i < n; ++i) { // centroid of all but the worst vertex
        double c = 0.0;
        for (std::size_t v = 0; v + 1 < simplex.size(); ++v) {
          c += simplex[v].x[static_cast<std::size_t>(i)];
        }
        centroid[static_cast<std::size_t>(i)] = c / n;
      }
      const Vertex &worst = simplex.back();

      const auto shifted = [&](double scale) {
        Coords x{};
        for (int i = 0; i < n; ++i) {
          const auto ui = static_cast<std::size_t>(i);
          x[ui] = centroid[ui] + scale * (centroid[ui] - worst.x[ui]);
        }
        project_feasible(n, x);
        return Vertex{x, eval(x)};
      };

      const Vertex reflected = shifted(1.0);
      if (better(reflected, simplex[0])) {
        const Vertex expanded = shifted(2.0);
        simplex.back() = better(expanded, reflected) ? expanded : reflected;
      } else if (better(reflected, simplex[simplex.size() - 2])) {
        simplex.back() = reflected;
      } else {
        const Vertex contracted = shifted(-0.5);
        if (better(contracted, worst)) {
          simplex.back() = contracted;
        } else {
          for (std::size_t v = 1; v < simplex.size(); ++v) { // shrink
            for (int i = 0; i < n; ++i) {
              const auto ui = static_cast<std::size_t>(i);
              simplex[v].x[ui] =
                  simplex[0].x[ui] + 0.5 * (simplex[v].x[ui] - simplex[0].x[ui]);
            }
            project_feasible(n, simplex[v].x);
            simplex[v].val = eval(simplex[v].x);
          }
        }
      }
    }
    std::sort(simplex.begin(), simplex.end(), better);
    if (better(simplex[0], champion)) {
      champion = simplex[0];
    }
  }

  SimplexOptimum out;
  out.value = champion.val;
  out.argmax = coords_to_state(family, champion.x);
  return out;
}

//============================================================================
// Capacity assemblies
//============================================================================

namespace {

SimplexOptimum optimize_coherent(FamilyTag tag, const DecayParams &prm) {
  return maximize_simplex(
      [&](const DiagonalState &s) {
        return coherent_info_objective(tag, prm, s);
      });
}

/// Optimized single-decay value at the decay rate capped to the additive
/// boundary; serves as the capacity of one cascade leg.
double single_leg_value(double rate) {
  const double r = std::clamp(rate, 0.0, 0.5);
  const DecayParams prm = make_decay_params(r, 0.0, 0.0);
  return optimize_coherent(FamilyTag::SingleDecay1, prm).value;
}

/// Uniform state over a set of computational levels, when that state lies
/// in the symmetric diagonal family (the six middle cells all in or all
/// out); returns false otherwise.
bool uniform_over(const std::vector<Eigen::Index> &levels, DiagonalState &s) {
  if (levels.empty()) {
    return false;
  }
  bool has_mid = false;
  bool miss_mid = false;
  bool has[9] = {};
  for (Eigen::Index l : levels) {
    has[l] = true;
  }
  for (Eigen::Index l : {1, 2, 3, 5, 6, 7}) {
    (has[l] ? has_mid : miss_mid) = true;
  }
  if (has_mid && miss_mid) {
    return false;
  }
  const double w = 1.0 / static_cast<double>(levels.size());
  s.alpha = has[0] ? w : 0.0;
  s.beta = has_mid ? w : 0.0;
  s.gamma = has[4] ? w : 0.0;
  s.delta = has[8] ? w : 0.0;
  return true;
}

void require_pipeline_agreement(double closed, double pipeline,
                                std::vector<std::string> &notes) {
  const double residual = std::abs(closed - pipeline);
  if (residual > 1e-9) {
    throw InvalidState("closed-form objective disagrees with the entropy "
                       "pipeline by " +
                       fmt(residual));
  }
  notes.push_back("pipeline cross-check residual " + fmt(residual));
}

/// Shared assembly for the non-degradable branch: value is the best lower
/// bound (optimized diagonal coherent information vs. noiseless subspace),
/// pinched against a family-specific monotonicity upper bound.
CapacityResult pinch_result(const SimplexOptimum &opt, double lb_noiseless,
                            std::size_t noiseless_dim, double ub,
                            std::vector<std::string> ub_notes) {
  CapacityResult res;
  res.value = opt.value;
  res.argmax = opt.argmax;
  if (lb_noiseless > res.value) {
    res.value = lb_noiseless;
  }
  res.notes = std::move(ub_notes);
  res.notes.push_back("lower bound " + fmt(res.value) +
                      " from optimized diagonal coherent information and a "
                      "noiseless subspace of dimension " +
                      std::to_string(noiseless_dim));
  const double gap = ub - res.value;
  if (gap <= 1e-6) {
    res.status = CapStatus::Exact;
    res.region = CapRegion::NonDegradableExactByMonotonicity;
    res.notes.push_back("bounds pinch within " + fmt(std::max(gap, 0.0)));
  } else {
    res.status = CapStatus::LowerBound;
    res.region = CapRegion::NonDegradableBoundsOnly;
    res.notes.push_back("bound gap " + fmt(gap));
  }
  return res;
}

} // namespace

CapacityResult quantum_capacity(FamilyTag tag, double p1, double p2,
                                double p3) {
  auto [ch, prm] = family_channel(tag, p1, p2, p3);

  //--------------------------------------------------------------------------
  // The p1 = 1, p3 = 0 edge drains one level completely; its capacity is
  // carried verbatim by the 8-dimensional restriction, which has a proper
  // degradable region of its own.
  //--------------------------------------------------------------------------
  if (tag == FamilyTag::FullDamp1) {
    const KrausChannel reduced = reduced_fulldamp_channel(prm.p2);
    const DegradabilityReport rep8 = classify(reduced);
    const auto objective = [&](double q) {
      return [q](const DiagonalState &s) {
        return reduced_coherent_info_objective(q, s);
      };
    };
    if (rep8.degradable == Verdict::Yes) {
      const SimplexOptimum o =
          maximize_simplex(objective(prm.p2), 1e-10, SimplexFamily::Reduced8);
      CapacityResult res;
      res.value = o.value;
      res.status = CapStatus::Exact;
      res.argmax = o.argmax;
      res.region = CapRegion::Degradable;
      res.notes.push_back(
          "computed via the 8-dimensional restriction (one input level "
          "drains completely)");
      CMatrix rho8 = CMatrix::Zero(8, 8);
      const double cells[8] = {o.argmax.alpha, o.argmax.beta, o.argmax.beta,
                               o.argmax.beta,  o.argmax.beta, o.argmax.beta,
                               o.argmax.beta,  o.argmax.delta};
      for (Eigen::Index i = 0; i < 8; ++i) {
        rho8(i, i) = cells[i];
      }
      require_pipeline_agreement(o.value, coherent_information(reduced, rho8),
                                 res.notes);
      return res;
    }
    const SimplexOptimum o =
        maximize_simplex(objective(prm.p2), 1e-10, SimplexFamily::Reduced8);
    const SimplexOptimum cap =
        maximize_simplex(objective(0.5), 1e-10, SimplexFamily::Reduced8);
    const std::size_t nl = noiseless_subspace(reduced).size();
    return pinch_result(
        o, std::log2(static_cast<double>(std::max<std::size_t>(nl, 1))), nl,
        cap.value,
        {"upper bound " + fmt(cap.value) +
         " from decay monotonicity of the 8-dimensional restriction"});
  }

  const DegradabilityReport rep = classify(ch);

  //--------------------------------------------------------------------------
  // Degradable region: the optimized closed form is the capacity.
  //--------------------------------------------------------------------------
  if (rep.degradable == Verdict::Yes) {
    const SimplexOptimum o = optimize_coherent(tag, prm);
    CapacityResult res;
    res.value = o.value;
    res.status = CapStatus::Exact;
    res.argmax = o.argmax;
    res.region = CapRegion::Degradable;
    require_pipeline_agreement(
        o.value, coherent_information(ch, o.argmax.to_density()), res.notes);
    return res;
  }

  //--------------------------------------------------------------------------
  // Non-degradable region: pinch between lower bounds and a monotonicity
  // upper bound obtained by pulling the parameters back to the degradable
  // boundary along a composition path.
  //--------------------------------------------------------------------------
  const SimplexOptimum o = optimize_coherent(tag, prm);
  const std::vector<Eigen::Index> nl = noiseless_subspace(ch);
  const double lb_nl =
      std::log2(static_cast<double>(std::max<std::size_t>(nl.size(), 1)));

  double ub = 0.0;
  std::vector<std::string> ub_notes;
  switch (tag) {
  case FamilyTag::SingleDecay1:
  case FamilyTag::SingleDecay2:
  case FamilyTag::SingleDecay3: {
    ub = single_leg_value(prm.p1);
    ub_notes.push_back("upper bound " + fmt(ub) +
                       " from decay monotonicity (rate pulled back to 1/2)");
    break;
  }
  case FamilyTag::VType: {
    const double c1 = std::min(prm.p1, 0.5);
    const double c2 = std::min(prm.p2, 0.5);
    const DecayParams capped = make_decay_params(c1, c2, 0.0);
    ub = optimize_coherent(tag, capped).value;
    ub_notes.push_back("upper bound " + fmt(ub) +
                       " at the degradable boundary point (" + fmt(c1) + ", " +
                       fmt(c2) + ")");
    break;
  }
  case FamilyTag::LambdaType: {
    const double keep = (1.0 - prm.p2) * (1.0 - prm.p3);
    if (keep < 1e-12) {
      ub = single_leg_value(1.0);
      ub_notes.push_back("upper bound " + fmt(ub) +
                         " from the fully-drained edge of the family");
    } else {
      const double scale = std::log(0.5) / std::log(keep);
      const double q2 = 1.0 - std::pow(1.0 - prm.p2, scale);
      const double q3 = 1.0 - std::pow(1.0 - prm.p3, scale);
      const DecayParams boundary = make_decay_params(0.0, q2, q3);
      ub = optimize_coherent(tag, boundary).value;
      ub_notes.push_back("upper bound " + fmt(ub) +
                         " at the scaled degradable boundary (" + fmt(q2) +
                         ", " + fmt(q3) + ") along the fixed-ratio ray");
    }
    break;
  }
  case FamilyTag::ThreeDecay: {
    const DecayParams boundary = make_decay_params(0.5, 0.5, 0.0);
    ub = optimize_coherent(tag, boundary).value;
    ub_notes.push_back("upper bound " + fmt(ub) +
                       " at the degradable boundary (total top-level decay "
                       "pulled back to 1/2)");
    break;
  }
  case FamilyTag::EqualRates: {
    ub = single_leg_value(prm.p1);
    ub_notes.push_back("upper bound " + fmt(ub) +
                       " from the shared-rate cascade leg");
    break;
  }
  case FamilyTag::Full: {
    const double leg2 = std::clamp(
        prm.p1 + (1.0 - prm.theta) * prm.p123, 0.0, 1.0);
    const double leg3 =
        1.0 - leg2 <= 1e-14
            ? 0.0
            : std::clamp(prm.theta * prm.p123 / (1.0 - leg2), 0.0, 1.0);
    ub = std::min({single_leg_value(prm.p1), single_leg_value(leg2),
                   single_leg_value(leg3)});
    ub_notes.push_back("upper bound " + fmt(ub) +
                       " = min over the cascade legs (rates " + fmt(prm.p1) +
                       ", " + fmt(leg2) + ", " + fmt(leg3) + ")");
    break;
  }
  case FamilyTag::FullDamp1:
    throw UnsupportedFamily("unreachable"); // handled above
  }

  CapacityResult res = pinch_result(o, lb_nl, nl.size(), ub,
                                    std::move(ub_notes));
  if (lb_nl > o.value) {
    DiagonalState uni;
    if (uniform_over(nl, uni)) {
      res.argmax = uni;
    }
  }
  return res;
}

CapacityResult max_coherent_information(FamilyTag tag, double p1, double p2,
                                        double p3) {
  auto [ch, prm] = family_channel(tag, p1, p2, p3);
  const DegradabilityReport rep = classify(ch);
  const SimplexOptimum o = optimize_coherent(tag, prm);
  CapacityResult res;
  res.value = o.value;
  res.argmax = o.argmax;
  if (rep.degradable == Verdict::Yes) {
    res.status = CapStatus::Exact;
    res.region = CapRegion::Degradable;
  } else {
    res.status = CapStatus::LowerBound;
    res.region = CapRegion::NonDegradableBoundsOnly;
  }
  require_pipeline_agreement(
      o.value, coherent_information(ch, o.argmax.to_density()), res.notes);
  return res;
}

CapacityResult holevo_upper_bound(FamilyTag tag, double p1, double p2,
                                  double p3) {
  switch (tag) {
  case FamilyTag::SingleDecay1:
  case FamilyTag::SingleDecay2:
  case FamilyTag::SingleDecay3:
  case FamilyTag::VType:
    break;
  default:
    throw UnsupportedFamily(
        "classical-capacity bound is implemented for the single-decay and "
        "V-type families only");
  }
  auto [ch, prm] = family_channel(tag, p1, p2, p3);
  const DegradabilityReport rep = classify(ch);
  const SimplexOptimum o = maximize_simplex([&](const DiagonalState &s) {
    return holevo_objective(tag, prm, s);
  });
  CapacityResult res;
  res.value = o.value;
  res.status = CapStatus::UpperBound;
  res.argmax = o.argmax;
  res.region = rep.degradable == Verdict::Yes
                   ? CapRegion::Degradable
                   : CapRegion::NonDegradableBoundsOnly;
  return res;
}

CapacityResult ea_quantum_capacity(FamilyTag tag, double p1, double p2,
                                   double p3) {
  auto [ch, prm] = family_channel(tag, p1, p2, p3);
  const DegradabilityReport rep = classify(ch);
  const SimplexOptimum o = maximize_simplex([&](const DiagonalState &s) {
    return mutual_info_objective(tag, prm, s);
  });
  CapacityResult res;
  res.value = o.value / 2.0;
  res.status = CapStatus::Exact;
  res.argmax = o.argmax;
  res.region = rep.degradable == Verdict::Yes
                   ? CapRegion::Degradable
                   : CapRegion::NonDegradableBoundsOnly;
  require_pipeline_agreement(
      o.value, mutual_information(ch, o.argmax.to_density()), res.notes);
  res.notes.push_back("mutual information is additive; the optimized value "
                      "is exact in every region");
  return res;
}

CapacityResult ea_classical_capacity(FamilyTag tag, double p1, double p2,
                                     double p3) {
  CapacityResult res = ea_quantum_capacity(tag, p1, p2, p3);
  res.value *= 2.0;
  return res;
}

//============================================================================
// Brute-force Holevo oracle and concavity check
//============================================================================

double brute_force_holevo(const KrausChannel &ch,
                          const std::vector<EnsembleMember> &ensemble) {
  if (ensemble.empty()) {
    throw InvalidState("ensemble must not be empty");
  }
  double total = 0.0;
  for (const EnsembleMember &m : ensemble) {
    if (m.weight < -1e-12) {
      throw InvalidState("ensemble weights must be nonnegative");
    }
    if (m.state.size() != ch.dim_in) {
      throw DimensionMismatch("ensemble state dimension mismatch");
    }
    if (std::abs(m.state.norm() - 1.0) > 1e-9) {
      throw InvalidState("ensemble states must be normalized");
    }
    total += m.weight;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw InvalidState("ensemble weights must sum to one");
  }

  CMatrix average = CMatrix::Zero(ch.dim_in, ch.dim_in);
  double member_entropy = 0.0;
  for (const EnsembleMember &m : ensemble) {
    const CMatrix proj = m.state * m.state.adjoint();
    average += m.weight * proj;
    member_entropy += m.weight * von_neumann_entropy(madcap::apply(ch, proj));
  }
  return von_neumann_entropy(madcap::apply(ch, average)) - member_entropy;
}

std::vector<EnsembleMember> random_ensemble(Eigen::Index dim, int size,
                                            std::mt19937_64 &rng) {
  if (dim < 1 || size < 1) {
    throw OutOfRange("ensemble dimension and size must be positive");
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> raw(static_cast<std::size_t>(size));
  double total = 0.0;
  for (double &w : raw) {
    w = unit(rng) + 1e-6; // keep every member present
    total += w;
  }
  std::vector<EnsembleMember> members;
  members.reserve(raw.size());
  for (double w : raw) {
    EnsembleMember m;
    m.weight = w / total;
    m.state = random_pure_state(dim, rng);
    members.push_back(std::move(m));
  }
  return members;
}

DominanceReport diagonal_dominance_check(const KrausChannel &ch, int trials,
                                         unsigned long long seed) {
  if (trials < 1) {
    throw OutOfRange("trial count must be positive");
  }
  if (ch.dim_in != 9 || ch.dim_out != 9) {
    throw DimensionMismatch(
        "diagonal dominance check expects a two-qutrit channel");
  }
  if (classify(ch).degradable != Verdict::Yes) {
    throw PreconditionViolation(
        "diagonal dominance is only guaranteed for degradable channels");
  }
  const KrausChannel comp = complementary(ch);
  const auto coherent = [&](const CMatrix &rho) {
    return von_neumann_entropy(madcap::apply(ch, rho)) -
           von_neumann_entropy(madcap::apply(comp, rho));
  };

  std::mt19937_64 rng(seed);
  DominanceReport rep;
  rep.trials = trials;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    const CMatrix rho = random_density_matrix(9, rng);
    const CMatrix averaged = symmetrize_swap(twirl_diagonal(rho));
    rep.worst_margin =
        std::min(rep.worst_margin, coherent(averaged) - coherent(rho));
  }
  return rep;
}

} // namespace madcap
