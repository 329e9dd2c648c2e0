// Acceptance gate for the fully correlated two-qutrit damping toolkit.
// Each numbered criterion prints one PASS/FAIL line; the process exits
// nonzero when any criterion fails.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "madcap/capacity.hpp"
#include "madcap/degradability.hpp"
#include "madcap/lindblad.hpp"
#include "madcap/madfamily.hpp"

namespace {

using namespace madcap;

constexpr double kLog2_9 = 3.1699250014423126;
constexpr double kLog2_7 = 2.807354922057604;

int failures = 0;

void report(int number, bool pass, const std::string &label,
            const std::string &detail = "") {
  std::printf("criterion %2d: %s — %s%s%s\n", number, pass ? "PASS" : "FAIL",
              label.c_str(), detail.empty() ? "" : " — ",
              detail.c_str());
  if (!pass) {
    ++failures;
  }
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

//----------------------------------------------------------------------------
// 1. Zero-noise endpoint: quantum and entanglement-assisted rates hit log2 9.
//----------------------------------------------------------------------------
void criterion1() {
  const double q = quantum_capacity(FamilyTag::SingleDecay1, 0.0).value;
  const double e = ea_quantum_capacity(FamilyTag::SingleDecay1, 0.0).value;
  const bool pass =
      std::abs(q - kLog2_9) <= 1e-5 && std::abs(e - kLog2_9) <= 1e-5;
  report(1, pass, "noiseless endpoint equals log2(9)",
         "quantum " + num(q) + ", assisted " + num(e));
}

//----------------------------------------------------------------------------
// 2. Single-decay plateau at 3 beyond rate 1/2, with exact status.
//----------------------------------------------------------------------------
void criterion2() {
  bool pass = true;
  std::string detail;
  for (double p : {0.5, 0.6, 0.9, 1.0}) {
    const CapacityResult r = quantum_capacity(FamilyTag::SingleDecay1, p);
    const bool ok =
        std::abs(r.value - 3.0) <= 1e-5 && r.status == CapStatus::Exact;
    if (!ok) {
      pass = false;
    }
    detail += (detail.empty() ? "" : ", ") + num(r.value);
  }
  report(2, pass, "single-decay plateau pins 3.000000 exactly", detail);
}

//----------------------------------------------------------------------------
// 3. Symmetric V-type point lands on log2 7.
//----------------------------------------------------------------------------
void criterion3() {
  const double q = quantum_capacity(FamilyTag::VType, 0.75, 0.75).value;
  report(3, std::abs(q - kLog2_7) <= 1e-5,
         "V-type (0.75, 0.75) equals log2(7)", num(q));
}

//----------------------------------------------------------------------------
// 4. Lambda-type plateau at 3 once the retained product drops below 1/2.
//----------------------------------------------------------------------------
void criterion4() {
  bool pass = true;
  std::string detail;
  const std::vector<std::pair<double, double>> points = {
      {0.8, 0.7}, {0.9, 0.5}, {0.6, 0.9}};
  for (const auto &[p2, p3] : points) {
    const CapacityResult r = quantum_capacity(FamilyTag::LambdaType, 0.0, p2, p3);
    if (std::abs(r.value - 3.0) > 1e-5) {
      pass = false;
    }
    detail += (detail.empty() ? "" : ", ") + num(r.value);
  }
  report(4, pass, "lambda-type plateau pins 3.000000 in the drained region",
         detail);
}

//----------------------------------------------------------------------------
// 5. Degradability region maps on a 0.05 grid match the known thresholds
//    (within one grid cell), and antidegradability never fires.
//----------------------------------------------------------------------------
void criterion5() {
  const double step = 0.05;
  const double cell = step + 1e-9;
  bool pass = true;
  std::string detail;

  const auto check_rows = [&](const std::vector<RegionRow> &rows,
                              auto &&expected_deg, const char *name) {
    for (const RegionRow &r : rows) {
      const int want = expected_deg(r); // 1 yes, 0 no, -1 either (boundary)
      const bool is_deg = r.report.degradable == Verdict::Yes;
      if (want >= 0 && is_deg != (want == 1)) {
        pass = false;
        detail = std::string(name) + " mismatch at (" + num(r.p1) + "," +
                 num(r.p2) + "," + num(r.p3) + ")";
        return;
      }
      if (r.report.antidegradable == Verdict::Yes) {
        pass = false;
        detail = std::string(name) + " claims antidegradability at (" +
                 num(r.p1) + "," + num(r.p2) + "," + num(r.p3) + ")";
        return;
      }
    }
  };

  check_rows(region_map(FamilyTag::SingleDecay1, step),
             [&](const RegionRow &r) {
               if (std::abs(r.p1 - 0.5) < cell) {
                 return -1;
               }
               return r.p1 < 0.5 ? 1 : 0;
             },
             "single-decay");
  check_rows(region_map(FamilyTag::VType, step),
             [&](const RegionRow &r) {
               const double m = std::max(r.p1, r.p2);
               if (std::abs(m - 0.5) < cell) {
                 return -1;
               }
               return m < 0.5 ? 1 : 0;
             },
             "V-type");
  const auto product_rule = [&](const RegionRow &r) {
    const double keep = (1.0 - r.p2) * (1.0 - r.p3);
    if (std::abs(keep - 0.5) < 2.0 * cell) {
      return -1;
    }
    return keep > 0.5 ? 1 : 0;
  };
  check_rows(region_map(FamilyTag::LambdaType, step), product_rule,
             "lambda-type");
  check_rows(region_map(FamilyTag::ThreeDecay, step), product_rule,
             "three-decay");

  report(5, pass, "degradability regions match the thresholds on a 0.05 grid",
         detail);
}

//----------------------------------------------------------------------------
// 6. Classical-capacity relaxation: endpoint values plus dominance over
//    200 random ensembles at each of 10 parameter points.
//----------------------------------------------------------------------------
void criterion6() {
  bool pass = true;
  std::string detail;

  const double b0 = holevo_upper_bound(FamilyTag::SingleDecay1, 0.0).value;
  const double bv = holevo_upper_bound(FamilyTag::VType, 1.0, 0.0).value;
  if (std::abs(b0 - kLog2_9) > 1e-5 || std::abs(bv - 3.0) > 1e-5) {
    pass = false;
    detail = "endpoint bounds " + num(b0) + ", " + num(bv);
  }

  const std::vector<std::pair<FamilyTag, std::array<double, 3>>> points = {
      {FamilyTag::SingleDecay1, {0.1, 0.0, 0.0}},
      {FamilyTag::SingleDecay1, {0.3, 0.0, 0.0}},
      {FamilyTag::SingleDecay1, {0.5, 0.0, 0.0}},
      {FamilyTag::SingleDecay1, {0.7, 0.0, 0.0}},
      {FamilyTag::SingleDecay1, {0.9, 0.0, 0.0}},
      {FamilyTag::VType, {0.2, 0.3, 0.0}},
      {FamilyTag::VType, {0.5, 0.5, 0.0}},
      {FamilyTag::VType, {0.7, 0.2, 0.0}},
      {FamilyTag::VType, {0.3, 0.8, 0.0}},
      {FamilyTag::VType, {0.9, 0.9, 0.0}},
  };
  std::mt19937_64 rng(20250822ULL);
  double worst_excess = -1e9;
  for (const auto &[tag, p] : points) {
    if (!pass) {
      break;
    }
    const KrausChannel ch = family_channel(tag, p[0], p[1], p[2]).first;
    const double bound = holevo_upper_bound(tag, p[0], p[1], p[2]).value;
    for (int n = 0; n < 200; ++n) {
      const double chi = brute_force_holevo(ch, random_ensemble(9, 10, rng));
      worst_excess = std::max(worst_excess, chi - bound);
      if (chi > bound + 1e-9) {
        pass = false;
        detail = family_name(tag) + " ensemble beats the bound by " +
                 num(chi - bound);
        break;
      }
    }
  }
  if (pass) {
    detail = "worst ensemble margin " + num(-worst_excess);
  }
  report(6, pass, "classical relaxation dominates 2000 random ensembles",
         detail);
}

//----------------------------------------------------------------------------
// 7. Generator flow matches the operator-sum form; spectrum multiset.
//----------------------------------------------------------------------------
void criterion7() {
  bool pass = true;
  std::string detail;

  std::mt19937_64 rng(424242ULL);
  std::uniform_real_distribution<double> rate(0.1, 1.2);
  std::uniform_real_distribution<double> time(0.1, 2.0);
  double worst = 0.0;
  for (int n = 0; n < 20; ++n) {
    RateParams g;
    g.gamma1 = rate(rng);
    g.gamma2 = rate(rng);
    g.gamma3 = rate(rng);
    if (g.gamma2 + g.gamma3 <= g.gamma1) {
      g.gamma2 += g.gamma1;
    }
    g.t = time(rng);
    worst = std::max(worst, kraus_consistency(g, 20, 1000 + 7 * n));
  }
  if (worst > 1e-9) {
    pass = false;
  }
  detail = "worst residual " + num(worst);

  RateParams g;
  g.gamma1 = 0.43;
  g.gamma2 = 0.71;
  g.gamma3 = 0.97;
  const auto clusters = spectral_multiset(dissipator_correlated(g));
  std::vector<int> mults;
  for (const auto &[lam, m] : clusters) {
    mults.push_back(m);
  }
  std::sort(mults.begin(), mults.end());
  const std::vector<int> expected = {1, 1, 2, 14, 14, 49};
  if (mults != expected) {
    pass = false;
    detail += "; unexpected multiplicities";
  }
  report(7, pass, "Lindblad flow and spectrum agree with the operator form",
         detail);
}

//----------------------------------------------------------------------------
// 8. Covariance of four named families under all 21 group elements.
//----------------------------------------------------------------------------
void criterion8() {
  std::vector<CMatrix> unitaries = sign_unitaries();
  const std::vector<CMatrix> swaps = swap_unitaries();
  unitaries.insert(unitaries.end(), swaps.begin(), swaps.end());

  const std::vector<std::pair<FamilyTag, std::array<double, 3>>> members = {
      {FamilyTag::SingleDecay1, {0.2, 0.0, 0.0}},
      {FamilyTag::SingleDecay1, {0.5, 0.0, 0.0}},
      {FamilyTag::SingleDecay1, {0.9, 0.0, 0.0}},
      {FamilyTag::VType, {0.3, 0.2, 0.0}},
      {FamilyTag::VType, {0.6, 0.5, 0.0}},
      {FamilyTag::VType, {0.8, 0.9, 0.0}},
      {FamilyTag::LambdaType, {0.0, 0.3, 0.2}},
      {FamilyTag::LambdaType, {0.0, 0.5, 0.5}},
      {FamilyTag::LambdaType, {0.0, 0.9, 0.6}},
      {FamilyTag::ThreeDecay, {0.0, 0.25, 0.35}},
      {FamilyTag::ThreeDecay, {0.0, 0.5, 0.5}},
      {FamilyTag::ThreeDecay, {0.0, 0.8, 0.6}},
  };

  std::mt19937_64 rng(31337ULL);
  double worst = 0.0;
  for (const auto &[tag, p] : members) {
    const KrausChannel ch = family_channel(tag, p[0], p[1], p[2]).first;
    for (int n = 0; n < 50; ++n) {
      const CMatrix rho = random_density_matrix(9, rng);
      for (const CMatrix &u : unitaries) {
        worst = std::max(
            worst, max_abs(madcap::apply(ch, u * rho * u.adjoint()) -
                           u * madcap::apply(ch, rho) * u.adjoint()));
      }
    }
  }
  report(8, worst <= 1e-12, "family covariance under all 21 unitaries",
         "worst residual " + num(worst));
}

//----------------------------------------------------------------------------
// 9. Composition rule for single-rate members plus the semigroup law.
//----------------------------------------------------------------------------
void criterion9() {
  std::mt19937_64 rng(271828ULL);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int n = 0; n < 10; ++n) {
    const double a = unit(rng);
    const double b = unit(rng);
    const CMatrix lhs =
        superoperator(compose(mad_channel(a, 0.0, 0.0),
                              mad_channel(b, 0.0, 0.0)))
            .mat;
    const CMatrix rhs = superoperator(mad_channel(a + b - a * b, 0.0, 0.0)).mat;
    worst = std::max(worst, max_abs(lhs - rhs));
  }
  bool pass = worst <= 1e-12;
  std::string detail = "superoperator residual " + num(worst);

  RateParams g;
  g.gamma1 = 0.4;
  g.gamma2 = 0.7;
  g.gamma3 = 0.9;
  double sg_worst = 0.0;
  for (int n = 0; n < 5; ++n) {
    const CMatrix rho = random_density_matrix(9, rng);
    RateParams ga = g;
    ga.t = 0.3;
    RateParams gb = g;
    gb.t = 0.8;
    RateParams gc = g;
    gc.t = 1.1;
    sg_worst = std::max(
        sg_worst, max_abs(evolve(evolve(rho, ga), gb) - evolve(rho, gc)));
  }
  if (sg_worst > 1e-9) {
    pass = false;
  }
  detail += ", semigroup residual " + num(sg_worst);
  report(9, pass, "damping probabilities compose as p = a + b − ab", detail);
}

//----------------------------------------------------------------------------
// 10. Every closed-form objective agrees with the entropy pipeline at 50
//     random simplex points per family.
//----------------------------------------------------------------------------
void criterion10() {
  const std::vector<std::pair<FamilyTag, std::array<double, 3>>> members = {
      {FamilyTag::SingleDecay1, {0.3, 0.0, 0.0}},
      {FamilyTag::SingleDecay2, {0.45, 0.0, 0.0}},
      {FamilyTag::SingleDecay3, {0.6, 0.0, 0.0}},
      {FamilyTag::VType, {0.35, 0.2, 0.0}},
      {FamilyTag::LambdaType, {0.0, 0.25, 0.3}},
      {FamilyTag::ThreeDecay, {0.0, 0.4, 0.3}},
      {FamilyTag::FullDamp1, {0.0, 0.45, 0.0}},
      {FamilyTag::EqualRates, {0.35, 0.0, 0.0}},
      {FamilyTag::Full, {0.2, 0.5, 0.4}},
  };
  std::mt19937_64 rng(1618033ULL);
  std::exponential_distribution<double> expo(1.0);
  double worst = 0.0;
  for (const auto &[tag, p] : members) {
    const auto [ch, prm] = family_channel(tag, p[0], p[1], p[2]);
    for (int n = 0; n < 50; ++n) {
      const double w0 = expo(rng);
      const double w1 = expo(rng);
      const double w2 = expo(rng);
      const double w3 = expo(rng);
      const double total = w0 + w1 + w2 + w3;
      DiagonalState s;
      s.alpha = w0 / total;
      s.beta = w1 / total / 6.0;
      s.gamma = w2 / total;
      s.delta = w3 / total;
      const CMatrix rho = s.to_density();
      worst = std::max(worst, std::abs(coherent_info_objective(tag, prm, s) -
                                       coherent_information(ch, rho)));
      worst = std::max(worst, std::abs(mutual_info_objective(tag, prm, s) -
                                       mutual_information(ch, rho)));
      if (tag == FamilyTag::SingleDecay1 || tag == FamilyTag::VType) {
        // Classical objective: dominance sanity against the pipeline is
        // covered by criterion 6; here we only require finiteness.
        const double chi = holevo_objective(tag, prm, s);
        if (!std::isfinite(chi)) {
          worst = 1.0;
        }
      }
    }
  }
  report(10, worst <= 1e-9,
         "closed-form objectives match the entropy pipeline",
         "worst residual " + num(worst));
}

//----------------------------------------------------------------------------
// 11. The deterministic optimizer beats a dense 0.005 grid within 1e-4.
//----------------------------------------------------------------------------
void criterion11() {
  bool pass = true;
  std::string detail;

  for (double p1 : {0.1, 0.3, 0.5}) {
    const DecayParams prm = make_decay_params(p1, 0.0, 0.0);
    const auto f = [&](const DiagonalState &s) {
      return coherent_info_objective(FamilyTag::SingleDecay1, prm, s);
    };
    const double opt = maximize_simplex(f).value;

    double best_grid = -1e300;
    const int n = 200; // 0.005 grid over (alpha, gamma, delta)
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; j + i <= n; ++j) {
        for (int k = 0; k + j + i <= n; ++k) {
          DiagonalState s;
          s.alpha = i / static_cast<double>(n);
          s.gamma = j / static_cast<double>(n);
          s.delta = k / static_cast<double>(n);
          s.beta = (1.0 - s.alpha - s.gamma - s.delta) / 6.0;
          best_grid = std::max(best_grid, f(s));
        }
      }
    }
    if (opt < best_grid - 1e-4) {
      pass = false;
      detail = "single-decay p1 = " + num(p1) + ": optimizer " + num(opt) +
               " vs grid " + num(best_grid);
    }
  }

  for (double p2 : {0.2, 0.5}) {
    const auto f = [&](const DiagonalState &s) {
      return reduced_coherent_info_objective(p2, s);
    };
    const double opt = maximize_simplex(f, 1e-10, SimplexFamily::Reduced8).value;
    double best_grid = -1e300;
    const int n = 200;
    for (int i = 0; i <= n; ++i) {
      for (int k = 0; k + i <= n; ++k) {
        DiagonalState s;
        s.alpha = i / static_cast<double>(n);
        s.gamma = 0.0;
        s.delta = k / static_cast<double>(n);
        s.beta = (1.0 - s.alpha - s.delta) / 6.0;
        best_grid = std::max(best_grid, f(s));
      }
    }
    if (opt < best_grid - 1e-4) {
      pass = false;
      detail = "reduced edge map p2 = " + num(p2) + ": optimizer " + num(opt) +
               " vs grid " + num(best_grid);
    }
  }

  report(11, pass, "simplex optimizer dominates a 0.005 reference grid",
         detail);
}

} // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  criterion11();
  if (failures == 0) {
    std::printf("acceptance: all 11 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) failed\n", failures);
  return 1;
}
