#include "madcap/cli.hpp"

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <locale>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "madcap/capacity.hpp"
#include "madcap/degradability.hpp"
#include "madcap/lindblad.hpp"
#include "madcap/madfamily.hpp"

namespace madcap {

std::string format_number(double v) {
  if (v == 0.0) {
    v = 0.0; // never print a negative zero
  }
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(9) << v;
  return os.str();
}

namespace {

//============================================================================
// Shared plumbing
//============================================================================

enum class Quantity {
  Quantum,
  ClassicalUpper,
  EaQuantum,
  EaClassical,
  CoherentInfo,
};

Quantity quantity_from_name(const std::string &name) {
  if (name == "quantum") return Quantity::Quantum;
  if (name == "classical-upper") return Quantity::ClassicalUpper;
  if (name == "ea-quantum") return Quantity::EaQuantum;
  if (name == "ea-classical") return Quantity::EaClassical;
  if (name == "coherent-info") return Quantity::CoherentInfo;
  throw UnsupportedFamily("unknown quantity '" + name +
                          "' (expected quantum, classical-upper, ea-quantum, "
                          "ea-classical, or coherent-info)");
}

/// The classical relaxation has closed forms only on the p3 = 0 faces;
/// reject other combinations before touching any numeric parameter.
void require_quantity_supported(FamilyTag tag, Quantity q) {
  if (q != Quantity::ClassicalUpper) {
    return;
  }
  switch (tag) {
  case FamilyTag::SingleDecay1:
  case FamilyTag::SingleDecay2:
  case FamilyTag::SingleDecay3:
  case FamilyTag::VType:
    return;
  default:
    throw UnsupportedFamily("quantity classical-upper is only available for "
                            "the single-decay and V-type families");
  }
}

CapacityResult evaluate_quantity(FamilyTag tag, Quantity q, double p1,
                                 double p2, double p3) {
  switch (q) {
  case Quantity::Quantum: return quantum_capacity(tag, p1, p2, p3);
  case Quantity::ClassicalUpper: return holevo_upper_bound(tag, p1, p2, p3);
  case Quantity::EaQuantum: return ea_quantum_capacity(tag, p1, p2, p3);
  case Quantity::EaClassical: return ea_classical_capacity(tag, p1, p2, p3);
  case Quantity::CoherentInfo:
    return max_coherent_information(tag, p1, p2, p3);
  }
  throw UnsupportedFamily("unknown quantity");
}

int thread_count() {
  if (const char *env = std::getenv("MADCAP_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) {
      return n;
    }
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

/// Write to a file (binary mode: exact '\n' endings) or standard output.
void write_text(const std::string &path, const std::string &content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw IoError("cannot open output file: " + path);
  }
  f << content;
  if (!f) {
    throw IoError("failed writing output file: " + path);
  }
}

/// 0, step, 2·step, …, 1 (last point clamped to exactly 1).
std::vector<double> grid_axis(double step) {
  if (!(step > 0.0) || step > 0.25) {
    throw OutOfRange("grid step must lie in (0, 0.25]");
  }
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

int family_free_params(FamilyTag tag) {
  switch (tag) {
  case FamilyTag::SingleDecay1:
  case FamilyTag::SingleDecay2:
  case FamilyTag::SingleDecay3:
  case FamilyTag::FullDamp1:
  case FamilyTag::EqualRates:
    return 1;
  case FamilyTag::VType:
  case FamilyTag::LambdaType:
  case FamilyTag::ThreeDecay:
    return 2;
  case FamilyTag::Full:
    return 3;
  }
  throw UnsupportedFamily("unknown family tag");
}

/// Route free grid coordinates into the argument slots the family reads.
std::array<double, 3> family_slots(FamilyTag tag, double a, double b,
                                   double c) {
  switch (tag) {
  case FamilyTag::SingleDecay1:
  case FamilyTag::SingleDecay2:
  case FamilyTag::SingleDecay3:
  case FamilyTag::EqualRates:
    return {a, 0.0, 0.0};
  case FamilyTag::FullDamp1:
    return {0.0, a, 0.0};
  case FamilyTag::VType:
    return {a, b, 0.0};
  case FamilyTag::LambdaType:
  case FamilyTag::ThreeDecay:
    return {0.0, a, b};
  case FamilyTag::Full:
    return {a, b, c};
  }
  throw UnsupportedFamily("unknown family tag");
}

/// All grid points of a family in lexicographic order over its free
/// coordinates, already routed into argument slots.
std::vector<std::array<double, 3>> family_grid(FamilyTag tag, double step) {
  const std::vector<double> axis = grid_axis(step);
  const int free_params = family_free_params(tag);
  std::vector<std::array<double, 3>> points;
  for (double a : axis) {
    if (free_params == 1) {
      points.push_back(family_slots(tag, a, 0.0, 0.0));
      continue;
    }
    for (double b : axis) {
      if (free_params == 2) {
        points.push_back(family_slots(tag, a, b, 0.0));
        continue;
      }
      for (double c : axis) {
        points.push_back(family_slots(tag, a, b, c));
      }
    }
  }
  return points;
}

//============================================================================
// capacity command
//============================================================================

int cmd_capacity(const std::string &family, const std::string &quantity,
                 double p1, double p2, double p3) {
  const FamilyTag tag = family_tag_from_name(family);
  const Quantity q = quantity_from_name(quantity);
  require_quantity_supported(tag, q);

  const CapacityResult res = evaluate_quantity(tag, q, p1, p2, p3);
  std::ostringstream os;
  os << "value " << format_number(res.value) << '\n'
     << "status " << status_name(res.status) << '\n'
     << "region " << region_name(res.region) << '\n'
     << "argmax alpha=" << format_number(res.argmax.alpha)
     << " beta=" << format_number(res.argmax.beta)
     << " gamma=" << format_number(res.argmax.gamma)
     << " delta=" << format_number(res.argmax.delta) << '\n';
  for (const std::string &note : res.notes) {
    os << "note " << note << '\n';
  }
  std::cout << os.str();
  return exit_code::ok;
}

//============================================================================
// sweep command
//============================================================================

int cmd_sweep(const std::string &family, const std::string &quantity,
              double step, const std::string &out) {
  const FamilyTag tag = family_tag_from_name(family);
  const Quantity q = quantity_from_name(quantity);
  require_quantity_supported(tag, q);

  const std::vector<std::array<double, 3>> points = family_grid(tag, step);
  std::vector<std::string> rows(points.size());

  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  std::exception_ptr failure;
  const auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= points.size()) {
        return;
      }
      {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (failure) {
          return;
        }
      }
      const auto [a, b, c] = points[i];
      try {
        const DecayParams prm = family_channel(tag, a, b, c).second;
        const CapacityResult res = evaluate_quantity(tag, q, a, b, c);
        std::ostringstream row;
        row << family_name(tag) << ',' << format_number(prm.p1) << ','
            << format_number(prm.p2) << ',' << format_number(prm.p3) << ','
            << quantity << ',' << format_number(res.value) << ','
            << status_name(res.status) << ','
            << format_number(res.argmax.alpha) << ','
            << format_number(res.argmax.beta) << ','
            << format_number(res.argmax.gamma) << ','
            << format_number(res.argmax.delta) << '\n';
        rows[i] = row.str();
      } catch (const CptpViolation &) {
        // Grid point outside the physical domain: no row.
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) {
          failure = std::current_exception();
        }
        return;
      }
    }
  };

  const int workers =
      std::min<int>(thread_count(), static_cast<int>(points.size()));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(std::max(workers - 1, 0)));
  for (int w = 1; w < workers; ++w) {
    pool.emplace_back(worker);
  }
  worker();
  for (std::thread &t : pool) {
    t.join();
  }
  if (failure) {
    std::rethrow_exception(failure);
  }

  std::string csv = "family,p1,p2,p3,quantity,value,status,alpha,beta,gamma,"
                    "delta\n";
  for (const std::string &row : rows) {
    csv += row;
  }
  write_text(out, csv);
  return exit_code::ok;
}

//============================================================================
// degradability command
//============================================================================

int cmd_degradability(const std::string &family, double step, double tol,
                      const std::string &out) {
  const FamilyTag tag = family_tag_from_name(family);
  const std::vector<RegionRow> rows = region_map(tag, step, tol);
  std::string csv = "p1,p2,p3,degradable,antidegradable,min_choi_eig_deg,"
                    "min_choi_eig_anti\n";
  for (const RegionRow &row : rows) {
    csv += format_number(row.p1) + ',' + format_number(row.p2) + ',' +
           format_number(row.p3) + ',' + verdict_name(row.report.degradable) +
           ',' + verdict_name(row.report.antidegradable) + ',' +
           format_number(row.report.min_choi_eig_deg) + ',' +
           format_number(row.report.min_choi_eig_anti) + '\n';
  }
  write_text(out, csv);
  return exit_code::ok;
}

//============================================================================
// lindblad-check command
//============================================================================

int cmd_lindblad_check(unsigned long long seed, double tol) {
  const double g1s[] = {0.2, 0.7, 1.3};
  const double g2s[] = {0.3, 0.9};
  const double g3s[] = {0.4, 1.1};
  const double ts[] = {0.15, 0.6, 1.8};

  std::ostringstream os;
  double worst = 0.0;
  int samples = 0;
  for (double g1 : g1s) {
    for (double g2 : g2s) {
      for (double g3 : g3s) {
        if (g2 + g3 <= g1) {
          continue;
        }
        for (double t : ts) {
          RateParams g;
          g.gamma1 = g1;
          g.gamma2 = g2;
          g.gamma3 = g3;
          g.t = t;
          const double r = kraus_consistency(g, 20, seed);
          worst = std::max(worst, r);
          ++samples;
          os << "gamma1=" << format_number(g1)
             << " gamma2=" << format_number(g2)
             << " gamma3=" << format_number(g3) << " t=" << format_number(t)
             << " residual=" << format_number(r) << '\n';
        }
      }
    }
  }
  os << "samples " << samples << '\n'
     << "worst residual " << format_number(worst) << '\n'
     << "result " << (worst <= tol ? "PASS" : "FAIL") << '\n';
  std::cout << os.str();
  return worst <= tol ? exit_code::ok : exit_code::verify_failure;
}

//============================================================================
// verify command
//============================================================================

struct CheckResult {
  std::string name;
  bool pass = false;
  double worst = 0.0;
  std::string detail;
};

CheckResult check_covariance(std::mt19937_64 &rng) {
  CheckResult res;
  res.name = "covariance";
  const std::vector<CMatrix> signs = sign_unitaries();
  const std::vector<CMatrix> swaps = swap_unitaries();
  std::vector<CMatrix> unitaries = signs;
  unitaries.insert(unitaries.end(), swaps.begin(), swaps.end());

  const std::vector<std::pair<FamilyTag, std::array<double, 3>>> members = {
      {FamilyTag::SingleDecay1, {0.2, 0.0, 0.0}},
      {FamilyTag::SingleDecay1, {0.5, 0.0, 0.0}},
      {FamilyTag::SingleDecay1, {0.85, 0.0, 0.0}},
      {FamilyTag::VType, {0.3, 0.2, 0.0}},
      {FamilyTag::VType, {0.5, 0.5, 0.0}},
      {FamilyTag::VType, {0.8, 0.6, 0.0}},
      {FamilyTag::LambdaType, {0.0, 0.3, 0.2}},
      {FamilyTag::LambdaType, {0.0, 0.5, 0.5}},
      {FamilyTag::LambdaType, {0.0, 0.7, 0.8}},
      {FamilyTag::ThreeDecay, {0.0, 0.25, 0.3}},
      {FamilyTag::ThreeDecay, {0.0, 0.5, 0.4}},
      {FamilyTag::ThreeDecay, {0.0, 0.75, 0.7}},
  };

  double worst = 0.0;
  for (const auto &[tag, p] : members) {
    const KrausChannel ch = family_channel(tag, p[0], p[1], p[2]).first;
    for (int n = 0; n < 50; ++n) {
      const CMatrix rho = random_density_matrix(9, rng);
      for (const CMatrix &u : unitaries) {
        const CMatrix lhs = madcap::apply(ch, u * rho * u.adjoint());
        const CMatrix rhs = u * madcap::apply(ch, rho) * u.adjoint();
        worst = std::max(worst, max_abs(lhs - rhs));
      }
    }
  }
  res.worst = worst;
  res.pass = worst <= 1e-12;
  return res;
}

CheckResult check_kraus_vs_lindblad(unsigned long long seed) {
  CheckResult res;
  res.name = "kraus-vs-lindblad";
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.1, 1.4);
  double worst = 0.0;
  for (int n = 0; n < 5; ++n) {
    RateParams g;
    g.gamma1 = unit(rng);
    g.gamma2 = unit(rng);
    g.gamma3 = unit(rng);
    if (g.gamma2 + g.gamma3 <= g.gamma1) {
      g.gamma2 += g.gamma1; // keep the spectrum clusters separated
    }
    g.t = 0.2 + 0.5 * n;
    worst = std::max(worst, kraus_consistency(g, 10, seed + 17 * n));
  }
  res.worst = worst;
  res.pass = worst <= 1e-9;
  return res;
}

CheckResult check_spectrum() {
  CheckResult res;
  res.name = "spectrum-multiplicities";
  RateParams g;
  g.gamma1 = 0.37;
  g.gamma2 = 0.61;
  g.gamma3 = 0.89;
  const auto clusters = spectral_multiset(dissipator_correlated(g));
  std::vector<int> counts;
  counts.reserve(clusters.size());
  for (const auto &[lam, mult] : clusters) {
    counts.push_back(mult);
  }
  const std::vector<int> expected = {49, 14, 14, 2, 1, 1};
  std::vector<int> sorted = counts;
  std::sort(sorted.begin(), sorted.end(), std::greater<int>());
  res.pass = sorted == expected;
  res.worst = res.pass ? 0.0 : 1.0;
  std::ostringstream os;
  os << "clusters";
  for (int c : counts) {
    os << ' ' << c;
  }
  res.detail = os.str();
  return res;
}

CheckResult check_composition(std::mt19937_64 &rng) {
  CheckResult res;
  res.name = "composition-rule";
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int n = 0; n < 10; ++n) {
    const double a = unit(rng);
    const double b = unit(rng);
    const KrausChannel first = mad_channel(b, 0.0, 0.0);
    const KrausChannel second = mad_channel(a, 0.0, 0.0);
    const KrausChannel merged = mad_channel(a + b - a * b, 0.0, 0.0);
    const CMatrix lhs = superoperator(compose(second, first)).mat;
    const CMatrix rhs = superoperator(merged).mat;
    worst = std::max(worst, max_abs(lhs - rhs));
  }
  res.pass = worst <= 1e-12;

  // Semigroup property of the generator flow.
  RateParams g;
  g.gamma1 = 0.3;
  g.gamma2 = 0.5;
  g.gamma3 = 0.8;
  double sg_worst = 0.0;
  for (int n = 0; n < 5; ++n) {
    const CMatrix rho = random_density_matrix(9, rng);
    RateParams ga = g;
    ga.t = 0.4;
    RateParams gb = g;
    gb.t = 0.9;
    RateParams gc = g;
    gc.t = 1.3;
    sg_worst =
        std::max(sg_worst, max_abs(evolve(evolve(rho, ga), gb) -
                                   evolve(rho, gc)));
  }
  res.pass = res.pass && sg_worst <= 1e-9;
  res.worst = std::max(worst, sg_worst);
  return res;
}

CheckResult check_closed_forms(std::mt19937_64 &rng) {
  CheckResult res;
  res.name = "closed-form-pipeline";
  const std::vector<std::pair<FamilyTag, std::array<double, 3>>> members = {
      {FamilyTag::SingleDecay1, {0.15, 0.0, 0.0}},
      {FamilyTag::SingleDecay1, {0.45, 0.0, 0.0}},
      {FamilyTag::SingleDecay1, {0.8, 0.0, 0.0}},
      {FamilyTag::SingleDecay2, {0.35, 0.0, 0.0}},
      {FamilyTag::SingleDecay3, {0.6, 0.0, 0.0}},
      {FamilyTag::VType, {0.2, 0.35, 0.0}},
      {FamilyTag::VType, {0.45, 0.45, 0.0}},
      {FamilyTag::VType, {0.7, 0.3, 0.0}},
      {FamilyTag::LambdaType, {0.0, 0.25, 0.3}},
      {FamilyTag::LambdaType, {0.0, 0.5, 0.2}},
      {FamilyTag::LambdaType, {0.0, 0.65, 0.6}},
      {FamilyTag::ThreeDecay, {0.0, 0.3, 0.25}},
      {FamilyTag::ThreeDecay, {0.0, 0.6, 0.4}},
      {FamilyTag::FullDamp1, {0.0, 0.3, 0.0}},
      {FamilyTag::FullDamp1, {0.0, 0.7, 0.0}},
      {FamilyTag::EqualRates, {0.2, 0.0, 0.0}},
      {FamilyTag::EqualRates, {0.55, 0.0, 0.0}},
      {FamilyTag::Full, {0.2, 0.3, 0.25}},
      {FamilyTag::Full, {0.5, 0.6, 0.4}},
      {FamilyTag::Full, {0.35, 0.8, 0.3}},
  };

  std::exponential_distribution<double> expo(1.0);
  double worst = 0.0;
  for (const auto &[tag, p] : members) {
    const auto [ch, prm] = family_channel(tag, p[0], p[1], p[2]);
    for (int n = 0; n < 20; ++n) {
      double w0 = expo(rng);
      double w1 = expo(rng);
      double w2 = expo(rng);
      double w3 = expo(rng);
      const double total = w0 + w1 + w2 + w3;
      DiagonalState s;
      s.alpha = w0 / total;
      s.beta = w1 / total / 6.0;
      s.gamma = w2 / total;
      s.delta = w3 / total;
      const CMatrix rho = s.to_density();
      worst = std::max(worst,
                       std::abs(coherent_info_objective(tag, prm, s) -
                                coherent_information(ch, rho)));
      worst = std::max(worst, std::abs(mutual_info_objective(tag, prm, s) -
                                       mutual_information(ch, rho)));
    }
  }
  res.worst = worst;
  res.pass = worst <= 1e-9;
  return res;
}

CheckResult check_holevo_dominance(std::mt19937_64 &rng) {
  CheckResult res;
  res.name = "holevo-dominance";
  const std::vector<std::pair<FamilyTag, std::array<double, 3>>> members = {
      {FamilyTag::SingleDecay1, {0.3, 0.0, 0.0}},
      {FamilyTag::SingleDecay1, {0.7, 0.0, 0.0}},
      {FamilyTag::VType, {0.3, 0.4, 0.0}},
      {FamilyTag::VType, {0.8, 0.2, 0.0}},
  };
  double worst_excess = 0.0; // χ − bound, should stay ≤ 0
  for (const auto &[tag, p] : members) {
    const KrausChannel ch = family_channel(tag, p[0], p[1], p[2]).first;
    const double bound = holevo_upper_bound(tag, p[0], p[1], p[2]).value;
    for (int n = 0; n < 20; ++n) {
      const auto ensemble = random_ensemble(9, 12, rng);
      worst_excess =
          std::max(worst_excess, brute_force_holevo(ch, ensemble) - bound);
    }
  }
  res.worst = worst_excess;
  res.pass = worst_excess <= 1e-9;
  return res;
}

CheckResult check_diagonal_dominance(unsigned long long seed) {
  CheckResult res;
  res.name = "diagonal-dominance";
  const KrausChannel single = mad_channel(0.3, 0.0, 0.0);
  const KrausChannel lambda = mad_channel(0.0, 0.3, 0.2);
  double worst = 0.0;
  for (const KrausChannel *ch : {&single, &lambda}) {
    const DominanceReport rep = diagonal_dominance_check(*ch, 20, seed);
    worst = std::max(worst, -std::min(rep.worst_margin, 0.0));
  }
  res.worst = worst;
  res.pass = worst <= 1e-9;
  return res;
}

CheckResult check_negative_control() {
  CheckResult res;
  res.name = "corrupted-kraus";
  KrausChannel ch = mad_channel(0.3, 0.0, 0.0);
  ch.kraus[0] *= 1.01; // break completeness on purpose
  try {
    ch.validate();
    res.pass = false;
    res.detail = "corrupted operators were not rejected";
  } catch (const CptpViolation &) {
    res.pass = true;
    res.detail = "completeness violation detected";
  }
  res.worst = res.pass ? 0.0 : 1.0;
  return res;
}

int cmd_verify(unsigned long long seed) {
  std::ostringstream os;
  os << "verification suite (seed " << seed << ")\n";

  std::mt19937_64 rng(seed);
  std::vector<CheckResult> checks;
  const auto guarded = [&checks](const std::string &name, auto &&fn) {
    try {
      checks.push_back(fn());
    } catch (const std::exception &e) {
      CheckResult failed;
      failed.name = name;
      failed.pass = false;
      failed.worst = 1.0;
      failed.detail = e.what();
      checks.push_back(std::move(failed));
    }
  };
  guarded("covariance", [&] { return check_covariance(rng); });
  guarded("kraus-vs-lindblad", [&] { return check_kraus_vs_lindblad(seed); });
  guarded("spectrum-multiplicities", [] { return check_spectrum(); });
  guarded("composition-rule", [&] { return check_composition(rng); });
  guarded("closed-form-pipeline", [&] { return check_closed_forms(rng); });
  guarded("holevo-dominance", [&] { return check_holevo_dominance(rng); });
  guarded("diagonal-dominance", [&] { return check_diagonal_dominance(seed); });
  guarded("corrupted-kraus", [] { return check_negative_control(); });

  int passed = 0;
  for (const CheckResult &c : checks) {
    os << "check " << c.name << ": " << (c.pass ? "PASS" : "FAIL")
       << " worst residual " << format_number(c.worst);
    if (!c.detail.empty()) {
      os << " (" << c.detail << ")";
    }
    os << '\n';
    passed += c.pass ? 1 : 0;
  }
  os << "verify: " << passed << "/" << checks.size() << " checks passed\n";
  std::cout << os.str();
  return passed == static_cast<int>(checks.size()) ? exit_code::ok
                                                   : exit_code::verify_failure;
}

} // namespace

//============================================================================
// Entry points
//============================================================================

int run_cli(int argc, const char *const *argv) {
  CLI::App app{"fully correlated two-qutrit amplitude-damping channels: "
               "construction, certification, and capacity bounds"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "read options from an INI-style config file (flags win)");

  std::string family;
  std::string quantity = "quantum";
  double p1 = 0.0;
  double p2 = 0.0;
  double p3 = 0.0;
  double grid = 0.05;
  double tol = -1.0; // sentinel: per-command default
  std::string out;
  unsigned long long seed = 0;
  bool seed_given = false;

  CLI::App *cap = app.add_subcommand(
      "capacity", "evaluate one capacity quantity at one parameter point");
  cap->fallthrough();
  cap->add_option("--family", family, "channel family name")->required();
  cap->add_option("--p1", p1, "first decay probability");
  cap->add_option("--p2", p2, "second decay probability");
  cap->add_option("--p3", p3, "third decay probability");
  cap->add_option("--quantity", quantity,
                  "quantum | classical-upper | ea-quantum | ea-classical | "
                  "coherent-info");

  CLI::App *sweep = app.add_subcommand(
      "sweep", "evaluate a quantity over the family's parameter grid (CSV)");
  sweep->fallthrough();
  sweep->add_option("--family", family, "channel family name")->required();
  sweep->add_option("--quantity", quantity, "quantity to sweep");
  sweep->add_option("--grid", grid, "grid step in (0, 0.25]");
  sweep->add_option("--out", out, "output CSV path (default: stdout)");

  CLI::App *deg = app.add_subcommand(
      "degradability", "classify the family over its parameter grid (CSV)");
  deg->fallthrough();
  deg->add_option("--family", family, "channel family name")->required();
  deg->add_option("--grid", grid, "grid step in (0, 0.25]");
  deg->add_option("--tol", tol, "Choi positivity tolerance (default 1e-8)");
  deg->add_option("--out", out, "output CSV path (default: stdout)");

  CLI::App *lind = app.add_subcommand(
      "lindblad-check",
      "compare generator evolution against the closed-form operators over a "
      "rate grid");
  lind->fallthrough();
  lind->add_option("--seed", seed, "random seed (default 20250822)")
      ->each([&](const std::string &) { seed_given = true; });
  lind->add_option("--tol", tol, "pass threshold (default 1e-9)");

  CLI::App *verify = app.add_subcommand(
      "verify", "run the deterministic invariant suite");
  verify->fallthrough();
  verify->add_option("--seed", seed, "random seed (default 7)")
      ->each([&](const std::string &) { seed_given = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return exit_code::unsupported;
  }

  try {
    if (cap->parsed()) {
      return cmd_capacity(family, quantity, p1, p2, p3);
    }
    if (sweep->parsed()) {
      return cmd_sweep(family, quantity, grid, out);
    }
    if (deg->parsed()) {
      return cmd_degradability(family, grid, tol > 0.0 ? tol : 1e-8, out);
    }
    if (lind->parsed()) {
      return cmd_lindblad_check(seed_given ? seed : 20250822ULL,
                                tol > 0.0 ? tol : 1e-9);
    }
    if (verify->parsed()) {
      return cmd_verify(seed_given ? seed : 7ULL);
    }
    std::cerr << "error: no command given\n";
    return exit_code::unsupported;
  } catch (const UnsupportedFamily &e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code::unsupported;
  } catch (const IoError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code::io_failure;
  } catch (const MadcapError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code::cptp_violation;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code::cptp_violation;
  }
}

CliResult run_cli_capture(const std::vector<std::string> &args) {
  std::vector<const char *> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("madcap");
  for (const std::string &a : args) {
    argv.push_back(a.c_str());
  }

  std::ostringstream out;
  std::ostringstream err;
  std::streambuf *old_out = std::cout.rdbuf(out.rdbuf());
  std::streambuf *old_err = std::cerr.rdbuf(err.rdbuf());
  CliResult res;
  try {
    res.exit_code = run_cli(static_cast<int>(argv.size()), argv.data());
  } catch (...) {
    std::cout.rdbuf(old_out);
    std::cerr.rdbuf(old_err);
    throw;
  }
  std::cout.rdbuf(old_out);
  std::cerr.rdbuf(old_err);
  res.out = out.str();
  res.err = err.str();
  return res;
}

} // namespace madcap
