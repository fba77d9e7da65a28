#include "casimir/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <numbers>

#include "casimir/cli.hpp"
#include "casimir/modes.hpp"
#include "casimir/pressure.hpp"
#include "internal.hpp"

namespace casimir::acceptance {

namespace {

using cli::format;
using pressure::SlabSystem;
using std::numbers::pi;

struct Outcome {
  bool pass;
  std::string detail;
};

double rel(double a, double b) { return std::abs(a / b - 1.0); }

Outcome nonretarded_constant() {
  const double c = pressure::pressure_nonretarded_coefficient();
  return {std::abs(c - 0.00781) <= 1e-5, format("C = %.10f (target 0.00781 +/- 1e-5)", c)};
}

Outcome plasmon_decomposition() {
  const double ds = 1.0;
  const double fnr = pressure::pressure_nonretarded(ds).value;
  const modes::ModeSumPressure sp = modes::sp_pressure_nonretarded(ds);
  const double minus = sp.contribution(medium::Symmetry::minus) / fnr;
  const double plus = sp.contribution(medium::Symmetry::plus) / fnr;
  const double sum = sp.total / fnr;
  const bool pass = std::abs(minus - 7.83) <= 0.01 && std::abs(plus + 6.83) <= 0.01 && std::abs(sum - 1.0) <= 1e-6;
  return {pass, format("F-/Fnr = %.6f, F+/Fnr = %.6f, sum = %.9f", minus, plus, sum)};
}

Outcome casimir_limit() {
  const double thin = pressure::pressure_mirrors_bessel(1e-3).value / pressure::casimir_ideal(1e-3);
  // Least-squares line through (ds^2, F/F_C - 1).
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double grid[] = {0.02, 0.05, 0.1};
  for (double ds : grid) {
    const double x = ds * ds;
    const double y = pressure::pressure_mirrors_bessel(ds).value / pressure::casimir_ideal(ds) - 1.0;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = std::size(grid);
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double target = -5.0 / (pi * pi);
  const bool pass = std::abs(thin - 1.0) < 1e-5 && rel(slope, target) <= 0.03;
  return {pass, format("F/F_C(ds=1e-3) = %.9f, slope = %.6f vs %.6f (%.2f%%)", thin, slope, target,
                       100.0 * rel(slope, target))};
}

Outcome dual_formulations() {
  double worst_mirrors = 0.0, worst_free = 0.0;
  for (double ds : {0.1, 1.0, 5.0})
    worst_mirrors = std::max(worst_mirrors, rel(pressure::pressure_mirrors_integral(ds).value,
                                                pressure::pressure_mirrors_bessel(ds).value));
  for (double ds : {0.5, 1.0, 5.0})
    worst_free =
        std::max(worst_free, rel(pressure::pressure_free(ds).value, pressure::pressure_free_pform(ds).value));
  return {worst_mirrors <= 1e-8 && worst_free <= 1e-6,
          format("mirrors integral/series max rel %.2e (<= 1e-8), free k/p forms max rel %.2e (<= 1e-6)",
                 worst_mirrors, worst_free)};
}

Outcome ratio_chain() {
  const double c = pressure::pressure_nonretarded_coefficient();
  // F_nr / F_C = (240 C / pi^2) k_P d_s = 2 pi (240 C / pi^2) d_s / lambda_P.
  const double per_kpds = 240.0 * c / (pi * pi);
  const double per_lambda = 2.0 * pi * per_kpds;
  const double ds = 0.3;
  const double direct = pressure::pressure_nonretarded(ds).value / pressure::casimir_ideal(ds) / ds;
  const bool pass = rel(per_kpds, 0.19) <= 0.01 && rel(per_lambda, 1.19) <= 0.01 && rel(direct, per_kpds) <= 1e-12;
  return {pass, format("F_nr/F_C = %.6f k_P d_s (0.19 +/- 1%%) = %.6f d_s/lambda_P (1.19 +/- 1%%)", per_kpds,
                       per_lambda)};
}

Outcome cavity_limits() {
  const double ds = 0.0628;
  const double touching = pressure::pressure_cavity(SlabSystem::ideal_cavity(ds, 1e-4)).value;
  const double mirrors = pressure::pressure_mirrors_bessel(ds).value;
  const double distant = pressure::pressure_cavity(SlabSystem::ideal_cavity(ds, 10.0)).value;
  const double free = pressure::pressure_free(ds).value;
  const double r1 = rel(touching, mirrors), r2 = rel(distant, free);
  return {r1 <= 1e-3 && r2 <= 1e-3,
          format("ds = %g: gap 1e-4 vs mirrors rel %.3e (<= 1e-3), gap 10 vs free rel %.3e (<= 1e-3)", ds, r1, r2)};
}

Outcome symmetric_interaction() {
  double worst = 0.0;
  for (auto [ds, gap] : {std::pair{0.1, 0.1}, {1.0, 0.5}, {0.5, 2.0}})
    worst = std::max(worst, std::abs(pressure::interaction_force(SlabSystem::ideal_cavity(ds, gap)).value));
  return {worst <= 1e-10, format("max |F'| = %.3e over 3 symmetric cavities (<= 1e-10)", worst)};
}

Outcome thick_decay() {
  double dev[3];
  const double grid[] = {5.0, 8.0, 12.0};
  for (int i = 0; i < 3; ++i) {
    const double ds = grid[i];
    dev[i] = std::abs(pressure::pressure_free(ds).value / pressure::pressure_thick_asymptotic(ds).value - 1.0);
  }
  const bool monotone = dev[0] > dev[1] && dev[1] > dev[2];
  return {monotone && dev[2] < 0.10,
          format("|F/F_asym - 1| = %.4f, %.4f, %.4f at ds = 5, 8, 12 (monotone %s; needs last < 0.10)", dev[0], dev[1],
                 dev[2], monotone ? "yes" : "no")};
}

Outcome mode_consistency() {
  bool pass = true;
  std::string detail;
  for (double lam : {0.02, 0.1, 0.3, 1.0}) {
    const double ds = 2.0 * pi * lam;
    const double ratio = modes::sp_pressure_retarded(ds).total / pressure::pressure_free(ds).value;
    const bool ok = lam < 1.0 ? ratio > 0.9 : ratio < 0.2;
    pass = pass && ok;
    if (!detail.empty()) detail += ", ";
    detail += format("F_S/F(%g) = %.4f %s", lam, ratio, lam < 1.0 ? "(> 0.9)" : "(< 0.2)");
  }
  return {pass, detail};
}

Outcome determinism() {
  const std::string a = cli::to_csv(cli::fig_dataset(cli::FigureId::fig4));
  const std::string b = cli::to_csv(cli::fig_dataset(cli::FigureId::fig4));
  return {a == b && !a.empty(), format("fig4 CSV %zu bytes, %s", a.size(), a == b ? "identical" : "differs")};
}

struct Criterion {
  const char* name;
  double budget;
  Outcome (*run)();
};

const Criterion kTable[kCriteria] = {
    {"nonretarded coefficient", 5.0, nonretarded_constant},
    {"plasmon decomposition", 5.0, plasmon_decomposition},
    {"Casimir limit and correction", 10.0, casimir_limit},
    {"dual-formulation oracles", 60.0, dual_formulations},
    {"nonretarded/Casimir ratio chain", 1.0, ratio_chain},
    {"cavity limits", 60.0, cavity_limits},
    {"symmetric interaction force", 30.0, symmetric_interaction},
    {"thick-slab decay", 60.0, thick_decay},
    {"mode/Lifshitz consistency", 120.0, mode_consistency},
    {"figure determinism", 120.0, determinism},
};

}  // namespace

CriterionResult run_criterion(int id) {
  if (id < 1 || id > kCriteria) throw std::out_of_range("no acceptance criterion " + std::to_string(id));
  const Criterion& c = kTable[id - 1];
  CriterionResult r{id, c.name, false, "", 0.0, c.budget};
  const auto start = std::chrono::steady_clock::now();
  try {
    const Outcome o = c.run();
    r.pass = o.pass;
    r.detail = o.detail;
  } catch (const std::exception& e) {
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (r.seconds > r.budget) {
    r.pass = false;
    r.detail += format(" [over time budget %.0f s]", r.budget);
  }
  return r;
}

std::vector<CriterionResult> run_all() {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriteria; ++id) out.push_back(run_criterion(id));
  return out;
}

std::string format(const CriterionResult& r) {
  return cli::format("%s %2d  %-32s %7.2f s / %3.0f s  %s", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                     r.seconds, r.budget, r.detail.c_str());
}

}  // namespace casimir::acceptance
