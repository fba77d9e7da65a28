#include "casimir/modes.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "casimir/errors.hpp"

namespace casimir::modes {

using std::numbers::pi;

namespace {

constexpr int kScanPanels = 200;
constexpr double kLightConeMargin = 1e-9;
constexpr double kResidualTolerance = 1e-10;
constexpr double kJumpTolerance = 0.1;
constexpr double kComplexStep = 1e-30;

double mirror_amplitude(Polarization q, const Gap& gap) {
  if (!gap) return 0.0;
  return q == Polarization::p ? 1.0 : -1.0;
}

// Dispersion function with every denominator cleared, so it has no poles in
// (0, u):  (-N + R e D) E_s - nu (D - N R e),  rho = N / D.
// Templated so the same expression serves complex-step differentiation.
// `scale` receives the sum of the term magnitudes, the natural size of
// rounding in the result.
template <class T>
T cleared_dispersion(Polarization q, double nu, T w, double u, T ds, const Gap& gap, double* scale = nullptr) {
  const T alpha2 = (u - w) * (u + w);
  const T alpha = std::sqrt(alpha2);
  const T alpha_s = std::sqrt(alpha2 + 1.0);
  T numer, denom;
  double size = 0.0;  // common magnitude of the terms forming N and D
  if (q == Polarization::p) {
    const T w2 = w * w;
    numer = (w2 - 1.0) * alpha - w2 * alpha_s;
    denom = (w2 - 1.0) * alpha + w2 * alpha_s;
    size = std::abs((w2 - 1.0) * alpha) + std::abs(w2 * alpha_s);
  } else {
    numer = alpha - alpha_s;
    denom = alpha + alpha_s;
    size = std::abs(alpha) + std::abs(alpha_s);
  }
  const double R = mirror_amplitude(q, gap);
  const T e = gap ? T(std::exp(-2.0 * alpha * *gap)) : T(0.0);
  const T slab = std::exp(-alpha_s * ds);
  if (scale) *scale = size * (std::abs(slab) + 1.0) * (1.0 + std::abs(R * e));
  return (-numer + R * e * denom) * slab - nu * (denom - numer * R * e);
}

void check_inputs(double u, double ds, const Gap& gap) {
  if (!(u > 0.0) || !std::isfinite(u)) throw DomainError("modes: u must be positive and finite");
  if (!(ds > 0.0) || !std::isfinite(ds)) throw DomainError("modes: ds must be positive and finite");
  if (gap && (!(*gap >= 0.0) || !std::isfinite(*gap)))
    throw DomainError("modes: cavity gap must be finite and >= 0");
}

double bisect(Polarization q, double nu, double u, double ds, const Gap& gap, double lo, double hi,
              double f_lo) {
  for (;;) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = cleared_dispersion<double>(q, nu, mid, u, ds, gap);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

struct RootScan {
  std::vector<double> roots;
  std::size_t sign_changes = 0;
};

RootScan scan_roots(Polarization q, Symmetry nu, double u, double ds, const Gap& gap) {
  check_inputs(u, ds, gap);
  const double s = medium::sign_of(nu);
  const double top = u * (1.0 - kLightConeMargin);
  RootScan scan;
  double w_prev = 0.0;
  double f_prev = cleared_dispersion<double>(q, s, w_prev, u, ds, gap);
  for (int k = 1; k <= kScanPanels; ++k) {
    const double w = top * double(k) / kScanPanels;
    const double f = cleared_dispersion<double>(q, s, w, u, ds, gap);
    if ((f_prev < 0.0) != (f < 0.0) && f_prev != 0.0) {
      ++scan.sign_changes;
      const double root = bisect(q, s, u, ds, gap, w_prev, w, f_prev);
      // Judged on the pole-free form: near the decoupled-surface limit the
      // bare residual is dominated by rounding amplified by e^{u ds}.
      double scale = 0.0;
      const double g = cleared_dispersion<double>(q, s, root, u, ds, gap, &scale);
      if (root > 0.0 && root < u && std::abs(g) <= kResidualTolerance * scale) scan.roots.push_back(root);
    }
    w_prev = w;
    f_prev = f;
  }
  return scan;
}

}  // namespace

double sp_freq_nonretarded(double u, double ds, Symmetry nu) {
  if (!(u >= 0.0) || !(ds > 0.0)) throw DomainError("sp_freq_nonretarded: need u >= 0, ds > 0");
  return std::sqrt(0.5 * (1.0 + medium::sign_of(nu) * std::exp(-u * ds)));
}

double photonic_mode_freq(int n, double u, double ds) {
  if (n < 1) throw DomainError("photonic_mode_freq: n must be >= 1");
  if (!(ds > 0.0)) throw DomainError("photonic_mode_freq: ds must be > 0");
  const double kn = n * pi / ds;
  return std::sqrt(1.0 + u * u + kn * kn);
}

double dispersion_residual(Polarization q, Symmetry nu, double w, double u, double ds, Gap gap) {
  check_inputs(u, ds, gap);
  if (!(w > 0.0) || !(w < u)) throw DomainError("dispersion_residual: need 0 < w < u (evanescent region)");
  const double alpha2 = (u - w) * (u + w);
  const double alpha = std::sqrt(alpha2);
  const double alpha_s = std::sqrt(alpha2 + 1.0);
  double rho;
  if (q == Polarization::p) {
    const double eps = 1.0 - 1.0 / (w * w);
    rho = (eps * alpha - alpha_s) / (eps * alpha + alpha_s);
  } else {
    rho = (alpha - alpha_s) / (alpha + alpha_s);
  }
  const double Re = gap ? mirror_amplitude(q, gap) * std::exp(-2.0 * alpha * *gap) : 0.0;
  const double r_s = (-rho + Re) / (1.0 - rho * Re);
  return r_s * std::exp(-alpha_s * ds) - medium::sign_of(nu);
}

std::vector<double> dispersion_roots(Polarization q, Symmetry nu, double u, double ds, Gap gap) {
  return scan_roots(q, nu, u, ds, gap).roots;
}

double frequency_thickness_derivative(Polarization q, Symmetry nu, double w, double u, double ds, Gap gap) {
  check_inputs(u, ds, gap);
  using C = std::complex<double>;
  const double s = medium::sign_of(nu);
  const double dw = cleared_dispersion<C>(q, s, C(w, kComplexStep), u, C(ds), gap).imag() / kComplexStep;
  const double dd = cleared_dispersion<C>(q, s, C(w), u, C(ds, kComplexStep), gap).imag() / kComplexStep;
  if (dw == 0.0) throw DomainError("frequency_thickness_derivative: degenerate root");
  return -dd / dw;
}

ModeBranch solve_sp_branch(Polarization q, Symmetry nu, std::span<const double> u_grid, double ds, Gap gap) {
  ModeBranch branch;
  branch.q = q;
  branch.nu = nu;
  branch.ds = ds;
  branch.gap = gap;
  for (std::size_t i = 0; i < u_grid.size(); ++i) {
    if (!(u_grid[i] > 0.0)) throw DomainError("solve_sp_branch: grid values must be > 0");
    if (i > 0 && !(u_grid[i] > u_grid[i - 1]))
      throw DomainError("solve_sp_branch: grid must be strictly ascending");
  }

  for (double u : u_grid) {
    RootScan scan = scan_roots(q, nu, u, ds, gap);
    if (scan.sign_changes > 1) branch.extra_roots += scan.sign_changes - 1;
    if (scan.roots.empty()) {
      branch.absent.push_back(u);
      continue;
    }
    double w = scan.roots.front();
    if (!branch.samples.empty()) {
      const ModeSample prev = branch.samples.back();
      w = *std::min_element(scan.roots.begin(), scan.roots.end(), [&](double a, double b) {
        return std::abs(a - prev.w) < std::abs(b - prev.w);
      });
      // A bound mode's group velocity stays below the light-cone slope of 1.
      if (std::abs(w - prev.w) > kJumpTolerance * prev.w + (u - prev.u))
        throw BranchTrackingError("solve_sp_branch: discontinuous jump between consecutive samples");
    }
    branch.samples.push_back({u, w});
  }
  return branch;
}

double ModeSumPressure::contribution(Symmetry nu) const {
  double sum = 0.0;
  for (const BranchContribution& b : branches)
    if (b.nu == nu) sum += b.value;
  return sum;
}

ModeSumPressure sp_pressure_nonretarded(double ds) {
  if (!(ds > 0.0)) throw DomainError("sp_pressure_nonretarded: ds must be > 0");
  quadrature::QuadratureSpec spec;
  spec.rel_tol = 1e-12;
  spec.abs_tol = 0.0;
  spec.substitution = quadrature::Substitution::exponential;
  const double norm = 1.0 / (8.0 * std::numbers::sqrt2 * pi * ds * ds * ds);

  ModeSumPressure result;
  for (Symmetry nu : {Symmetry::minus, Symmetry::plus}) {
    const double s = medium::sign_of(nu);
    // t^2 e^{-t} / sqrt(1 +/- e^{-t}); the minus form via expm1 near t = 0.
    const quadrature::IntegralResult r = quadrature::integrate_semi_infinite(
        [s](double t) {
          const double root = s > 0.0 ? std::sqrt(1.0 + std::exp(-t)) : std::sqrt(-std::expm1(-t));
          return t * t * std::exp(-t) / root;
        },
        spec);
    result.branches.push_back({Polarization::p, nu, s * norm * r.value, norm * r.error_estimate});
  }
  for (const BranchContribution& b : result.branches) result.total += b.value;
  return result;
}

ModeSumPressure sp_pressure_retarded(double ds, Gap gap, const quadrature::QuadratureSpec& spec) {
  check_inputs(1.0, ds, gap);
  constexpr int kMaxPanels = 100000;
  constexpr double kTruncation = 1e-10;
  const double width = ds < 1.0 ? 1.0 / ds : 1.0;

  ModeSumPressure result;
  for (Symmetry nu : {Symmetry::minus, Symmetry::plus}) {
    const auto integrand = [&](double u) {
      if (u <= 0.0) return 0.0;
      const std::vector<double> roots = dispersion_roots(Polarization::p, nu, u, ds, gap);
      if (roots.empty()) return 0.0;
      return u * frequency_thickness_derivative(Polarization::p, nu, roots.front(), u, ds, gap);
    };

    double total = 0.0;
    double error = 0.0;
    double last = 0.0;
    int quiet = 0;
    for (int k = 0; k < kMaxPanels; ++k) {
      quadrature::QuadratureSpec panel = spec;
      panel.abs_tol = 0.1 * spec.rel_tol * std::abs(total);
      const quadrature::IntegralResult r = quadrature::integrate(integrand, k * width, (k + 1) * width, panel);
      total += r.value;
      error += r.error_estimate;
      last = std::abs(r.value);
      quiet = (total != 0.0 && last < kTruncation * std::abs(total)) ? quiet + 1 : 0;
      if (quiet >= 2) break;
      if (total == 0.0 && k >= 50) break;
      if (k + 1 == kMaxPanels) throw ConvergenceError("sp_pressure_retarded: u integral did not truncate", total, error);
    }
    const double norm = -1.0 / (4.0 * pi);
    result.branches.push_back({Polarization::p, nu, norm * total, std::abs(norm) * error});
    result.truncation_error += std::abs(norm) * last;
  }
  for (const BranchContribution& b : result.branches) result.total += b.value;
  return result;
}

}  // namespace casimir::modes
