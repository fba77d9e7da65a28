#pragma once

// Real-frequency modal analysis of the slab: surface-plasmon dispersion in
// the evanescent region w < u, branch tracking, and the surface-mode
// contribution to the pressure from d(omega)/d(ds).
//
// Reduced units as in medium.hpp; w = omega/omega_P. A cavity gap is an
// optional: std::nullopt is a free-standing slab, a value d means perfect
// mirrors at distance d on both sides.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "casimir/medium.hpp"
#include "casimir/quadrature.hpp"

namespace casimir::modes {

using medium::Polarization;
using medium::Symmetry;
using Gap = std::optional<double>;

/// (1/sqrt 2) sqrt(1 +/- e^{-u ds}).
double sp_freq_nonretarded(double u, double ds, Symmetry nu);

/// sqrt(1 + u^2 + n^2 pi^2 / ds^2): guided modes between perfect mirrors at
/// zero gap. Independent of polarization.
double photonic_mode_freq(int n, double u, double ds);

/// r_s(w, u) e^{-alpha_s ds} - nu, with r_s the in-slab reflection off one
/// side (the bare interface for a free slab). Throws DomainError unless
/// 0 < w < u.
double dispersion_residual(Polarization q, Symmetry nu, double w, double u, double ds, Gap gap);

/// All roots of the dispersion relation in (0, u (1 - 1e-9)), found by a
/// 200-panel sign scan and bisection to machine precision. A root is kept
/// when the pole-free cleared form of the relation vanishes to 1e-10 of the
/// magnitude of its terms; the bare residual loses digits like e^{u ds} and
/// cannot serve as the test for thick slabs.
std::vector<double> dispersion_roots(Polarization q, Symmetry nu, double u, double ds, Gap gap);

/// Implicit derivative d w / d ds at a root, -(dD/dds)/(dD/dw), with the
/// partial derivatives taken by complex-step differentiation.
double frequency_thickness_derivative(Polarization q, Symmetry nu, double w, double u, double ds, Gap gap);

struct ModeSample {
  double u;
  double w;
};

struct ModeBranch {
  Polarization q = Polarization::p;
  Symmetry nu = Symmetry::plus;
  double ds = 0.0;
  Gap gap;
  std::vector<ModeSample> samples;  // strictly increasing in u
  std::vector<double> absent;       // grid points without a resolved root
  std::size_t extra_roots = 0;      // sign changes beyond the retained root
};

/// Tracks one branch across an ascending grid. The first sample keeps the
/// lowest root, later samples the root closest to the previous one. Throws
/// BranchTrackingError on a jump larger than 10% (beyond the light-cone slope).
ModeBranch solve_sp_branch(Polarization q, Symmetry nu, std::span<const double> u_grid, double ds, Gap gap);

struct BranchContribution {
  Polarization q;
  Symmetry nu;
  double value;
  double error_estimate;
};

struct ModeSumPressure {
  std::vector<BranchContribution> branches;
  double total = 0.0;
  double truncation_error = 0.0;

  double contribution(Symmetry nu) const;
};

/// Quasistatic two-plasmon pressure; total equals -C/ds^3.
ModeSumPressure sp_pressure_nonretarded(double ds);

/// F_S = -(1/4 pi) int du u sum_nu d w_nu / d ds over the p-polarized surface
/// branches. The u integral is marched in panels and truncated once a panel
/// adds less than 1e-10 of the accumulated value.
ModeSumPressure sp_pressure_retarded(double ds, Gap gap = std::nullopt,
                                     const quadrature::QuadratureSpec& spec = {});

}  // namespace casimir::modes
