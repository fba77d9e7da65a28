#pragma once

// Vacuum-field pressure on the surfaces of a plasma-model metal slab, in
// reduced units F^ = F / (hbar c k_P^4). Negative values press the slab
// surfaces inward.

#include <string_view>

#include "casimir/medium.hpp"
#include "casimir/quadrature.hpp"

namespace casimir::pressure {

enum class Formula {
  lifshitz_free,
  lifshitz_cavity,
  mirrors_integral,
  mirrors_bessel,
  nonretarded,
  thick_asymptotic,
  thin_expansion,
  mode_sum,
};

std::string_view formula_name(Formula f);

struct PressureValue {
  double value = 0.0;
  double error_estimate = 0.0;
  Formula formula = Formula::lifshitz_free;
  /// false when an asymptotic formula was evaluated outside its regime.
  bool in_range = true;
};

/// One side of the slab: a mirror model and the vacuum gap separating it from
/// the slab. An infinitely distant mirror is expressed as MirrorModel::none().
struct MirrorSide {
  medium::MirrorModel mirror = medium::MirrorModel::none();
  double gap = 0.0;

  friend bool operator==(const MirrorSide&, const MirrorSide&) = default;
};

struct SlabSystem {
  double ds = 1.0;
  MirrorSide left;
  MirrorSide right;

  static SlabSystem free_standing(double ds) { return {ds, {}, {}}; }
  static SlabSystem ideal_cavity(double ds, double gap) {
    return {ds, {medium::MirrorModel::perfect(), gap}, {medium::MirrorModel::perfect(), gap}};
  }
  static SlabSystem ideal_cavity(double ds, double gap_left, double gap_right) {
    return {ds, {medium::MirrorModel::perfect(), gap_left}, {medium::MirrorModel::perfect(), gap_right}};
  }

  bool symmetric() const;
  SlabSystem mirrored() const { return {ds, right, left}; }
  /// Throws DomainError unless ds > 0 and every present mirror has a finite gap >= 0.
  void validate() const;
};

/// Free-standing slab. Below ds = 1e-3 the quasistatic value is returned with
/// an O(ds) relative error bound attached.
PressureValue pressure_free(double ds, const quadrature::QuadratureSpec& spec = {});

/// The same quantity integrated in the slope variable p = kappa_s / sqrt(1+x^2).
PressureValue pressure_free_pform(double ds, const quadrature::QuadratureSpec& spec = {});

/// Quasistatic coefficient C with F^_nr(ds) = -C / ds^3 (hbar omega_P / d^3 in SI).
double pressure_nonretarded_coefficient();
PressureValue pressure_nonretarded(double ds);

/// Ideal-conductor Casimir pressure F^_C = -pi^2 / (240 ds^4).
double casimir_ideal(double ds);

/// -(1/4) e^{-2 ds} / sqrt((pi ds)^3); flagged out of range for ds <= 1.
PressureValue pressure_thick_asymptotic(double ds);

/// F_C (1 - 5 ds^2 / pi^2), the thin-layer expansion between perfect mirrors.
PressureValue pressure_mirrors_thin_expansion(double ds);

/// Slab sandwiched between perfect mirrors (zero gaps), single integral form.
PressureValue pressure_mirrors_integral(double ds, const quadrature::QuadratureSpec& spec = {});

/// The same, as -(1/pi^2) sum_n d^2/da^2 [K_1(a)/a] at a_n = 2 n ds.
PressureValue pressure_mirrors_bessel(double ds, double series_rel_tol = 1e-12);

/// Pressure on the slab surfaces for arbitrary (perfect or absent) mirrors.
PressureValue pressure_cavity(const SlabSystem& sys, const quadrature::QuadratureSpec& spec = {});

/// Slab-mirror force F' = f_2 - f_1. Requires both mirrors present; a single
/// touching mirror (one zero gap) makes it diverge and raises DomainError.
PressureValue interaction_force(const SlabSystem& sys, const quadrature::QuadratureSpec& spec = {});

namespace detail {
/// Integration settings used for the 2D slab integrals at thickness ds.
void slab_specs(double ds, const quadrature::QuadratureSpec& base, quadrature::QuadratureSpec& outer,
                quadrature::QuadratureSpec& inner);
/// Inner (u) substitution scale for the row at outer abscissa x.
double slab_inner_scale(double ds, double x);
}  // namespace detail

}  // namespace casimir::pressure
