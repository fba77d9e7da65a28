#pragma once

// Plasma-model slab response at imaginary frequency.
//
// Reduced units throughout: hbar = c = 1, lengths in 1/k_P, frequencies in
// omega_P. x = xi/omega_P is the imaginary frequency, u = k/k_P the transverse
// wavevector.

namespace casimir::medium {

enum class Polarization { p, s };

/// Mode parity with respect to the slab's central plane.
enum class Symmetry { plus, minus };

inline constexpr Polarization kPolarizations[] = {Polarization::p, Polarization::s};

inline double sign_of(Symmetry nu) { return nu == Symmetry::plus ? 1.0 : -1.0; }

struct PerpWavevectors {
  double kappa;    // vacuum
  double kappa_s;  // inside the slab
};

enum class MirrorKind { none, perfect };

struct MirrorModel {
  MirrorKind kind = MirrorKind::none;

  static constexpr MirrorModel none() { return {MirrorKind::none}; }
  static constexpr MirrorModel perfect() { return {MirrorKind::perfect}; }

  /// R^p = +1, R^s = -1 for a perfect conductor; 0 without a mirror.
  double reflection(Polarization q) const {
    if (kind == MirrorKind::none) return 0.0;
    return q == Polarization::p ? 1.0 : -1.0;
  }

  friend bool operator==(MirrorModel, MirrorModel) = default;
};

/// eps_s(i x) = 1 + 1/x^2. Throws DomainError at the static pole x = 0.
double epsilon_imag(double x);

/// kappa = sqrt(x^2 + u^2), kappa_s = sqrt(x^2 + u^2 + 1).
PerpWavevectors perp_wavevectors(double x, double u);

/// Vacuum-slab reflection amplitude rho^q(ix, u). Evaluated in a form that is
/// regular at x = 0 (rho^p -> 1) and free of the kappa_s - kappa cancellation.
double rho(Polarization q, double x, double u);

/// 1 - rho^q, without cancellation as rho^p -> 1.
double one_minus_rho(Polarization q, double x, double u);

/// rho^q in the slope variable p >= 1, kappa_s = sqrt(1 + x^2) p.
double rho_pform(Polarization q, double x, double p);

struct SlabFresnel {
  double r;
  double t;
};

/// Reflection and transmission amplitudes of the whole slab (thickness ds)
/// seen from vacuum. The interior interface amplitude is -rho^q.
SlabFresnel slab_fresnel(Polarization q, double x, double u, double ds);

double mirror_reflection(const MirrorModel& m, Polarization q);

}  // namespace casimir::medium
