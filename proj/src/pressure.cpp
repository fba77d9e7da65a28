#include "casimir/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "casimir/errors.hpp"
#include "casimir/kernels.hpp"

namespace casimir::pressure {

using quadrature::IntegralResult;
using quadrature::QuadratureSpec;
using quadrature::Substitution;
using std::numbers::pi;

namespace {

// Below this thickness the quasistatic value replaces the double integral.
constexpr double kThinSlabCutoff = 1e-3;

bool present(const MirrorSide& side) { return side.mirror.kind != medium::MirrorKind::none; }

kernels::SlabRow make_row(const SlabSystem& sys, bool interaction) {
  kernels::SlabRow row;
  row.ds = sys.ds;
  for (medium::Polarization q : medium::kPolarizations) {
    const int i = q == medium::Polarization::p ? 0 : 1;
    row.reflect_left[i] = sys.left.mirror.reflection(q);
    row.reflect_right[i] = sys.right.mirror.reflection(q);
  }
  row.gap_left = present(sys.left) ? sys.left.gap : 0.0;
  row.gap_right = present(sys.right) ? sys.right.gap : 0.0;
  row.interaction = interaction;
  return row;
}

IntegralResult integrate_row(const kernels::SlabRow& row, const QuadratureSpec& base) {
  QuadratureSpec outer, inner;
  detail::slab_specs(row.ds, base, outer, inner);
  // The slab-mirror force carries no e^{-2 kappa_s ds}; it decays with the
  // nearer gap instead.
  const double nearer = std::min(row.gap_left, row.gap_right);
  const double gap_scale = row.interaction && nearer > 0.0 ? 0.5 / nearer : 0.0;
  outer.scale = std::max(outer.scale, gap_scale);
  return quadrature::integrate_2d_semi_infinite(
      [&row](double x, std::span<const double> u, std::span<double> out) {
        kernels::slab_integrand(row, x, u, out);
      },
      outer, inner,
      [&row, gap_scale](double x) { return std::max(detail::slab_inner_scale(row.ds, x), gap_scale); });
}

PressureValue from_lifshitz(const IntegralResult& r, Formula formula) {
  const double norm = 1.0 / (2.0 * pi * pi);
  return {-norm * r.value, norm * r.error_estimate, formula, true};
}

void check_thickness(double ds) {
  if (!(ds > 0.0) || !std::isfinite(ds)) throw DomainError("slab thickness ds must be positive and finite");
}

}  // namespace

std::string_view formula_name(Formula f) {
  switch (f) {
    case Formula::lifshitz_free: return "lifshitz_free";
    case Formula::lifshitz_cavity: return "lifshitz_cavity";
    case Formula::mirrors_integral: return "mirrors_integral";
    case Formula::mirrors_bessel: return "mirrors_bessel";
    case Formula::nonretarded: return "nonretarded";
    case Formula::thick_asymptotic: return "thick_asymptotic";
    case Formula::thin_expansion: return "thin_expansion";
    case Formula::mode_sum: return "mode_sum";
  }
  return "unknown";
}

bool SlabSystem::symmetric() const { return left == right; }

void SlabSystem::validate() const {
  check_thickness(ds);
  for (const MirrorSide* side : {&left, &right}) {
    if (!present(*side)) continue;
    if (!(side->gap >= 0.0) || !std::isfinite(side->gap))
      throw DomainError("mirror gap must be finite and >= 0 (use MirrorModel::none for an absent mirror)");
  }
}

void detail::slab_specs(double ds, const QuadratureSpec& base, QuadratureSpec& outer, QuadratureSpec& inner) {
  // Decay length of e^{-2 kappa_s ds}: 1/(2 ds) in the thin regime, the
  // Gaussian width ~ 1/sqrt(ds) around kappa_s = sqrt(1 + x^2) when thick.
  const double scale = 0.5 / std::min(ds, std::sqrt(ds));
  outer = base;
  outer.abs_tol = 0.0;
  outer.substitution = Substitution::rational;
  outer.scale = scale;
  inner = outer;
  inner.substitution = Substitution::exponential;
  inner.rel_tol = 0.1 * base.rel_tol;
}

double detail::slab_inner_scale(double ds, double x) {
  // Width in u over which 2 kappa_s ds grows by one above its u = 0 value.
  const double k0 = std::sqrt(1.0 + x * x);
  const double h = 0.5 / ds;
  return std::sqrt(h * (2.0 * k0 + h));
}

PressureValue pressure_free(double ds, const QuadratureSpec& spec) {
  check_thickness(ds);
  if (ds < kThinSlabCutoff) {
    PressureValue nr = pressure_nonretarded(ds);
    nr.error_estimate = std::abs(nr.value) * ds;
    return nr;
  }
  return from_lifshitz(integrate_row(make_row(SlabSystem::free_standing(ds), false), spec),
                       Formula::lifshitz_free);
}

PressureValue pressure_free_pform(double ds, const QuadratureSpec& spec) {
  check_thickness(ds);
  QuadratureSpec outer, inner;
  detail::slab_specs(ds, spec, outer, inner);
  const auto row = [ds](double x, std::span<const double> t, std::span<double> out) {
    const double root = std::sqrt(1.0 + x * x);
    const double weight = root * root * root;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double p = 1.0 + t[i];
      const double e = std::exp(-2.0 * p * root * ds);
      double sum = 0.0;
      for (medium::Polarization q : medium::kPolarizations) {
        const double r = medium::rho_pform(q, x, p);
        sum += r * r * e / (1.0 - r * r * e);
      }
      out[i] = weight * p * p * sum;
    }
  };
  const auto scale = [ds](double x) { return 0.5 / (std::sqrt(1.0 + x * x) * ds); };
  return from_lifshitz(quadrature::integrate_2d_semi_infinite(row, outer, inner, scale), Formula::lifshitz_free);
}

double pressure_nonretarded_coefficient() {
  static const double coefficient = [] {
    QuadratureSpec spec;
    spec.rel_tol = 1e-11;
    spec.abs_tol = 0.0;
    QuadratureSpec inner = spec;
    inner.substitution = Substitution::exponential;
    inner.rel_tol = 0.1 * spec.rel_tol;
    const IntegralResult r = quadrature::integrate_2d_semi_infinite(
        [](double x, std::span<const double> t, std::span<double> out) {
          kernels::nonretarded_integrand(x, t, out);
        },
        spec, inner);
    return r.value / (16.0 * pi * pi);
  }();
  return coefficient;
}

PressureValue pressure_nonretarded(double ds) {
  check_thickness(ds);
  const double c = pressure_nonretarded_coefficient();
  const double value = -c / (ds * ds * ds);
  return {value, std::abs(value) * 1e-10, Formula::nonretarded, true};
}

double casimir_ideal(double ds) {
  check_thickness(ds);
  const double d2 = ds * ds;
  return -pi * pi / (240.0 * d2 * d2);
}

PressureValue pressure_thick_asymptotic(double ds) {
  check_thickness(ds);
  const double value = -0.25 * std::exp(-2.0 * ds) / std::pow(pi * ds, 1.5);
  return {value, 0.0, Formula::thick_asymptotic, ds > 1.0};
}

PressureValue pressure_mirrors_thin_expansion(double ds) {
  const double fc = casimir_ideal(ds);
  return {fc * (1.0 - 5.0 * ds * ds / (pi * pi)), 0.0, Formula::thin_expansion, ds < 1.0};
}

PressureValue pressure_mirrors_integral(double ds, const QuadratureSpec& spec) {
  check_thickness(ds);
  // y = sqrt(eps_s) x = 1 + s^2 removes the sqrt(y^2 - 1) endpoint behaviour.
  QuadratureSpec s = spec;
  s.abs_tol = 0.0;
  s.substitution = Substitution::rational;
  s.scale = 1.0 / std::sqrt(ds);
  const IntegralResult r = quadrature::integrate_semi_infinite(
      [ds](double t) {
        const double t2 = t * t;
        const double y = 1.0 + t2;
        return 2.0 * t2 * y * y * std::sqrt(2.0 + t2) / std::expm1(2.0 * y * ds);
      },
      s);
  const double norm = 1.0 / (pi * pi);
  return {-norm * r.value, norm * r.error_estimate, Formula::mirrors_integral, true};
}

PressureValue pressure_mirrors_bessel(double ds, double series_rel_tol) {
  check_thickness(ds);
  const quadrature::SeriesResult s = quadrature::sum_series(
      [ds](std::size_t n) { return quadrature::bessel_k1_over_a_second_derivative(2.0 * double(n) * ds); },
      series_rel_tol);
  const double norm = 1.0 / (pi * pi);
  // Each K evaluation carries ~1e-15 relative error on top of the tail bound.
  const double err = norm * (s.error_estimate + 1e-14 * std::abs(s.value));
  return {-norm * s.value, err, Formula::mirrors_bessel, true};
}

PressureValue pressure_cavity(const SlabSystem& sys, const QuadratureSpec& spec) {
  sys.validate();
  if (!present(sys.left) && !present(sys.right)) return pressure_free(sys.ds, spec);
  if (sys.symmetric() && sys.left.mirror.kind == medium::MirrorKind::perfect && sys.left.gap == 0.0)
    return pressure_mirrors_bessel(sys.ds);
  return from_lifshitz(integrate_row(make_row(sys, false), spec), Formula::lifshitz_cavity);
}

PressureValue interaction_force(const SlabSystem& sys, const QuadratureSpec& spec) {
  sys.validate();
  if (!present(sys.left) || !present(sys.right))
    throw DomainError("interaction_force: both mirrors must be present");
  if ((sys.left.gap == 0.0) != (sys.right.gap == 0.0))
    throw DomainError("interaction_force: diverges when a mirror touches the slab");
  return from_lifshitz(integrate_row(make_row(sys, true), spec), Formula::lifshitz_cavity);
}

}  // namespace casimir::pressure
