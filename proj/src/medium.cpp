#include "casimir/medium.hpp"

#include <cmath>
#include <string>

#include "casimir/errors.hpp"

namespace casimir::medium {

namespace {

void check_point(double x, double u) {
  if (!(x >= 0.0) || !(u >= 0.0) || !std::isfinite(x) || !std::isfinite(u))
    throw DomainError("reduced frequency and wavevector must be finite and non-negative");
  if (x == 0.0 && u == 0.0) throw DomainError("degenerate point x = u = 0");
}

}  // namespace

double epsilon_imag(double x) {
  if (!std::isfinite(x) || x < 0.0) throw DomainError("epsilon_imag: x must be finite and >= 0");
  if (x == 0.0) throw DomainError("epsilon_imag: static pole at x = 0");
  return 1.0 + 1.0 / (x * x);
}

PerpWavevectors perp_wavevectors(double x, double u) {
  check_point(x, u);
  const double k2 = x * x + u * u;
  return {std::sqrt(k2), std::sqrt(k2 + 1.0)};
}

double rho(Polarization q, double x, double u) {
  const auto [kappa, kappa_s] = perp_wavevectors(x, u);
  const double sum = kappa + kappa_s;
  if (q == Polarization::s) return -1.0 / (sum * sum);
  // ((1+x^2) kappa - x^2 kappa_s) / ((1+x^2) kappa + x^2 kappa_s)
  const double x2 = x * x;
  return (kappa - x2 / sum) / ((x2 + 1.0) * kappa + x2 * kappa_s);
}

double one_minus_rho(Polarization q, double x, double u) {
  const auto [kappa, kappa_s] = perp_wavevectors(x, u);
  if (q == Polarization::s) return 2.0 * kappa_s / (kappa + kappa_s);
  const double x2 = x * x;
  return 2.0 * x2 * kappa_s / ((x2 + 1.0) * kappa + x2 * kappa_s);
}

double rho_pform(Polarization q, double x, double p) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("rho_pform: x must be > 0");
  if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("rho_pform: p must be >= 1");
  const double x2 = x * x;
  const double s = std::sqrt((p - 1.0) * (p + 1.0) + x2 / (1.0 + x2));
  // s^2 - p^2 = -1/(1+x^2)
  const double s_minus_p = -1.0 / ((1.0 + x2) * (s + p));
  if (q == Polarization::s) return s_minus_p / (s + p);
  return (s + x2 * s_minus_p) / ((1.0 + x2) * s + x2 * p);
}

SlabFresnel slab_fresnel(Polarization q, double x, double u, double ds) {
  if (!(ds > 0.0)) throw DomainError("slab_fresnel: ds must be > 0");
  const auto [kappa, kappa_s] = perp_wavevectors(x, u);
  const double r0 = rho(q, x, u);
  const double half = std::exp(-kappa_s * ds);
  const double e2 = half * half;
  const double denom = 1.0 - r0 * r0 * e2;
  return {r0 * -std::expm1(-2.0 * kappa_s * ds) / denom, (1.0 - r0 * r0) * half / denom};
}

double mirror_reflection(const MirrorModel& m, Polarization q) { return m.reflection(q); }

}  // namespace casimir::medium
