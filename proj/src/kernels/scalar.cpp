#include <cmath>
#include <cstddef>

#include "casimir/kernels.hpp"

namespace casimir::kernels::scalar {

namespace {

// One polarization's contribution. omr = 1 - rho, e_i = e^{-2 kappa d_i} and
// ome_i = 1 - e_i, both computed directly.
// b_i = 1 - rho R_i e_i is regrouped so that it does not cancel when rho -> 1
// and e_i -> 1 (perfect mirror touching the slab). a_i = rho - R_i e_i uses the
// complements only when both terms are large; for small rho they would cancel.
inline double difference(double rho, double omr, double Re, double omRe) {
  return std::abs(rho) > 0.5 && std::abs(Re) > 0.5 ? omRe - omr : rho - Re;
}

inline double polarization_term(const SlabRow& row, int q, double rho, double omr, double E,
                                double omE, double e1, double ome1, double e2, double ome2) {
  const double R1 = row.reflect_left[q];
  const double R2 = row.reflect_right[q];
  const double omRe1 = (1.0 - R1) + R1 * ome1;  // 1 - R1 e1
  const double omRe2 = (1.0 - R2) + R2 * ome2;
  const double opRe1 = (1.0 + R1) - R1 * ome1;  // 1 + R1 e1
  const double opRe2 = (1.0 + R2) - R2 * ome2;
  const double a1 = difference(rho, omr, R1 * e1, omRe1);
  const double a2 = difference(rho, omr, R2 * e2, omRe2);
  const double b1 = omr + rho * omRe1;
  const double b2 = omr + rho * omRe2;
  // D~ = b1 b2 - a1 a2 E, with b1 b2 - a1 a2 = omr ((1 + R1 e1) b2 + (1 + R2 e2) a1)
  const double denom = b1 * b2 * omE + omr * (opRe1 * b2 + opRe2 * a1) * E;
  if (row.interaction) {
    const double numer = rho * omE * (R2 * e2 - R1 * e1);
    return numer / denom;
  }
  return a1 * a2 * E / denom;
}

}  // namespace

void slab_integrand(const SlabRow& row, double x, std::span<const double> u, std::span<double> out) {
  const double x2 = x * x;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double k2 = x2 + u[i] * u[i];
    const double kappa = std::sqrt(k2);
    const double kappa_s = std::sqrt(k2 + 1.0);
    const double sum = kappa + kappa_s;

    const double arg = -2.0 * kappa_s * row.ds;
    const double E = std::exp(arg);
    const double omE = -std::expm1(arg);
    const double e1 = std::exp(-2.0 * kappa * row.gap_left);
    const double e2 = std::exp(-2.0 * kappa * row.gap_right);
    const double ome1 = -std::expm1(-2.0 * kappa * row.gap_left);
    const double ome2 = -std::expm1(-2.0 * kappa * row.gap_right);

    const double dp = (x2 + 1.0) * kappa + x2 * kappa_s;
    const double rho_p = (kappa - x2 / sum) / dp;
    const double omr_p = 2.0 * x2 * kappa_s / dp;
    const double rho_s = -1.0 / (sum * sum);
    const double omr_s = 2.0 * kappa_s / sum;

    const double terms = polarization_term(row, 0, rho_p, omr_p, E, omE, e1, ome1, e2, ome2) +
                         polarization_term(row, 1, rho_s, omr_s, E, omE, e1, ome1, e2, ome2);
    out[i] = u[i] * (row.interaction ? kappa : kappa_s) * terms;
  }
}

void nonretarded_integrand(double x, std::span<const double> t, std::span<double> out) {
  const double x2 = x * x;
  const double gap = 4.0 * x2 * (x2 + 1.0);  // (2x^2+1)^2 - 1
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double e = std::exp(-t[i]);
    out[i] = t[i] * t[i] * e / (gap - std::expm1(-t[i]));
  }
}

}  // namespace casimir::kernels::scalar
