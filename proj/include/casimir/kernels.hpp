#pragma once

// Batched integrand kernels for the imaginary-frequency pressure integrals.
//
// Each kernel evaluates one row of a double integral: the outer coordinate is
// fixed and the inner coordinate varies across the batch. Every kernel has a
// scalar reference implementation and, on x86-64, an AVX2/FMA variant; the
// dispatching entry points pick one at run time. The variants round
// differently (vector exp, FMA contraction); where the cavity terms nearly
// cancel this grows to ~1e-12 relative. They are equivalence-tested at 1e-11.

#include <span>
#include <string_view>

namespace casimir::kernels {

/// Parameters of the slab pressure integrand at imaginary frequency.
/// Reflection amplitudes are indexed [p, s]. An absent mirror has R = 0 and
/// its gap is ignored.
struct SlabRow {
  double ds = 1.0;
  double reflect_left[2] = {0.0, 0.0};
  double reflect_right[2] = {0.0, 0.0};
  double gap_left = 0.0;
  double gap_right = 0.0;
  /// false: u kappa_s sum_q a_1 a_2 E / D~  (pressure on the slab)
  /// true:  u kappa   sum_q rho (1-E)(R_2 e_2 - R_1 e_1) / D~  (slab-mirror force)
  bool interaction = false;
};

enum class Backend { scalar, avx2 };

std::string_view backend_name(Backend b);

/// True when the variant was compiled in and the CPU supports it.
bool backend_available(Backend b);

/// Backend used by the dispatching entry points. Chosen once: the best
/// available variant, unless CASIMIR_KERNELS=scalar|avx2 overrides it.
Backend active_backend();

/// f(x, u_i) for the slab integrand (without the -1/(2 pi^2) prefactor).
void slab_integrand(const SlabRow& row, double x, std::span<const double> u, std::span<double> out);
void slab_integrand(Backend backend, const SlabRow& row, double x, std::span<const double> u,
                    std::span<double> out);

/// t^2 e^{-t} / ((2x^2+1)^2 - e^{-t}), the quasistatic-limit integrand.
void nonretarded_integrand(double x, std::span<const double> t, std::span<double> out);
void nonretarded_integrand(Backend backend, double x, std::span<const double> t, std::span<double> out);

namespace scalar {
void slab_integrand(const SlabRow& row, double x, std::span<const double> u, std::span<double> out);
void nonretarded_integrand(double x, std::span<const double> t, std::span<double> out);
}  // namespace scalar

#if defined(CASIMIR_HAVE_AVX2)
namespace avx2 {
void slab_integrand(const SlabRow& row, double x, std::span<const double> u, std::span<double> out);
void nonretarded_integrand(double x, std::span<const double> t, std::span<double> out);
/// Vector exp/expm1, exposed for the equivalence tests.
void exp_expm1(std::span<const double> z, std::span<double> exp_out, std::span<double> expm1_out);
}  // namespace avx2
#endif

}  // namespace casimir::kernels
