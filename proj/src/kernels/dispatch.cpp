#include <cstdlib>
#include <string_view>

#include "casimir/errors.hpp"
#include "casimir/kernels.hpp"

namespace casimir::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(CASIMIR_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend select_backend() {
  const bool avx2 = cpu_has_avx2();
  if (const char* env = std::getenv("CASIMIR_KERNELS")) {
    const std::string_view want(env);
    if (want == "scalar") return Backend::scalar;
    if (want == "avx2" && avx2) return Backend::avx2;
  }
  return avx2 ? Backend::avx2 : Backend::scalar;
}

void require(Backend b) {
  if (!backend_available(b)) throw DomainError("kernel backend not available on this CPU/build");
}

}  // namespace

std::string_view backend_name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

bool backend_available(Backend b) {
  if (b == Backend::scalar) return true;
  static const bool avx2 = cpu_has_avx2();
  return avx2;
}

Backend active_backend() {
  static const Backend chosen = select_backend();
  return chosen;
}

void slab_integrand(Backend backend, const SlabRow& row, double x, std::span<const double> u,
                    std::span<double> out) {
  require(backend);
#if defined(CASIMIR_HAVE_AVX2)
  if (backend == Backend::avx2) return avx2::slab_integrand(row, x, u, out);
#endif
  scalar::slab_integrand(row, x, u, out);
}

void slab_integrand(const SlabRow& row, double x, std::span<const double> u, std::span<double> out) {
  slab_integrand(active_backend(), row, x, u, out);
}

void nonretarded_integrand(Backend backend, double x, std::span<const double> t, std::span<double> out) {
  require(backend);
#if defined(CASIMIR_HAVE_AVX2)
  if (backend == Backend::avx2) return avx2::nonretarded_integrand(x, t, out);
#endif
  scalar::nonretarded_integrand(x, t, out);
}

void nonretarded_integrand(double x, std::span<const double> t, std::span<double> out) {
  nonretarded_integrand(active_backend(), x, t, out);
}

}  // namespace casimir::kernels
