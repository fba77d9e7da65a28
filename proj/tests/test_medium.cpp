#include <doctest.h>

#include <array>
#include <cfloat>
#include <cmath>

#include "casimir/errors.hpp"
#include "casimir/medium.hpp"

using namespace casimir;
using namespace casimir::medium;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Textbook forms straight from the permittivity, used as the oracle for the
// cancellation-free production forms.
double rho_textbook(Polarization q, double x, double u) {
  const double eps = 1.0 + 1.0 / (x * x);
  const double kappa = std::sqrt(x * x + u * u);
  const double kappa_s = std::sqrt(eps * x * x + u * u);
  if (q == Polarization::p) return (eps * kappa - kappa_s) / (eps * kappa + kappa_s);
  return (kappa - kappa_s) / (kappa + kappa_s);
}

std::array<double, 20> grid(double lo, double hi) {
  std::array<double, 20> g{};
  for (int i = 0; i < 20; ++i) g[i] = lo * std::pow(hi / lo, i / 19.0);
  return g;
}

}  // namespace

TEST_CASE("epsilon_imag") {
  CHECK(epsilon_imag(1.0) == 2.0);
  CHECK(epsilon_imag(0.5) == 5.0);
  CHECK(epsilon_imag(1e8) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(epsilon_imag(0.0), DomainError);
  CHECK_THROWS_AS(epsilon_imag(-1.0), DomainError);

  double prev = epsilon_imag(1e-3);
  for (double x : grid(2e-3, 1e3)) {
    const double e = epsilon_imag(x);
    CHECK(e < prev);
    CHECK(e > 1.0);
    // Exact up to the rounding of the two products of size x^2.
    CHECK(std::abs(e * x * x - x * x - 1.0) <= 4.0 * DBL_EPSILON * std::max(1.0, x * x));
    prev = e;
  }
}

TEST_CASE("perp_wavevectors") {
  auto k = perp_wavevectors(0.0, 1.0);
  CHECK(k.kappa == 1.0);
  CHECK(k.kappa_s == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  k = perp_wavevectors(1.0, 0.0);
  CHECK(k.kappa == 1.0);
  CHECK(k.kappa_s == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  k = perp_wavevectors(3.0, 4.0);
  CHECK(k.kappa == 5.0);
  CHECK(k.kappa_s == doctest::Approx(std::sqrt(26.0)).epsilon(1e-15));
  CHECK_THROWS_AS(perp_wavevectors(0.0, 0.0), DomainError);

  for (double x = 0.0; x <= 2.0; x += 0.125)
    for (double u = 0.0625; u <= 2.0; u += 0.125) {
      const auto w = perp_wavevectors(x, u);
      CHECK(std::abs(w.kappa_s * w.kappa_s - w.kappa * w.kappa - 1.0) < 1e-14);
      CHECK(w.kappa_s >= w.kappa);
    }
}

TEST_CASE("rho examples") {
  const double r2 = std::sqrt(2.0);
  CHECK(rho(Polarization::s, 0.0, 1.0) == doctest::Approx((1.0 - r2) / (1.0 + r2)).epsilon(1e-14));
  // Large u at x = 1: the quasistatic (eps - 1)/(eps + 1) with eps = 2.
  CHECK(rho(Polarization::p, 1.0, 1e7) == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
  // x -> 0 is regular: rho^p -> 1.
  CHECK(rho(Polarization::p, 1e-9, 1.0) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("rho matches the textbook form and stays bounded") {
  for (double x : grid(0.01, 10.0))
    for (double u : grid(0.01, 10.0)) {
      for (Polarization q : kPolarizations) {
        const double r = rho(q, x, u);
        CHECK(rel(r, rho_textbook(q, x, u)) < 1e-11);
        CHECK(std::abs(r) < 1.0);
        // 1 - r itself carries an absolute rounding error of one ulp of 1.
        CHECK(std::abs(one_minus_rho(q, x, u) - (1.0 - r)) <= 1e-12 * (1.0 - r) + DBL_EPSILON);
      }
      CHECK(rho(Polarization::s, x, u) <= 0.0);
    }
}

TEST_CASE("rho_pform agrees with rho under the slope variable") {
  // kappa_s = sqrt(1+x^2) p  <=>  u^2 = (1+x^2)(p^2-1)
  for (double x : grid(0.01, 10.0))
    for (double p : grid(1.0, 10.0)) {
      const double u = std::sqrt((1.0 + x * x) * (p - 1.0) * (p + 1.0));
      if (u == 0.0 && x == 0.0) continue;
      for (Polarization q : kPolarizations) CHECK(rel(rho_pform(q, x, p), rho(q, x, u)) < 1e-12);
    }
  // p = 1: s = x / sqrt(1+x^2)
  const double x = 0.7;
  const double s = x / std::sqrt(1.0 + x * x);
  CHECK(rho_pform(Polarization::s, x, 1.0) == doctest::Approx((s - 1.0) / (s + 1.0)).epsilon(1e-14));
  CHECK(rho_pform(Polarization::s, x, 1.0) < 0.0);
  CHECK(rho_pform(Polarization::p, 1e-8, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(rho_pform(Polarization::p, 1.0, 0.999), DomainError);
}

TEST_CASE("slab_fresnel limits") {
  for (Polarization q : kPolarizations) {
    const auto thin = slab_fresnel(q, 0.4, 0.8, 1e-12);
    CHECK(std::abs(thin.r) < 1e-10);
    CHECK(thin.t == doctest::Approx(1.0).epsilon(1e-10));
    const auto thick = slab_fresnel(q, 0.4, 0.8, 60.0);
    CHECK(thick.r == doctest::Approx(rho(q, 0.4, 0.8)).epsilon(1e-14));
    CHECK(std::abs(thick.t) < 1e-20);
  }
  CHECK_THROWS_AS(slab_fresnel(Polarization::p, 1.0, 1.0, 0.0), DomainError);
}

TEST_CASE("slab_fresnel: r approaches rho monotonically with thickness") {
  for (Polarization q : kPolarizations) {
    const double r0 = rho(q, 0.3, 1.2);
    double gap = std::abs(slab_fresnel(q, 0.3, 1.2, 0.01).r - r0);
    for (double ds = 0.02; ds < 20.0; ds *= 1.5) {
      const double next = std::abs(slab_fresnel(q, 0.3, 1.2, ds).r - r0);
      CHECK((next < gap || next == 0.0));
      gap = next;
    }
  }
}

TEST_CASE("slab_fresnel against a transfer-matrix product") {
  // vacuum | slab | vacuum: M = I(0->s) P(ds) I(s->0), r = M21/M11, t = 1/M11,
  // with interface amplitudes rho (from vacuum) and -rho (from inside) and
  // t_0s t_s0 = 1 - rho^2.
  using Mat = std::array<std::array<double, 2>, 2>;
  const auto mul = [](const Mat& a, const Mat& b) {
    Mat c{};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
    return c;
  };
  for (Polarization q : kPolarizations)
    for (double x : {0.05, 0.5, 3.0})
      for (double u : {0.1, 1.0, 4.0})
        for (double ds : {0.01, 0.3, 2.0}) {
          const double r = rho(q, x, u);
          const double kappa_s = perp_wavevectors(x, u).kappa_s;
          const Mat in{{{1.0, r}, {r, 1.0}}};
          const Mat out{{{1.0, -r}, {-r, 1.0}}};
          const Mat prop{{{std::exp(kappa_s * ds), 0.0}, {0.0, std::exp(-kappa_s * ds)}}};
          const Mat m = mul(mul(in, prop), out);
          const double t_product = 1.0 - r * r;
          const auto f = slab_fresnel(q, x, u, ds);
          CHECK(f.r == doctest::Approx(m[1][0] / m[0][0]).epsilon(1e-12));
          CHECK(f.t == doctest::Approx(t_product / m[0][0]).epsilon(1e-12));
        }
}

TEST_CASE("mirror_reflection") {
  CHECK(mirror_reflection(MirrorModel::perfect(), Polarization::p) == 1.0);
  CHECK(mirror_reflection(MirrorModel::perfect(), Polarization::s) == -1.0);
  CHECK(mirror_reflection(MirrorModel::none(), Polarization::p) == 0.0);
  CHECK(mirror_reflection(MirrorModel::none(), Polarization::s) == 0.0);
}
