#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "casimir/errors.hpp"
#include "casimir/quadrature.hpp"

using namespace casimir;
using namespace casimir::quadrature;
using std::numbers::pi;

namespace {

QuadratureSpec with(Substitution s, double rel_tol = 1e-10) {
  QuadratureSpec spec;
  spec.substitution = s;
  spec.rel_tol = rel_tol;
  spec.abs_tol = 0.0;
  return spec;
}

// K_nu(a) = int_0^inf e^{-a cosh t} cosh(nu t) dt by the trapezoid rule,
// which converges geometrically for this entire, rapidly decaying integrand.
double bessel_trapezoid(int nu, double a) {
  const double h = 0.005;
  double sum = 0.5 * std::exp(-a);
  for (int i = 1;; ++i) {
    const double t = i * h;
    const double term = std::exp(-a * std::cosh(t)) * std::cosh(nu * t);
    sum += term;
    if (term < 1e-30 * sum) break;
  }
  return h * sum;
}

struct Case {
  std::string name;
  std::function<double(double)> f;
  double exact;
  // Algebraic tails become an endpoint singularity under the exponential map.
  bool algebraic = false;
};

std::vector<Case> corpus() {
  return {
      {"exp", [](double y) { return std::exp(-y); }, 1.0},
      {"gamma4", [](double y) { return y * y * y * std::exp(-y); }, 6.0},
      {"lorentzian", [](double y) { return 1.0 / (1.0 + y * y); }, pi / 2.0, true},
      {"k1(2)",
       [](double t) {
         // cosh overflows long before the product underflows to zero.
         const double c = std::cosh(t);
         return c > 1e300 ? 0.0 : c * std::exp(-2.0 * c);
       },
       bessel_trapezoid(1, 2.0)},
  };
}

}  // namespace

TEST_CASE("integrate_semi_infinite on closed forms") {
  for (Substitution s : {Substitution::rational, Substitution::exponential}) {
    const auto a = integrate_semi_infinite([](double y) { return std::exp(-y); }, with(s));
    CHECK(a.value == doctest::Approx(1.0).epsilon(1e-12));
    const auto b = integrate_semi_infinite([](double y) { return y * y * y * std::exp(-y); }, with(s));
    CHECK(b.value == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(b.error_estimate >= 0.0);
    CHECK(b.error_estimate <= 1e-10 * 6.0);
    CHECK(b.evaluations > 0);
  }
}

TEST_CASE("integrate_semi_infinite: K1(2) from the integral with the 1/sqrt endpoint") {
  // int_1^inf y e^{-2y} / sqrt(y^2 - 1) dy = K1(2), shifted to (0, inf).
  QuadratureSpec spec = with(Substitution::rational, 1e-11);
  spec.max_subdivisions = 5000;
  const auto r = integrate_semi_infinite(
      [](double s) {
        const double y = 1.0 + s;
        return y * std::exp(-2.0 * y) / std::sqrt(s * (2.0 + s));
      },
      spec);
  CHECK(r.value == doctest::Approx(bessel_k(1, 2.0)).epsilon(1e-9));
  CHECK(r.value == doctest::Approx(bessel_trapezoid(1, 2.0)).epsilon(1e-9));
}

TEST_CASE("integrate on a finite interval") {
  const auto r = integrate([](double y) { return std::sin(y); }, 0.0, pi, with(Substitution::rational, 1e-12));
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("substitution choice changes results by less than the error estimates") {
  for (const Case& c : corpus()) {
    CAPTURE(c.name);
    if (c.algebraic) {
      const auto a = integrate_semi_infinite(c.f, with(Substitution::rational, 1e-8));
      CHECK(std::abs(a.value - c.exact) <= a.error_estimate + 1e-15 * std::abs(c.exact));
      continue;
    }
    const auto a = integrate_semi_infinite(c.f, with(Substitution::rational, 1e-8));
    const auto b = integrate_semi_infinite(c.f, with(Substitution::exponential, 1e-8));
    CHECK(std::abs(a.value - b.value) <= a.error_estimate + b.error_estimate + 1e-15 * std::abs(c.exact));
    CHECK(std::abs(a.value - c.exact) <= a.error_estimate + 1e-15 * std::abs(c.exact));
  }
}

TEST_CASE("halving rel_tol never increases the error") {
  for (const Case& c : corpus())
    for (Substitution s : {Substitution::rational, Substitution::exponential}) {
      if (c.algebraic && s == Substitution::exponential) continue;
      CAPTURE(c.name);
      double prev = INFINITY;
      // Below ~1e-10 the error is accumulated rounding over thousands of
      // nodes and fluctuates at the 1e-14 relative level.
      for (double tol = 1e-4; tol > 1e-10; tol *= 0.5) {
        const double err = std::abs(integrate_semi_infinite(c.f, with(s, tol)).value - c.exact);
        // Rounding floor: a few ulp of the result.
        CHECK(err <= prev + 8e-16 * std::abs(c.exact));
        prev = std::max(err, 0.0);
      }
    }
}

TEST_CASE("integrands far below DBL_MIN still converge") {
  // Rows deep in the tail of the pressure integrals underflow like this.
  for (Substitution s : {Substitution::rational, Substitution::exponential}) {
    const auto r = integrate_semi_infinite(
        [](double y) { return 1e-312 * std::exp(-y) * (1.0 + 0.5 * std::sin(3.0 * y)); }, with(s, 1e-12));
    CHECK(r.value > 0.0);
    CHECK(r.value < 1e-311);
  }
}

TEST_CASE("non-convergence reports the best estimate") {
  QuadratureSpec spec = with(Substitution::rational, 1e-14);
  spec.max_subdivisions = 2;
  try {
    integrate([](double y) { return 1.0 / std::sqrt(y); }, 0.0, 1.0, spec);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.best_estimate() == doctest::Approx(2.0).epsilon(0.2));
    CHECK(e.error_estimate() > 0.0);
  }
}

TEST_CASE("integrate_2d_semi_infinite") {
  const QuadratureSpec outer = with(Substitution::rational);
  const QuadratureSpec inner = with(Substitution::exponential, 1e-11);
  const auto a = integrate_2d_semi_infinite(
      [](double x, std::span<const double> b, std::span<double> out) {
        for (std::size_t i = 0; i < b.size(); ++i) out[i] = std::exp(-x - b[i]);
      },
      outer, inner);
  CHECK(a.value == doctest::Approx(1.0).epsilon(1e-10));
  const auto b = integrate_2d_semi_infinite(
      [](double x, std::span<const double> y, std::span<double> out) {
        for (std::size_t i = 0; i < y.size(); ++i) out[i] = x * y[i] * std::exp(-x - y[i]);
      },
      outer, inner);
  CHECK(b.value == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(b.error_estimate >= 0.0);

  // An inner decay length that shrinks with the outer coordinate:
  // int_0^inf dx int_0^inf dy e^{-x} (1+x) e^{-(1+x) y} = 1.
  const auto c = integrate_2d_semi_infinite(
      [](double x, std::span<const double> y, std::span<double> out) {
        for (std::size_t i = 0; i < y.size(); ++i) out[i] = (1.0 + x) * std::exp(-x - (1.0 + x) * y[i]);
      },
      outer, inner, [](double x) { return 1.0 / (1.0 + x); });
  CHECK(c.value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("integrate_2d_semi_infinite: quasistatic integrand against its series") {
  // int dx int dt t^2 e^{-t} / (A - e^{-t}), A = (2x^2+1)^2. Expanding in
  // e^{-t}/A and integrating term by term:
  //   sum_n (2/n^3) (1/sqrt 2) (sqrt(pi)/2) Gamma(2n - 1/2) / Gamma(2n).
  double series = 0.0;
  for (int n = 400000; n >= 1; --n)
    series += 2.0 / (double(n) * n * n) * std::sqrt(pi / 8.0) *
              std::exp(std::lgamma(2.0 * n - 0.5) - std::lgamma(2.0 * n));
  CHECK(series == doctest::Approx(16.0 * pi * pi * 0.00781).epsilon(2e-3));

  const QuadratureSpec outer = with(Substitution::rational, 1e-10);
  const QuadratureSpec inner = with(Substitution::exponential, 1e-11);
  const auto r = integrate_2d_semi_infinite(
      [](double x, std::span<const double> t, std::span<double> out) {
        const double a = (2.0 * x * x + 1.0) * (2.0 * x * x + 1.0);
        for (std::size_t i = 0; i < t.size(); ++i) out[i] = t[i] * t[i] * std::exp(-t[i]) / (a - std::exp(-t[i]));
      },
      outer, inner);
  CHECK(r.value == doctest::Approx(series).epsilon(1e-9));
}

TEST_CASE("bessel_k") {
  for (double a : {0.05, 0.5, 1.0, 2.0, 5.0, 10.0, 30.0})
    for (int nu : {0, 1, 2}) {
      CAPTURE(a);
      CAPTURE(nu);
      CHECK(bessel_k(nu, a) == doctest::Approx(bessel_trapezoid(nu, a)).epsilon(1e-10));
    }
  CHECK(bessel_k(1, 1e-8) * 1e-8 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(bessel_k(1, 1.0) == doctest::Approx(bessel_trapezoid(1, 1.0)).epsilon(1e-10));

  // Large-argument expansion: K_nu(z) ~ sqrt(pi/2z) e^{-z} sum_k a_k(nu) / z^k
  // with a_k = prod_{j=1..k} (4 nu^2 - (2j-1)^2) / (k! 8^k).
  const double z = 10.0;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k <= 14; ++k) {
    term *= (4.0 - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (k * 8.0 * z);
    sum += term;
  }
  CHECK(bessel_k(1, z) * std::exp(z) * std::sqrt(z) == doctest::Approx(std::sqrt(pi / 2.0) * sum).epsilon(1e-8));

  for (double a : {0.1, 1.0, 7.0})
    CHECK(bessel_k(2, a) == doctest::Approx(bessel_k(0, a) + 2.0 * bessel_k(1, a) / a).epsilon(1e-10));

  CHECK_THROWS_AS(bessel_k(1, 0.0), DomainError);
  CHECK_THROWS_AS(bessel_k(1, -1.0), DomainError);
}

TEST_CASE("second derivative of K1(a)/a against central differences") {
  const auto g = [](double a) { return bessel_k(1, a) / a; };
  for (double a : {0.5, 2.0, 10.0}) {
    // Truncation ~h^2 f''''/12 and rounding ~eps f/h^2 both stay below 1e-8.
    const double h = 1e-4 * a;
    const double fd = (g(a + h) - 2.0 * g(a) + g(a - h)) / (h * h);
    CHECK(bessel_k1_over_a_second_derivative(a) == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("sum_series") {
  const auto z4 = sum_series([](std::size_t n) { return 1.0 / std::pow(double(n), 4); });
  // A power-law tail of ~1/(3n^3) remains after stopping at n^-4 < 1e-12.
  CHECK(z4.value == doctest::Approx(std::pow(pi, 4) / 90.0).epsilon(1e-9));
  CHECK(std::abs(z4.value - std::pow(pi, 4) / 90.0) <= z4.error_estimate + 1e-15);

  const auto z2 = sum_series([](std::size_t n) { return 1.0 / (double(n) * double(n)); }, 1e-12);
  CHECK(std::abs(z2.value - pi * pi / 6.0) <= z2.error_estimate + 1e-14);

  const auto geo = sum_series([](std::size_t n) { return std::pow(0.5, double(n)); });
  CHECK(geo.value == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(sum_series([](std::size_t n) { return 1.0 / double(n); }), ConvergenceError);
}
