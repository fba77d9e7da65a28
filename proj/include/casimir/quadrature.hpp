#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <type_traits>

namespace casimir::quadrature {

/// Map from (0, inf) onto (0, 1): rational y = L v/(1-v), exponential
/// y = -L ln(1-v). L is the length scale of the integrand's decay.
enum class Substitution { rational, exponential };

struct QuadratureSpec {
  double rel_tol = 1e-9;
  double abs_tol = 1e-14;
  int max_subdivisions = 2000;
  Substitution substitution = Substitution::rational;
  double scale = 1.0;
};

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

/// Evaluates f at every abscissa in `in`, writing to `out` (same length).
using BatchFunction = std::function<void(std::span<const double> in, std::span<double> out)>;

/// f(a, b_i) for a fixed outer coordinate a and a batch of inner coordinates.
using RowFunction = std::function<void(double a, std::span<const double> b, std::span<double> out)>;

/// Adaptive 15-point Gauss-Kronrod on [a, b] with global bisection.
/// Throws ConvergenceError when max_subdivisions is exhausted.
IntegralResult integrate(const BatchFunction& f, double a, double b, const QuadratureSpec& spec);

IntegralResult integrate_semi_infinite(const BatchFunction& f, const QuadratureSpec& spec);

template <class F>
  requires std::is_invocable_r_v<double, F, double>
IntegralResult integrate(F f, double a, double b, const QuadratureSpec& spec) {
  return integrate(
      BatchFunction([&f](std::span<const double> in, std::span<double> out) {
        for (std::size_t i = 0; i < in.size(); ++i) out[i] = f(in[i]);
      }),
      a, b, spec);
}

template <class F>
  requires std::is_invocable_r_v<double, F, double>
IntegralResult integrate_semi_infinite(F f, const QuadratureSpec& spec) {
  return integrate_semi_infinite(
      BatchFunction([&f](std::span<const double> in, std::span<double> out) {
        for (std::size_t i = 0; i < in.size(); ++i) out[i] = f(in[i]);
      }),
      spec);
}

/// Iterated integral over (0, inf)^2: inner over the second argument,
/// outer over the first. The reported error is the outer estimate plus the
/// inner estimates propagated through the outer rule. When inner_scale is
/// given it replaces inner.scale, evaluated at each outer abscissa.
IntegralResult integrate_2d_semi_infinite(const RowFunction& f, const QuadratureSpec& outer,
                                          const QuadratureSpec& inner,
                                          const std::function<double(double)>& inner_scale = {});

/// Modified Bessel function of the second kind, orders 0, 1, 2, for a > 0.
/// K_2 is formed from the recurrence K_2 = K_0 + 2 K_1 / a.
double bessel_k(int order, double a);

/// d^2/da^2 [K_1(a)/a] = K_1(a)/a + 3 K_2(a)/a^2.
double bessel_k1_over_a_second_derivative(double a);

struct SeriesResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t terms = 0;
};

/// Sums term(1) + term(2) + ... until |term(n)| < rel_tol |partial| holds for
/// two consecutive terms. The error estimate bounds the neglected tail
/// (geometric or power-law, whichever is larger). Throws ConvergenceError
/// after 10^6 terms.
SeriesResult sum_series(const std::function<double(std::size_t)>& term, double rel_tol = 1e-12);

}  // namespace casimir::quadrature
