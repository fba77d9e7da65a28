#include "casimir/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "casimir/errors.hpp"

namespace casimir::quadrature {

namespace {

// 15-point Kronrod abscissae (positive half, descending) and weights, with the
// embedded 7-point Gauss weights. Values from QUADPACK qk15.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr std::size_t kNodes = 15;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min();

// f(t) -> values, plus an optional non-negative auxiliary density that is
// integrated alongside (used to carry inner error estimates in 2D).
using PairFunction =
    std::function<void(std::span<const double>, std::span<double> val, std::span<double> aux)>;

struct Panel {
  double a, b;
  double value, error, aux;
  bool splittable;
};

Panel gauss_kronrod(const PairFunction& f, double a, double b, bool with_aux) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<double, kNodes> t{};
  t[0] = centre;
  for (std::size_t j = 0; j < 7; ++j) {
    t[1 + 2 * j] = centre - half * kXgk[j];
    t[2 + 2 * j] = centre + half * kXgk[j];
  }
  std::array<double, kNodes> fv{};
  std::array<double, kNodes> av{};
  f(t, fv, with_aux ? std::span<double>(av) : std::span<double>());

  for (double v : fv)
    if (!std::isfinite(v)) throw ConvergenceError("non-finite integrand value", 0.0, 0.0);

  double resk = fv[0] * kWgk[7];
  double resg = fv[0] * kWg[3];
  double resabs = std::abs(resk);
  double aux = with_aux ? av[0] * kWgk[7] : 0.0;
  for (std::size_t j = 0; j < 7; ++j) {
    const double f1 = fv[1 + 2 * j];
    const double f2 = fv[2 + 2 * j];
    resk += kWgk[j] * (f1 + f2);
    resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    if (with_aux) aux += kWgk[j] * (av[1 + 2 * j] + av[2 + 2 * j]);
  }
  const double reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fv[0] - reskh);
  for (std::size_t j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::abs(fv[1 + 2 * j] - reskh) + std::abs(fv[2 + 2 * j] - reskh));

  resk *= half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);
  double err = std::abs((resk - resg * half));
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > kTiny / (50.0 * kEps)) err = std::max(50.0 * kEps * resabs, err);

  const bool splittable = std::abs(half) > 4.0 * kEps * std::max(std::abs(centre), kTiny);
  return {a, b, resk, err, aux * std::abs(half), splittable};
}

IntegralResult adaptive(const PairFunction& f, double a, double b, const QuadratureSpec& spec,
                        bool with_aux) {
  if (!(spec.rel_tol > 0.0 && spec.rel_tol < 1.0))
    throw DomainError("quadrature: rel_tol must lie in (0, 1)");
  if (spec.max_subdivisions < 1) throw DomainError("quadrature: max_subdivisions must be >= 1");

  std::vector<Panel> panels;
  panels.reserve(64);
  panels.push_back(gauss_kronrod(f, a, b, with_aux));
  std::size_t evaluations = kNodes;

  double value = 0.0;
  double error = 0.0;
  for (;;) {
    value = 0.0;
    error = 0.0;
    double carried = 0.0;
    for (const Panel& p : panels) {
      value += p.value;
      error += p.error + p.aux;
      carried += p.aux;
    }
    // Below DBL_MIN relative accuracy is not representable.
    const double tol = std::max({spec.rel_tol * std::abs(value), spec.abs_tol, std::numeric_limits<double>::min()});
    if (error <= tol) break;
    if (carried > tol && error - carried <= 1e-3 * tol)
      throw ConvergenceError("quadrature: inner error estimates exceed the outer tolerance", value, error);
    if (static_cast<int>(panels.size()) >= spec.max_subdivisions)
      throw ConvergenceError("quadrature: subdivision limit reached", value, error);

    std::size_t worst = panels.size();
    for (std::size_t i = 0; i < panels.size(); ++i) {
      if (!panels[i].splittable) continue;
      if (worst == panels.size() || panels[i].error > panels[worst].error) worst = i;
    }
    if (worst == panels.size() || panels[worst].error == 0.0)
      throw ConvergenceError("quadrature: roundoff prevents further refinement", value, error);

    const Panel old = panels[worst];
    const double mid = 0.5 * (old.a + old.b);
    panels[worst] = gauss_kronrod(f, old.a, mid, with_aux);
    panels.push_back(gauss_kronrod(f, mid, old.b, with_aux));
    evaluations += 2 * kNodes;
  }

  // Final reduction in left-to-right order so the result does not depend on
  // the refinement history.
  std::sort(panels.begin(), panels.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });
  value = 0.0;
  error = 0.0;
  for (const Panel& p : panels) {
    value += p.value;
    error += p.error + p.aux;
  }
  return {value, error, evaluations};
}

// Maps v in (0,1) to y in (0,inf) and returns the Jacobian dy/dv.
struct SemiInfiniteMap {
  Substitution kind;
  double scale;

  double operator()(double v, double& jacobian) const {
    const double w = 1.0 - v;
    if (kind == Substitution::rational) {
      jacobian = scale / (w * w);
      return scale * v / w;
    }
    jacobian = scale / w;
    return -scale * std::log1p(-v);
  }
};

PairFunction mapped(const BatchFunction& f, SemiInfiniteMap map) {
  return [&f, map](std::span<const double> v, std::span<double> out, std::span<double>) {
    std::array<double, kNodes> y{};
    std::array<double, kNodes> jac{};
    std::array<bool, kNodes> at_infinity{};
    for (std::size_t i = 0; i < v.size(); ++i) {
      y[i] = map(v[i], jac[i]);
      // A node that rounds onto v = 1 sits at y = inf where the integrand has decayed.
      at_infinity[i] = !std::isfinite(y[i]) || !std::isfinite(jac[i]);
      if (at_infinity[i]) y[i] = std::numeric_limits<double>::max();
    }
    f(std::span<const double>(y.data(), v.size()), out);
    for (std::size_t i = 0; i < v.size(); ++i)
      out[i] = (at_infinity[i] || out[i] == 0.0) ? 0.0 : out[i] * jac[i];
  };
}

void check_scale(const QuadratureSpec& spec) {
  if (!(spec.scale > 0.0) || !std::isfinite(spec.scale))
    throw DomainError("quadrature: substitution scale must be positive and finite");
}

}  // namespace

IntegralResult integrate(const BatchFunction& f, double a, double b, const QuadratureSpec& spec) {
  if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("integrate: finite limits required");
  if (a == b) return {};
  PairFunction g = [&f](std::span<const double> t, std::span<double> out, std::span<double>) {
    f(t, out);
  };
  return adaptive(g, a, b, spec, false);
}

IntegralResult integrate_semi_infinite(const BatchFunction& f, const QuadratureSpec& spec) {
  check_scale(spec);
  return adaptive(mapped(f, {spec.substitution, spec.scale}), 0.0, 1.0, spec, false);
}

IntegralResult integrate_2d_semi_infinite(const RowFunction& f, const QuadratureSpec& outer,
                                          const QuadratureSpec& inner,
                                          const std::function<double(double)>& inner_scale) {
  check_scale(outer);
  check_scale(inner);
  const SemiInfiniteMap outer_map{outer.substitution, outer.scale};
  std::size_t inner_evaluations = 0;

  PairFunction g = [&](std::span<const double> v, std::span<double> val, std::span<double> aux) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      double jac = 0.0;
      const double a = outer_map(v[i], jac);
      BatchFunction row = [&f, a](std::span<const double> b, std::span<double> out) { f(a, b, out); };
      QuadratureSpec spec = inner;
      if (inner_scale) spec.scale = inner_scale(a);
      const IntegralResult r = integrate_semi_infinite(row, spec);
      inner_evaluations += r.evaluations;
      val[i] = r.value == 0.0 ? 0.0 : r.value * jac;
      aux[i] = r.error_estimate == 0.0 ? 0.0 : r.error_estimate * jac;
    }
  };
  IntegralResult result = adaptive(g, 0.0, 1.0, outer, true);
  result.evaluations = inner_evaluations;
  return result;
}

double bessel_k(int order, double a) {
  if (!(a > 0.0) || std::isnan(a)) throw DomainError("bessel_k: argument must be > 0");
  switch (order) {
    case 0:
      return std::cyl_bessel_k(0.0, a);
    case 1:
      return std::cyl_bessel_k(1.0, a);
    case 2:
      return std::cyl_bessel_k(0.0, a) + 2.0 * std::cyl_bessel_k(1.0, a) / a;
    default:
      throw DomainError("bessel_k: only orders 0, 1, 2 are provided");
  }
}

double bessel_k1_over_a_second_derivative(double a) {
  const double k0 = bessel_k(0, a);
  const double k1 = bessel_k(1, a);
  const double k2 = k0 + 2.0 * k1 / a;
  return k1 / a + 3.0 * k2 / (a * a);
}

SeriesResult sum_series(const std::function<double(std::size_t)>& term, double rel_tol) {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw DomainError("sum_series: rel_tol must lie in (0, 1)");
  constexpr std::size_t kMaxTerms = 1'000'000;

  double sum = 0.0;
  double previous = 0.0;
  int quiet = 0;
  for (std::size_t n = 1; n <= kMaxTerms; ++n) {
    const double t = term(n);
    if (!std::isfinite(t)) throw ConvergenceError("sum_series: non-finite term", sum, INFINITY);
    sum += t;
    const double at = std::abs(t);
    quiet = at < rel_tol * std::abs(sum) || (at == 0.0 && sum == 0.0) ? quiet + 1 : 0;
    if (quiet == 2) {
      double tail = at;
      const double ap = std::abs(previous);
      if (ap > 0.0 && at < ap) {
        const double ratio = at / ap;
        const double geometric = at * ratio / (1.0 - ratio);
        const double power = std::log(ap / at) / std::log(double(n) / double(n - 1));
        const double algebraic = power > 1.0 ? at * double(n) / (power - 1.0) : INFINITY;
        tail = std::max(geometric, std::isfinite(algebraic) ? algebraic : geometric);
      }
      return {sum, tail, n};
    }
    previous = t;
  }
  throw ConvergenceError("sum_series: no decay detected within 1e6 terms", sum, INFINITY);
}

}  // namespace casimir::quadrature
