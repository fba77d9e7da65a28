#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "casimir/errors.hpp"
#include "casimir/modes.hpp"
#include "casimir/pressure.hpp"

using namespace casimir;
using namespace casimir::modes;
using std::numbers::pi;

namespace {

const double kHalfRoot = 1.0 / std::sqrt(2.0);

double lowest_root(Symmetry nu, double u, double ds, Gap gap = std::nullopt) {
  const auto roots = dispersion_roots(Polarization::p, nu, u, ds, gap);
  REQUIRE_FALSE(roots.empty());
  return roots.front();
}

}  // namespace

TEST_CASE("sp_freq_nonretarded") {
  CHECK(sp_freq_nonretarded(1e4, 1.0, Symmetry::plus) == doctest::Approx(kHalfRoot).epsilon(1e-15));
  CHECK(sp_freq_nonretarded(1e4, 1.0, Symmetry::minus) == doctest::Approx(kHalfRoot).epsilon(1e-15));
  CHECK(sp_freq_nonretarded(0.0, 1.0, Symmetry::plus) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(sp_freq_nonretarded(0.0, 1.0, Symmetry::minus) == 0.0);
  CHECK(sp_freq_nonretarded(std::log(2.0), 1.0, Symmetry::plus) ==
        doctest::Approx(kHalfRoot * std::sqrt(1.5)).epsilon(1e-15));
}

TEST_CASE("photonic_mode_freq") {
  CHECK(photonic_mode_freq(1, 0.0, pi) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(photonic_mode_freq(2, 0.5, 1e8) == doctest::Approx(std::sqrt(1.25)).epsilon(1e-12));
  CHECK_THROWS_AS(photonic_mode_freq(0, 1.0, 1.0), DomainError);

  // Between touching perfect mirrors the in-slab amplitudes are R itself, so
  // the mode condition is 1 - R^2 e^{-2 alpha_s ds} = 0 with alpha_s ds = i n pi.
  for (int n : {1, 2, 5})
    for (double u : {0.0, 0.7, 3.0}) {
      const double w = photonic_mode_freq(n, u, 0.8);
      const std::complex<double> alpha_s = std::sqrt(std::complex<double>(u * u - (w * w - 1.0)));
      for (double R : {1.0, -1.0}) {
        const std::complex<double> D = 1.0 - R * R * std::exp(-2.0 * alpha_s * 0.8);
        CHECK(std::abs(D) < 1e-12);
      }
    }
}

TEST_CASE("dispersion_residual") {
  CHECK_THROWS_AS(dispersion_residual(Polarization::p, Symmetry::plus, 1.0, 1.0, 1.0, std::nullopt), DomainError);
  CHECK_THROWS_AS(dispersion_residual(Polarization::p, Symmetry::plus, 0.0, 1.0, 1.0, std::nullopt), DomainError);
  CHECK_THROWS_AS(dispersion_residual(Polarization::p, Symmetry::plus, 0.5, 1.0, -1.0, std::nullopt), DomainError);

  // Where the relation is well conditioned the bare residual vanishes at the roots.
  for (Gap gap : {Gap{}, Gap{0.5}})
    for (Symmetry nu : {Symmetry::minus, Symmetry::plus})
      for (double u : {0.8, 2.0, 6.0}) {
        const double ds = 0.5;
        for (double w : dispersion_roots(Polarization::p, nu, u, ds, gap)) {
          CHECK(w < u);
          CHECK(std::abs(dispersion_residual(Polarization::p, nu, w, u, ds, gap)) < 1e-10);
        }
      }
}

TEST_CASE("quasistatic limit of the free-slab roots") {
  for (Symmetry nu : {Symmetry::minus, Symmetry::plus}) {
    const double w = lowest_root(nu, 50.0, 0.1);
    CHECK(w == doctest::Approx(sp_freq_nonretarded(50.0, 0.1, nu)).epsilon(1e-4));
  }
}

TEST_CASE("free slab: both branches meet at 1/sqrt2 for decoupled surfaces") {
  // u ds = 40 with u large enough that retardation is negligible.
  const double ds = 0.01, u = 4000.0;
  for (Symmetry nu : {Symmetry::minus, Symmetry::plus})
    CHECK(std::abs(lowest_root(nu, u, ds) - kHalfRoot) < 1e-6);
}

TEST_CASE("implicit thickness derivative against finite differences") {
  struct Point {
    double u, ds;
    Gap gap;
  };
  for (const Point& pt : {Point{0.5, 0.2, {}}, Point{3.0, 0.5, {}}, Point{20.0, 0.05, {}}, Point{2.0, 0.5, 1.0},
                          Point{1.5, 1.0, 0.3}})
    for (Symmetry nu : {Symmetry::minus, Symmetry::plus}) {
      CAPTURE(pt.u);
      CAPTURE(pt.ds);
      const auto roots = dispersion_roots(Polarization::p, nu, pt.u, pt.ds, pt.gap);
      if (roots.empty()) continue;
      const double h = 1e-5 * pt.ds;
      const double up = lowest_root(nu, pt.u, pt.ds + h, pt.gap);
      const double down = lowest_root(nu, pt.u, pt.ds - h, pt.gap);
      const double fd = (up - down) / (2.0 * h);
      const double implicit = frequency_thickness_derivative(Polarization::p, nu, roots.front(), pt.u, pt.ds, pt.gap);
      CHECK(implicit == doctest::Approx(fd).epsilon(1e-5));
    }
}

TEST_CASE("solve_sp_branch: free slab") {
  std::vector<double> grid;
  for (double u = 0.05; u < 60.0; u *= 1.3) grid.push_back(u);
  const double ds = 0.5;
  const ModeBranch minus = solve_sp_branch(Polarization::p, Symmetry::minus, grid, ds, std::nullopt);
  const ModeBranch plus = solve_sp_branch(Polarization::p, Symmetry::plus, grid, ds, std::nullopt);
  REQUIRE(minus.samples.size() > 10);
  REQUIRE(plus.samples.size() > 10);
  for (std::size_t i = 0; i < minus.samples.size(); ++i) {
    const ModeSample s = minus.samples[i];
    CHECK(s.w < s.u);
    if (i > 0) CHECK(s.u > minus.samples[i - 1].u);
    // Residual invariant where rounding is not amplified by e^{u ds}.
    if (s.u * ds < 10.0)
      CHECK(std::abs(dispersion_residual(Polarization::p, Symmetry::minus, s.w, s.u, ds, std::nullopt)) < 1e-10);
  }
  for (const ModeSample& p : plus.samples)
    for (const ModeSample& m : minus.samples)
      if (p.u == m.u) CHECK(p.w > m.w);
  CHECK(std::abs(plus.samples.back().w - kHalfRoot) < 1e-3);
  CHECK(std::abs(minus.samples.back().w - kHalfRoot) < 1e-3);

  CHECK_THROWS_AS(solve_sp_branch(Polarization::p, Symmetry::minus, std::vector<double>{1.0, 0.5}, ds, std::nullopt),
                  DomainError);
}

TEST_CASE("solve_sp_branch: cavity") {
  std::vector<double> grid;
  for (double u = 0.1; u < 20.0; u *= 1.25) grid.push_back(u);

  // Moderate gap: the branch exists and rises with u.
  const ModeBranch b = solve_sp_branch(Polarization::p, Symmetry::minus, grid, 0.5, 1.0);
  REQUIRE(b.samples.size() > 5);
  for (std::size_t i = 1; i < b.samples.size(); ++i) CHECK(b.samples[i].w > b.samples[i - 1].w);

  // Mirrors nearly touching: with perfect mirrors the surface-mode relation
  // reads eps(w) = -(alpha_s / alpha) tanh^{+-1}(alpha_s ds / 2) / tanh(alpha d),
  // so w^2 ~ u d / tanh^{+-1}(...) and the modes sink to zero like sqrt(d).
  for (Symmetry nu : {Symmetry::minus, Symmetry::plus}) {
    const ModeBranch tight = solve_sp_branch(Polarization::p, nu, grid, 0.5, 1e-3);
    const ModeBranch tighter = solve_sp_branch(Polarization::p, nu, grid, 0.5, 1e-5);
    const ModeBranch touching = solve_sp_branch(Polarization::p, nu, grid, 0.5, 1e-7);
    REQUIRE(tight.samples.size() == grid.size());
    REQUIRE(tighter.samples.size() == grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double u = grid[i], w = tight.samples[i].w;
      const double alpha = std::sqrt(u * u - w * w), alpha_s = std::sqrt(alpha * alpha + 1.0);
      const double t = std::tanh(0.25 * alpha_s);
      const double eps = -(alpha_s / alpha) * (nu == Symmetry::plus ? t : 1.0 / t) / std::tanh(alpha * 1e-3);
      CAPTURE(u);
      CHECK(1.0 - 1.0 / (w * w) == doctest::Approx(eps).epsilon(1e-9));
      CHECK(tighter.samples[i].w / w == doctest::Approx(0.1).epsilon(0.02));
    }
    for (const ModeSample& s : touching.samples) CHECK(s.w < 1e-2);
  }
}

TEST_CASE("quasistatic plasmon decomposition") {
  const double c = pressure::pressure_nonretarded_coefficient();
  for (double ds : {0.01, 0.1, 1.0}) {
    const ModeSumPressure m = sp_pressure_nonretarded(ds);
    const double fnr = pressure::pressure_nonretarded(ds).value;
    CHECK(m.total == doctest::Approx(-c / (ds * ds * ds)).epsilon(1e-6));
    CHECK(m.contribution(Symmetry::minus) / fnr == doctest::Approx(7.83).epsilon(0.01 / 7.83));
    CHECK(m.contribution(Symmetry::plus) / fnr == doctest::Approx(-6.83).epsilon(0.01 / 6.83));
    CHECK(m.contribution(Symmetry::minus) < 0.0);
    CHECK(m.contribution(Symmetry::plus) > 0.0);
  }
}

TEST_CASE("retarded surface-mode pressure") {
  // Thin slab: the surface modes carry the whole pressure.
  const double thin = 0.01 * 2.0 * pi;
  const ModeSumPressure m = sp_pressure_retarded(thin);
  CHECK(m.total / pressure::pressure_nonretarded(thin).value == doctest::Approx(1.0).epsilon(0.05));
  double sum = 0.0;
  for (const BranchContribution& b : m.branches) sum += b.value;
  CHECK(sum == m.total);
  CHECK(m.truncation_error >= 0.0);

  // Values confirmed with an independent finite-difference mode sum.
  CHECK(sp_pressure_retarded(0.1 * 2.0 * pi).total == doctest::Approx(-0.0189988).epsilon(1e-5));
  CHECK(sp_pressure_retarded(0.3 * 2.0 * pi).total == doctest::Approx(-5.80559e-5).epsilon(1e-5));

  // Thick slab: the surfaces decouple and the mode pressure dies away.
  const double thick = 2.0 * pi;
  CHECK(std::abs(sp_pressure_retarded(thick).total / pressure::pressure_nonretarded(thick).value) < 1e-2);
}
