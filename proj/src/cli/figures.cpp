#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "casimir/cli.hpp"
#include "internal.hpp"

namespace casimir::cli {

namespace {

struct Curve {
  std::string name;
  QuantityExpr quantity;
  Geometry geometry;
};

// The sweep variable of a figure: either the slab thickness in units of the
// plasma wavelength, k_P d_s, or the symmetric slab-mirror gap k_P d.
enum class FigAxis { ds_over_lambda, ds, gap };

Dataset build(const std::vector<Curve>& curves, FigAxis axis, const Range& range,
              const quadrature::QuadratureSpec& tol, int workers) {
  const std::vector<double> xs = range.grid();
  Dataset data;
  data.xscale = range.spacing;
  data.rows.resize(curves.size() * xs.size());
  parallel_for(data.rows.size(), workers, [&](std::size_t k) {
    const Curve& c = curves[k / xs.size()];
    const double x = xs[k % xs.size()];
    Geometry g = c.geometry;
    switch (axis) {
      case FigAxis::ds_over_lambda: g.ds = 2.0 * std::numbers::pi * x; break;
      case FigAxis::ds: g.ds = x; break;
      case FigAxis::gap: g.gap1 = g.gap2 = x; break;
    }
    data.rows[k] = evaluate_row(c.name, x, c.quantity, g, tol);
  });
  return data;
}

Geometry free_slab() { return {1.0, std::nullopt, std::nullopt, false}; }

Geometry cavity(double ds, std::optional<double> gap) {
  if (!gap) return free_slab();
  return {ds, gap, gap, true};
}

}  // namespace

std::optional<FigureId> parse_figure(std::string_view name) {
  for (FigureId id : {FigureId::fig2, FigureId::fig3, FigureId::fig4, FigureId::fig5})
    if (figure_name(id) == name) return id;
  return std::nullopt;
}

std::string_view figure_name(FigureId id) {
  switch (id) {
    case FigureId::fig2: return "fig2";
    case FigureId::fig3: return "fig3";
    case FigureId::fig4: return "fig4";
    case FigureId::fig5: return "fig5";
  }
  return "?";
}

Dataset fig_dataset(FigureId id, const quadrature::QuadratureSpec& tol, int workers) {
  const QuantityExpr cavity_ratio{Quantity::F_cavity, Quantity::F_C};
  Dataset data;
  switch (id) {
    case FigureId::fig2: {
      const Range range{1e-3, 2.0, 31, Spacing::log};
      data = build({{"F", {Quantity::F_free, Quantity::F_nr}, free_slab()},
                    {"F_S", {Quantity::F_S, Quantity::F_nr}, free_slab()}},
                   FigAxis::ds_over_lambda, range, tol, workers);
      data.xlabel = "d_s / lambda_P";
      data.ylabel = "F / F_nr";
      break;
    }
    case FigureId::fig3: {
      const Range range{1e-3, 2.0, 31, Spacing::log};
      data = build({{"F", {Quantity::F_free, Quantity::F_nr}, free_slab()},
                    {"F_S", {Quantity::F_S, Quantity::F_nr}, free_slab()},
                    {"F_S_minus", {Quantity::F_S_minus, Quantity::F_nr}, free_slab()},
                    {"F_S_plus", {Quantity::F_S_plus, Quantity::F_nr}, free_slab()}},
                   FigAxis::ds_over_lambda, range, tol, workers);
      data.xlabel = "d_s / lambda_P";
      data.ylabel = "F / F_nr (y_abs: reduced pressure)";
      break;
    }
    case FigureId::fig4: {
      const Range range{1e-2, 5.0, 25, Spacing::log};
      std::vector<Curve> curves;
      for (double gap : {0.0, 0.01, 0.1, 1.0})
        curves.push_back({format("k_P d=%g", gap), cavity_ratio, cavity(1.0, gap)});
      curves.push_back({"k_P d=inf", cavity_ratio, free_slab()});
      data = build(curves, FigAxis::ds, range, tol, workers);
      data.xlabel = "k_P d_s";
      data.ylabel = "F / F_C";
      break;
    }
    case FigureId::fig5: {
      const Range range{1e-3, 5.0, 25, Spacing::log};
      std::vector<Curve> curves;
      for (double ds : {0.01, 0.1, 1.0, 2.0})
        curves.push_back({format("k_P d_s=%g", ds), cavity_ratio, cavity(ds, 0.0)});
      data = build(curves, FigAxis::gap, range, tol, workers);
      data.xlabel = "k_P d";
      data.ylabel = "F / F_C";
      break;
    }
  }
  data.command = "casimir figure " + std::string(figure_name(id));
  return data;
}

}  // namespace casimir::cli
