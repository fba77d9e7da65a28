#pragma once

// Sweeps, figure datasets, CSV and SVG output behind the `casimir` tool.

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "casimir/medium.hpp"
#include "casimir/quadrature.hpp"

namespace casimir::cli {

enum class Quantity {
  F_free,
  F_mirrors,
  F_cavity,
  F_interaction,
  F_S,
  F_S_minus,  // retarded branch contributions
  F_S_plus,
  F_nr,
  F_C,
};

std::string_view quantity_name(Quantity q);
std::optional<Quantity> parse_quantity_name(std::string_view name);

/// A quantity, optionally divided by a reference quantity ("F_cavity/F_C").
struct QuantityExpr {
  Quantity numerator = Quantity::F_free;
  std::optional<Quantity> denominator;

  std::string str() const;
};

/// Throws std::invalid_argument on an unknown name.
QuantityExpr parse_quantity(std::string_view text);

enum class Axis { ds, d };
enum class Spacing { lin, log };

struct Range {
  double min = 0.0;
  double max = 0.0;
  int points = 0;
  Spacing spacing = Spacing::lin;

  std::vector<double> grid() const;
  std::string str() const;
};

/// "min:max:points:log|lin"; throws std::invalid_argument.
Range parse_range(std::string_view text);

/// Slab thickness plus the two gaps. A gap of nullopt means no mirror on that
/// side; `perfect` = false removes both mirrors.
struct Geometry {
  double ds = 1.0;
  std::optional<double> gap1;
  std::optional<double> gap2;
  bool perfect = true;
};

struct SweepSpec {
  QuantityExpr quantity;
  Axis axis = Axis::ds;
  Range range;
  Geometry fixed;
  quadrature::QuadratureSpec tolerances;
};

/// Throws std::invalid_argument when the SweepSpec cannot describe a sweep.
void validate(const SweepSpec& spec);

struct Evaluation {
  double value = 0.0;      // numerator / denominator
  double numerator = 0.0;  // absolute value of the numerator quantity
  double error = 0.0;
  std::string formula;
  bool in_range = true;
};

/// Evaluates one point. Numerical failures propagate as exceptions.
Evaluation evaluate(const QuantityExpr& q, const Geometry& g, const quadrature::QuadratureSpec& tol);

struct Row {
  std::string curve;
  double x = 0.0;
  double y = 0.0;
  double y_abs = 0.0;
  double error = 0.0;
  std::string formula;
  std::string status;  // "ok", "out_of_range" or "failed: ..."

  bool failed() const { return status.rfind("failed", 0) == 0; }
};

struct Dataset {
  std::string command;  // normalized invocation, written as provenance
  std::string xlabel;
  std::string ylabel;
  Spacing xscale = Spacing::lin;
  Spacing yscale = Spacing::lin;
  std::vector<Row> rows;

  bool any_failed() const;
};

/// One row per grid point in axis order. A failing point is recorded in its
/// row; it does not abort the sweep.
Dataset run_sweep(const SweepSpec& spec, int workers = 1);

enum class FigureId { fig2, fig3, fig4, fig5 };
std::optional<FigureId> parse_figure(std::string_view name);
std::string_view figure_name(FigureId id);

Dataset fig_dataset(FigureId id, const quadrature::QuadratureSpec& tol = {}, int workers = 1);

std::string to_csv(const Dataset& data);

struct ParseError : std::runtime_error {
  ParseError(std::size_t line, const std::string& what);
  std::size_t line;
};

/// Inverse of to_csv. Throws ParseError carrying the 1-based line number.
Dataset parse_csv(std::string_view text);

std::string render_svg(const Dataset& data);

/// Reads a CSV written by this tool and writes the SVG. Nothing is written
/// when the CSV does not parse or holds no rows.
void emit_plot(const std::string& csv_path, const std::string& svg_path);

/// Runs fn(i) for i in [0, n) on up to `workers` threads.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

}  // namespace casimir::cli
