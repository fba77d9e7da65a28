// casimir: pressure on a plasma-model metal slab, free or inside an ideal
// cavity. Subcommands: pressure, sweep, figure, plot, verify.
//
// Exit status: 0 success, 1 numerical failure, 2 invalid arguments.

#include <cstdarg>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "casimir/acceptance.hpp"
#include "casimir/cli.hpp"
#include "casimir/errors.hpp"

namespace {

using namespace casimir;

constexpr int kOk = 0;
constexpr int kNumerical = 1;
constexpr int kUsage = 2;

struct Options {
  double ds = 1.0;
  std::string gap, gap1, gap2;
  std::string mirrors = "perfect";
  std::string quantity = "F_free";
  std::string range;
  std::string axis = "ds";
  double rel_tol = 1e-9;
  int workers = 0;
  std::string out;
  std::string figure;
  std::string csv_in, svg_out;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(const char* pattern, ...) {
  char buf[512];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buf, sizeof buf, pattern, args);
  va_end(args);
  return buf;
}

std::optional<double> parse_gap(const std::string& text, const char* flag) {
  if (text == "inf") return std::nullopt;
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || !(v >= 0.0)) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string(flag) + ": expected a gap >= 0 or 'inf', got '" + text + "'");
  }
}

std::string gap_text(const std::optional<double>& g) { return g ? fmt("%.12g", *g) : "inf"; }

cli::Geometry geometry(const Options& o) {
  if (o.mirrors != "none" && o.mirrors != "perfect") throw UsageError("--mirrors must be none or perfect");
  if (!(o.ds > 0.0)) throw UsageError("--ds must be positive");
  cli::Geometry g;
  g.ds = o.ds;
  g.perfect = o.mirrors == "perfect";
  if (!o.gap.empty()) g.gap1 = g.gap2 = parse_gap(o.gap, "--gap");
  if (!o.gap1.empty()) g.gap1 = parse_gap(o.gap1, "--gap1");
  if (!o.gap2.empty()) g.gap2 = parse_gap(o.gap2, "--gap2");
  return g;
}

quadrature::QuadratureSpec tolerances(const Options& o) {
  if (!(o.rel_tol > 0.0 && o.rel_tol < 1.0)) throw UsageError("--rel-tol must lie in (0, 1)");
  quadrature::QuadratureSpec spec;
  spec.rel_tol = o.rel_tol;
  return spec;
}

int workers(const Options& o) {
  if (o.workers > 0) return o.workers;
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

// The provenance line names every setting that affects the numbers, and
// nothing (output path, worker count) that does not.
std::string describe(const cli::SweepSpec& s) {
  std::string cmd = "casimir sweep --quantity " + s.quantity.str() +
                    " --axis " + std::string(s.axis == cli::Axis::ds ? "ds" : "d") + " --range " + s.range.str();
  if (s.axis == cli::Axis::d) cmd += fmt(" --ds %.12g", s.fixed.ds);
  cmd += " --mirrors " + std::string(s.fixed.perfect ? "perfect" : "none");
  if (s.axis == cli::Axis::ds) cmd += " --gap1 " + gap_text(s.fixed.gap1) + " --gap2 " + gap_text(s.fixed.gap2);
  cmd += fmt(" --rel-tol %.12g", s.tolerances.rel_tol);
  return cmd;
}

void write_output(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f || !(f << text)) throw std::runtime_error("cannot write " + o.out);
}

cli::QuantityExpr quantity(const Options& o) {
  try {
    return cli::parse_quantity(o.quantity);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

int run_pressure(const Options& o) {
  const cli::Geometry g = geometry(o);
  const cli::QuantityExpr q = quantity(o);
  cli::Dataset data;
  data.command = fmt("casimir pressure --quantity %s --ds %.12g --mirrors %s --gap1 %s --gap2 %s --rel-tol %.12g",
                             q.str().c_str(), g.ds, g.perfect ? "perfect" : "none", gap_text(g.gap1).c_str(),
                             gap_text(g.gap2).c_str(), o.rel_tol);
  data.xlabel = "k_P d_s";
  data.ylabel = q.str();
  cli::Row row{q.str(), g.ds, 0, 0, 0, "", "ok"};
  try {
    const cli::Evaluation e = cli::evaluate(q, g, tolerances(o));
    row.y = e.value;
    row.y_abs = e.numerator;
    row.error = e.error;
    row.formula = e.formula;
    if (!e.in_range) row.status = "out_of_range";
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  data.rows.push_back(row);
  write_output(o, cli::to_csv(data));
  return kOk;
}

int run_sweep(const Options& o) {
  if (o.range.empty()) throw UsageError("sweep needs --range min:max:points:log|lin");
  cli::SweepSpec spec;
  spec.quantity = quantity(o);
  spec.fixed = geometry(o);
  spec.tolerances = tolerances(o);
  if (o.axis == "ds") spec.axis = cli::Axis::ds;
  else if (o.axis == "d") spec.axis = cli::Axis::d;
  else throw UsageError("--axis must be ds or d");
  try {
    spec.range = cli::parse_range(o.range);
    cli::validate(spec);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  cli::Dataset data = cli::run_sweep(spec, workers(o));
  data.command = describe(spec);
  write_output(o, cli::to_csv(data));
  return data.any_failed() ? kNumerical : kOk;
}

int run_figure(const Options& o) {
  const auto id = cli::parse_figure(o.figure);
  if (!id) throw UsageError("figure must be one of fig2, fig3, fig4, fig5");
  const quadrature::QuadratureSpec tol = tolerances(o);
  cli::Dataset data = cli::fig_dataset(*id, tol, workers(o));
  data.command += fmt(" --rel-tol %.12g", tol.rel_tol);
  write_output(o, cli::to_csv(data));
  return data.any_failed() ? kNumerical : kOk;
}

int run_plot(const Options& o) {
  try {
    cli::emit_plot(o.csv_in, o.svg_out);
  } catch (const cli::ParseError& e) {
    throw UsageError(o.csv_in + ": " + e.what());
  }
  return kOk;
}

int run_verify() {
  bool all = true;
  for (int id = 1; id <= acceptance::kCriteria; ++id) {
    const acceptance::CriterionResult r = acceptance::run_criterion(id);
    std::cout << acceptance::format(r) << std::endl;
    all = all && r.pass;
  }
  return all ? kOk : kNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Vacuum-field pressure on a plasma-model metal slab, free or in an ideal cavity."};
  app.set_config("--config", "", "key=value file; command-line flags take precedence");
  app.add_option("--ds", o.ds, "slab thickness k_P d_s")->capture_default_str();
  app.add_option("--gap", o.gap, "both slab-mirror gaps k_P d ('inf' = no mirror)");
  app.add_option("--gap1", o.gap1, "left gap k_P d_1");
  app.add_option("--gap2", o.gap2, "right gap k_P d_2");
  app.add_option("--mirrors", o.mirrors, "none | perfect")->capture_default_str();
  app.add_option("--quantity", o.quantity,
                 "F_free F_mirrors F_cavity F_interaction F_S F_S_minus F_S_plus F_nr F_C, optionally /reference")
      ->capture_default_str();
  app.add_option("--range", o.range, "sweep grid min:max:points:log|lin");
  app.add_option("--axis", o.axis, "sweep axis: ds | d")->capture_default_str();
  app.add_option("--rel-tol", o.rel_tol, "relative tolerance of the integrals")->capture_default_str();
  app.add_option("--workers", o.workers, "worker threads (0 = all cores)");
  app.add_option("--out", o.out, "output file (default stdout)");
  app.require_subcommand(1);

  auto* pressure = app.add_subcommand("pressure", "evaluate one quantity at one geometry")->fallthrough();
  auto* sweep = app.add_subcommand("sweep", "evaluate a quantity over a grid")->fallthrough();
  auto* figure = app.add_subcommand("figure", "regenerate a figure dataset")->fallthrough();
  figure->add_option("id", o.figure, "fig2 | fig3 | fig4 | fig5")->required();
  auto* plot = app.add_subcommand("plot", "render a CSV written by this tool as SVG")->fallthrough();
  plot->add_option("csv", o.csv_in)->required();
  plot->add_option("svg", o.svg_out)->required();
  auto* verify = app.add_subcommand("verify", "run the acceptance checks")->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*pressure) return run_pressure(o);
    if (*sweep) return run_sweep(o);
    if (*figure) return run_figure(o);
    if (*plot) return run_plot(o);
    if (*verify) return run_verify();
  } catch (const UsageError& e) {
    std::cerr << "casimir: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "casimir: " << e.what() << "\n";
    return kNumerical;
  }
  return kUsage;
}
