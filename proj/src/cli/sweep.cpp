#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "casimir/cli.hpp"
#include "internal.hpp"
#include "casimir/errors.hpp"
#include "casimir/modes.hpp"
#include "casimir/pressure.hpp"

namespace casimir::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Term {
  double value;
  double error;
  std::string formula;
  bool in_range;
};

Term from(const pressure::PressureValue& p) {
  return {p.value, p.error_estimate, std::string(pressure::formula_name(p.formula)), p.in_range};
}

pressure::MirrorSide side(const Geometry& g, const std::optional<double>& gap) {
  if (!g.perfect || !gap) return {};
  return {medium::MirrorModel::perfect(), *gap};
}

pressure::SlabSystem system_of(const Geometry& g) { return {g.ds, side(g, g.gap1), side(g, g.gap2)}; }

modes::Gap modal_gap(const Geometry& g) {
  if (!g.perfect || (!g.gap1 && !g.gap2)) return std::nullopt;
  if (!g.gap1 || !g.gap2 || *g.gap1 != *g.gap2)
    throw DomainError("F_S: mode analysis needs a free slab or a symmetric cavity");
  return *g.gap1;
}

Term mode_sum(const Geometry& g, const quadrature::QuadratureSpec& tol, std::optional<medium::Symmetry> nu) {
  const modes::ModeSumPressure m = modes::sp_pressure_retarded(g.ds, modal_gap(g), tol);
  double value = m.total;
  double error = m.truncation_error;
  for (const modes::BranchContribution& b : m.branches)
    if (!nu || b.nu == *nu) error += b.error_estimate;
  if (nu) value = m.contribution(*nu);
  return {value, error, "mode_sum", true};
}

Term evaluate_term(Quantity q, const Geometry& g, const quadrature::QuadratureSpec& tol) {
  switch (q) {
    case Quantity::F_free: return from(pressure::pressure_free(g.ds, tol));
    case Quantity::F_mirrors: return from(pressure::pressure_mirrors_bessel(g.ds));
    case Quantity::F_cavity: return from(pressure::pressure_cavity(system_of(g), tol));
    case Quantity::F_interaction: return from(pressure::interaction_force(system_of(g), tol));
    case Quantity::F_S: return mode_sum(g, tol, std::nullopt);
    case Quantity::F_S_minus: return mode_sum(g, tol, medium::Symmetry::minus);
    case Quantity::F_S_plus: return mode_sum(g, tol, medium::Symmetry::plus);
    case Quantity::F_nr: return from(pressure::pressure_nonretarded(g.ds));
    case Quantity::F_C: return {pressure::casimir_ideal(g.ds), 0.0, "casimir_ideal", true};
  }
  throw std::logic_error("unhandled quantity");
}

double parse_number(std::string_view s, const char* what) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size())
    throw std::invalid_argument(std::string("range: bad ") + what + " '" + std::string(s) + "'");
  return v;
}

}  // namespace

std::string_view quantity_name(Quantity q) {
  switch (q) {
    case Quantity::F_free: return "F_free";
    case Quantity::F_mirrors: return "F_mirrors";
    case Quantity::F_cavity: return "F_cavity";
    case Quantity::F_interaction: return "F_interaction";
    case Quantity::F_S: return "F_S";
    case Quantity::F_S_minus: return "F_S_minus";
    case Quantity::F_S_plus: return "F_S_plus";
    case Quantity::F_nr: return "F_nr";
    case Quantity::F_C: return "F_C";
  }
  return "?";
}

std::optional<Quantity> parse_quantity_name(std::string_view name) {
  for (Quantity q : {Quantity::F_free, Quantity::F_mirrors, Quantity::F_cavity, Quantity::F_interaction,
                     Quantity::F_S, Quantity::F_S_minus, Quantity::F_S_plus, Quantity::F_nr, Quantity::F_C})
    if (quantity_name(q) == name) return q;
  return std::nullopt;
}

std::string QuantityExpr::str() const {
  std::string s(quantity_name(numerator));
  if (denominator) s += "/" + std::string(quantity_name(*denominator));
  return s;
}

QuantityExpr parse_quantity(std::string_view text) {
  const auto slash = text.find('/');
  const auto top = parse_quantity_name(text.substr(0, slash));
  if (!top) throw std::invalid_argument("unknown quantity '" + std::string(text.substr(0, slash)) + "'");
  QuantityExpr q{*top, std::nullopt};
  if (slash != std::string_view::npos) {
    const auto bottom = parse_quantity_name(text.substr(slash + 1));
    if (!bottom) throw std::invalid_argument("unknown quantity '" + std::string(text.substr(slash + 1)) + "'");
    q.denominator = *bottom;
  }
  return q;
}

std::vector<double> Range::grid() const {
  std::vector<double> out(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double t = double(i) / double(points - 1);
    out[i] = spacing == Spacing::log ? std::exp(std::log(min) + t * (std::log(max) - std::log(min)))
                                     : min + t * (max - min);
  }
  // Pin the end points so they print exactly as given.
  out.front() = min;
  out.back() = max;
  return out;
}

std::string Range::str() const {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.12g:%.12g:%d:%s", min, max, points, spacing == Spacing::log ? "log" : "lin");
  return buf;
}

Range parse_range(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto colon = text.find(':', start);
    parts.push_back(text.substr(start, colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts.size() != 4) throw std::invalid_argument("range must be min:max:points:log|lin");
  Range r;
  r.min = parse_number(parts[0], "min");
  r.max = parse_number(parts[1], "max");
  const double n = parse_number(parts[2], "points");
  if (n != std::floor(n) || n > 100000) throw std::invalid_argument("range: points must be an integer");
  r.points = static_cast<int>(n);
  if (parts[3] == "log") r.spacing = Spacing::log;
  else if (parts[3] == "lin") r.spacing = Spacing::lin;
  else throw std::invalid_argument("range: spacing must be log or lin");
  if (!(r.min < r.max)) throw std::invalid_argument("range: min must be below max");
  if (r.points < 2) throw std::invalid_argument("range: at least 2 points");
  if (r.spacing == Spacing::log && !(r.min > 0.0)) throw std::invalid_argument("range: log spacing needs min > 0");
  return r;
}

void validate(const SweepSpec& spec) {
  const Range& r = spec.range;
  if (!(r.min < r.max) || r.points < 2) throw std::invalid_argument("sweep: need min < max and points >= 2");
  if (r.spacing == Spacing::log && !(r.min > 0.0)) throw std::invalid_argument("sweep: log spacing needs min > 0");
  if (!(spec.tolerances.rel_tol > 0.0 && spec.tolerances.rel_tol < 1.0))
    throw std::invalid_argument("sweep: rel-tol must lie in (0, 1)");
  if (spec.axis == Axis::ds) {
    if (!(r.min > 0.0)) throw std::invalid_argument("sweep: ds values must be positive");
  } else {
    if (!spec.fixed.perfect) throw std::invalid_argument("sweep: a gap axis needs --mirrors perfect");
    if (r.min < 0.0) throw std::invalid_argument("sweep: gaps must be >= 0");
    if (!(spec.fixed.ds > 0.0)) throw std::invalid_argument("sweep: ds must be positive");
  }
  for (const auto& gap : {spec.fixed.gap1, spec.fixed.gap2})
    if (gap && !(*gap >= 0.0)) throw std::invalid_argument("sweep: gaps must be >= 0");
}

Evaluation evaluate(const QuantityExpr& q, const Geometry& g, const quadrature::QuadratureSpec& tol) {
  const Term top = evaluate_term(q.numerator, g, tol);
  Evaluation e{top.value, top.value, top.error, top.formula, top.in_range};
  if (!q.denominator) return e;
  const Term bottom = evaluate_term(*q.denominator, g, tol);
  if (bottom.value == 0.0) throw DomainError("ratio: reference quantity is zero");
  e.value = top.value / bottom.value;
  e.error = std::abs(e.value) * (bottom.error / std::abs(bottom.value)) + top.error / std::abs(bottom.value);
  e.formula = top.formula + "/" + bottom.formula;
  e.in_range = top.in_range && bottom.in_range;
  return e;
}

bool Dataset::any_failed() const {
  return std::any_of(rows.begin(), rows.end(), [](const Row& r) { return r.failed(); });
}

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
  const std::size_t threads = std::min<std::size_t>(n, std::max(1, workers));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_lock;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_lock);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (std::thread& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

Row evaluate_row(const std::string& curve, double x, const QuantityExpr& q, const Geometry& g,
                 const quadrature::QuadratureSpec& tol) {
  Row row{curve, x, kNaN, kNaN, kNaN, "", "ok"};
  try {
    const Evaluation e = evaluate(q, g, tol);
    row.y = e.value;
    row.y_abs = e.numerator;
    row.error = e.error;
    row.formula = e.formula;
    if (!e.in_range) row.status = "out_of_range";
  } catch (const std::exception& ex) {
    std::string msg = ex.what();
    std::replace(msg.begin(), msg.end(), ',', ';');
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    row.status = "failed: " + msg;
  }
  return row;
}

Dataset run_sweep(const SweepSpec& spec, int workers) {
  validate(spec);
  const std::vector<double> xs = spec.range.grid();
  Dataset data;
  data.xlabel = spec.axis == Axis::ds ? "k_P d_s" : "k_P d";
  data.ylabel = spec.quantity.str();
  data.xscale = spec.range.spacing;
  data.rows.resize(xs.size());
  parallel_for(xs.size(), workers, [&](std::size_t i) {
    Geometry g = spec.fixed;
    if (spec.axis == Axis::ds) g.ds = xs[i];
    else g.gap1 = g.gap2 = xs[i];
    data.rows[i] = evaluate_row(spec.quantity.str(), xs[i], spec.quantity, g, spec.tolerances);
  });
  return data;
}

}  // namespace casimir::cli
