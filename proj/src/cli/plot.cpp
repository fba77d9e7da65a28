#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "casimir/cli.hpp"
#include "internal.hpp"

namespace casimir::cli {

namespace {

constexpr double kWidth = 760, kHeight = 480;
constexpr double kLeft = 80, kRight = 560, kTop = 30, kBottom = 420;
constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b"};

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct PlotAxis {
  Spacing scale;
  double lo, hi;  // in plotted coordinates (log10 for log axes)
  double px0, px1;

  double map(double v) const {
    const double t = scale == Spacing::log ? std::log10(v) : v;
    return px0 + (t - lo) / (hi - lo) * (px1 - px0);
  }
  bool accepts(double v) const { return std::isfinite(v) && (scale == Spacing::lin || v > 0.0); }
};

PlotAxis make_axis(Spacing scale, double vmin, double vmax, double px0, double px1) {
  PlotAxis a{scale, 0.0, 1.0, px0, px1};
  if (scale == Spacing::log) {
    a.lo = std::floor(std::log10(vmin));
    a.hi = std::ceil(std::log10(vmax));
    if (a.hi == a.lo) a.hi += 1.0;
  } else {
    const double pad = vmax > vmin ? 0.05 * (vmax - vmin) : std::max(1.0, std::abs(vmin)) * 0.5;
    a.lo = vmin - pad;
    a.hi = vmax + pad;
  }
  return a;
}

// Tick positions in data units.
std::vector<double> ticks(const PlotAxis& a) {
  std::vector<double> out;
  if (a.scale == Spacing::log) {
    for (double e = a.lo; e <= a.hi + 1e-9; e += 1.0) out.push_back(std::pow(10.0, e));
    return out;
  }
  const double raw = (a.hi - a.lo) / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (m * mag >= raw) {
      step = m * mag;
      break;
    }
  for (double t = std::ceil(a.lo / step) * step; t <= a.hi + 1e-12 * step; t += step)
    out.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
  return out;
}

}  // namespace

std::string render_svg(const Dataset& data) {
  std::vector<std::string> curves;
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  const PlotAxis probe_x{data.xscale, 0, 1, 0, 1}, probe_y{data.yscale, 0, 1, 0, 1};
  for (const Row& r : data.rows) {
    if (std::find(curves.begin(), curves.end(), r.curve) == curves.end()) curves.push_back(r.curve);
    if (r.failed() || !probe_x.accepts(r.x) || !probe_y.accepts(r.y)) continue;
    xmin = std::min(xmin, r.x);
    xmax = std::max(xmax, r.x);
    ymin = std::min(ymin, r.y);
    ymax = std::max(ymax, r.y);
  }
  if (!(xmin <= xmax)) throw std::runtime_error("plot: no plottable points");
  const PlotAxis ax = make_axis(data.xscale, xmin, xmax, kLeft, kRight);
  const PlotAxis ay = make_axis(data.yscale, ymin, ymax, kBottom, kTop);

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << format("<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" fill=\"none\" stroke=\"black\"/>\n", kLeft,
              kTop, kRight - kLeft, kBottom - kTop);
  for (double t : ticks(ax)) {
    const double px = ax.map(t);
    s << format("<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"#ddd\"/>\n", px, kTop, px, kBottom);
    s << format("<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\">%g</text>\n", px, kBottom + 16, t);
  }
  for (double t : ticks(ay)) {
    const double py = ay.map(t);
    s << format("<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"#ddd\"/>\n", kLeft, py, kRight, py);
    s << format("<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"end\">%g</text>\n", kLeft - 6, py + 4, t);
  }
  s << format("<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\">%s</text>\n", 0.5 * (kLeft + kRight),
              kBottom + 40, escape(data.xlabel).c_str());
  s << format("<text x=\"20\" y=\"%.2f\" text-anchor=\"middle\" transform=\"rotate(-90 20 %.2f)\">%s</text>\n",
              0.5 * (kTop + kBottom), 0.5 * (kTop + kBottom), escape(data.ylabel).c_str());

  for (std::size_t c = 0; c < curves.size(); ++c) {
    const char* color = kColors[c % std::size(kColors)];
    std::string points;
    for (const Row& r : data.rows) {
      if (r.curve != curves[c] || r.failed() || !ax.accepts(r.x) || !ay.accepts(r.y)) continue;
      if (!points.empty()) points += ' ';
      points += format("%.2f,%.2f", ax.map(r.x), ay.map(r.y));
    }
    s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"" << points
      << "\"/>\n";
    const double ly = kTop + 10 + 18 * double(c);
    s << format("<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"%s\" stroke-width=\"2\"/>\n",
                kRight + 15, ly, kRight + 40, ly, color);
    s << format("<text x=\"%.2f\" y=\"%.2f\">%s</text>\n", kRight + 46, ly + 4, escape(curves[c]).c_str());
  }
  s << "</svg>\n";
  return s.str();
}

void emit_plot(const std::string& csv_path, const std::string& svg_path) {
  std::ifstream in(csv_path, std::ios::binary);
  if (!in) throw std::runtime_error("plot: cannot read " + csv_path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const Dataset data = parse_csv(buf.str());
  if (data.rows.empty()) throw std::runtime_error("plot: " + csv_path + " holds no data rows");
  const std::string svg = render_svg(data);
  std::ofstream out(svg_path, std::ios::binary);
  if (!out) throw std::runtime_error("plot: cannot write " + svg_path);
  out << svg;
  if (!out) throw std::runtime_error("plot: write to " + svg_path + " failed");
}

}  // namespace casimir::cli
