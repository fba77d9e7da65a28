#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "casimir/cli.hpp"
#include "internal.hpp"

namespace casimir::cli {

namespace {

constexpr std::string_view kHeader = "curve,x,y,y_abs,error,formula,status";

std::string number(double v) {
  if (std::isnan(v)) return "nan";
  return format("%.11e", v);
}

std::string_view spacing_name(Spacing s) { return s == Spacing::log ? "log" : "lin"; }

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

double parse_double(std::string_view s, std::size_t line, const char* column) {
  if (s == "nan") return std::nan("");
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size())
    throw ParseError(line, std::string("bad number in column '") + column + "': '" + std::string(s) + "'");
  return v;
}

Spacing parse_spacing(std::string_view s, std::size_t line) {
  if (s == "log") return Spacing::log;
  if (s == "lin") return Spacing::lin;
  throw ParseError(line, "axis scale must be log or lin");
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.remove_suffix(1);
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  return s;
}

}  // namespace

std::string format(const char* fmt, ...) {
  va_list args;
  va_start(args, fmt);
  va_list copy;
  va_copy(copy, args);
  const int n = std::vsnprintf(nullptr, 0, fmt, copy);
  va_end(copy);
  std::string out(static_cast<std::size_t>(n), '\0');
  std::vsnprintf(out.data(), out.size() + 1, fmt, args);
  va_end(args);
  return out;
}

ParseError::ParseError(std::size_t line_no, const std::string& what)
    : std::runtime_error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}

std::string to_csv(const Dataset& data) {
  std::string out;
  out += "# command: " + data.command + "\n";
  out += "# xlabel: " + data.xlabel + "\n";
  out += "# ylabel: " + data.ylabel + "\n";
  out += "# xscale: " + std::string(spacing_name(data.xscale)) + "\n";
  out += "# yscale: " + std::string(spacing_name(data.yscale)) + "\n";
  out += kHeader;
  out += "\n";
  for (const Row& r : data.rows) {
    out += r.curve + "," + number(r.x) + "," + number(r.y) + "," + number(r.y_abs) + "," + number(r.error) + "," +
           r.formula + "," + r.status + "\n";
  }
  return out;
}

Dataset parse_csv(std::string_view text) {
  Dataset data;
  bool header = false;
  std::size_t line_no = 0;
  for (std::string_view raw : split(text, '\n')) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      const std::string_view body = trim(line.substr(1));
      const auto colon = body.find(':');
      if (colon == std::string_view::npos) continue;
      const std::string_view key = trim(body.substr(0, colon));
      const std::string value(trim(body.substr(colon + 1)));
      if (key == "command") data.command = value;
      else if (key == "xlabel") data.xlabel = value;
      else if (key == "ylabel") data.ylabel = value;
      else if (key == "xscale") data.xscale = parse_spacing(value, line_no);
      else if (key == "yscale") data.yscale = parse_spacing(value, line_no);
      continue;
    }
    if (!header) {
      if (line != kHeader) throw ParseError(line_no, "expected header '" + std::string(kHeader) + "'");
      header = true;
      continue;
    }
    const std::vector<std::string_view> f = split(line, ',');
    if (f.size() != 7) throw ParseError(line_no, "expected 7 fields, found " + std::to_string(f.size()));
    if (f[0].empty()) throw ParseError(line_no, "empty curve name");
    Row r;
    r.curve = f[0];
    r.x = parse_double(f[1], line_no, "x");
    r.y = parse_double(f[2], line_no, "y");
    r.y_abs = parse_double(f[3], line_no, "y_abs");
    r.error = parse_double(f[4], line_no, "error");
    r.formula = f[5];
    r.status = f[6];
    data.rows.push_back(std::move(r));
  }
  if (!header) throw ParseError(line_no == 0 ? 1 : line_no, "no header row");
  return data;
}

}  // namespace casimir::cli
