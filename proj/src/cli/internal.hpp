#pragma once

#include <string>

#include "casimir/cli.hpp"

namespace casimir::cli {

/// Evaluates one grid point; failures land in the row's status.
Row evaluate_row(const std::string& curve, double x, const QuantityExpr& q, const Geometry& g,
                 const quadrature::QuadratureSpec& tol);

/// printf-style formatting into a std::string.
std::string format(const char* fmt, ...) __attribute__((format(printf, 1, 2)));

}  // namespace casimir::cli
