#pragma once

// Text formats: series as {"type":"cos"|"sin","coeffs":[...]} or two-column
// CSV (index,amplitude); branch points as one JSON object per line; contours
// as CSV (x,z1,z2) or JSON.

#include <string>
#include <variant>

#include "vstate/dynamics.hpp"
#include "vstate/linearized.hpp"
#include "vstate/quadrature.hpp"
#include "vstate/solver.hpp"

namespace vstate::io {

std::string to_json(const CosineSeries& s);
std::string to_json(const SineSeries& s);
std::string to_csv(const CosineSeries& s);
std::string to_csv(const SineSeries& s);

// Throws PreconditionError on malformed input or a type mismatch.
std::variant<CosineSeries, SineSeries> series_from_json(const std::string& text);
CosineSeries cosine_from_csv(const std::string& text);
SineSeries sine_from_csv(const std::string& text);

// One line, no trailing newline. Infinite decay rates are written as null.
std::string to_json(const BranchPoint& p);
BranchPoint branch_point_from_json(const std::string& line);

std::string to_json(const KernelGenerator& g, std::size_t n_modes);
std::string tri_coeffs_csv(const TriDiagonalDF& df);
std::string oracle_table_csv(const std::vector<OracleRow>& rows);

std::string to_csv(const Contour& c);
std::string to_json(const Contour& c);
Contour contour_from_csv(const std::string& text);

std::string to_json(const StepDiagnostics& d);

// Shortest representation that reads back to the same double.
std::string format_double(double v);

}  // namespace vstate::io
