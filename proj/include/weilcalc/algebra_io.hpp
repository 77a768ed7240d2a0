#pragma once

#include <string>

#include "json.hpp"
#include "weilcalc/algebra.hpp"
#include "weilcalc/element.hpp"

namespace weilcalc {

// {"name", "dim", "basis", "unit_index", "structure": [[i, j, k, c]...],
//  "width", "height"}. Coefficients load from numbers, decimal strings or
// "p/q" strings; they are saved as JSON numbers, which round-trip exactly.
// Width and height are recomputed on load; a stored integer that disagrees
// is an error, null or "unspecified" is accepted.

nlohmann::json to_json(const WeilAlgebra& a);
/// Throws ParseError with a JSON-path location, or InvalidAlgebra naming
/// the violating basis triple.
AlgebraRef algebra_from_json(const nlohmann::json& j);

/// Constructor expressions: reals, dual, truncated(k,r), tensor(X,Y),
/// sum(X,Y), S().
AlgebraRef parse_algebra_expr(const std::string& text);

/// A file path if one exists, else a constructor expression.
AlgebraRef load_algebra(const std::string& file_or_expr);

/// Reads a whole JSON file; ParseError carries the path and byte offset.
nlohmann::json read_json_file(const std::string& path);

/// Printable table: basis, products of the non-unit basis pairs, width, height.
std::string describe(const WeilAlgebra& a);

nlohmann::json to_json(const AlgebraElement& a);
AlgebraElement element_from_json(const AlgebraRef& algebra, const nlohmann::json& j);

}  // namespace weilcalc
