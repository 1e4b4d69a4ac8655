#pragma once

// The algebra file format and atomic file output.
//
// {
//   "format": "clonealg-algebra/1",
//   "convention": "row-major, leftmost argument most significant",
//   "name": "nand",
//   "universe": ["0", "1"],
//   "operations": [{"name": "nand", "arity": 2, "table": ["1", "1", "1", "0"]}]
// }

#include <string>
#include <string_view>

#include "clonealg/clone_engine.hpp"

namespace clonealg {

  inline constexpr char const* kAlgebraFormat     = "clonealg-algebra/1";
  inline constexpr char const* kAlgebraConvention = "row-major, leftmost argument most significant";

  // Throws ParseError carrying the line for syntax errors and the field path
  // for structural ones; table and universe problems name the operation.
  FinAlgebra parse_algebra_text(std::string_view text, std::string const& origin = "<input>");
  FinAlgebra parse_algebra(std::string const& path);

  std::string serialize_algebra(FinAlgebra const& a);

  // Writes through a temporary file in the same directory and renames it.
  void write_atomic(std::string const& path, std::string const& content);

}  // namespace clonealg
