#pragma once

// Text and JSON encodings of a grid.
//
//   #PDA v1
//   K=<int> F=<int> Z=<int|-> S=<int>
//   F lines of K single-space separated tokens, each `*` or a symbol
//
// The renderer is canonical; the parser accepts any whitespace between
// tokens and ignores blank lines between rows.

#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "pda/grid.hpp"

namespace pda {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string render(const Grid& g);

/// Throws ParseError on a malformed header, wrong row or token counts, an
/// out-of-range symbol, or a declared Z that some column does not meet.
Grid parse(std::istream& in);
Grid parse(std::string_view text);

/// {k, f, z, s, rows}; z is null for irregular grids and stars are "*".
nlohmann::json to_json(const Grid& g);
Grid from_json(const nlohmann::json& j);

}  // namespace pda
