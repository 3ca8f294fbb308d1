#pragma once

#include <istream>
#include <string>
#include <string_view>

#include "elproof/syntax.hpp"

namespace elproof {

/// Parses a line-oriented `.elt` document: one axiom per line, `#` starts a
/// comment, blank lines are skipped. Throws ParseError.
TBox parse_tbox(std::string_view text);
TBox parse_tbox(std::istream& in);
TBox load_tbox(const std::string& path);

/// Parses exactly one axiom (surrounding whitespace and comments allowed).
Axiom parse_axiom(std::string_view text);

Concept parse_concept(std::string_view text);

}  // namespace elproof
