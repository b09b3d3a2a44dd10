#pragma once

#include <string>
#include <vector>

#include "btv/core.hpp"

namespace btv {

/// A parsed pair-of-vectors input: structured document with fields "p",
/// "q", optional "label", or the two-row CSV alternative.
struct InputDocument {
  std::vector<double> p;
  std::vector<double> q;
  std::string label;  // empty when absent
};

/// Parse from text. A first non-whitespace '{' selects the structured
/// form; anything else is treated as two CSV rows (p then q). Throws
/// ParseError naming the offending field.
InputDocument parse_input_document(const std::string& text);

/// Read a file and parse it; "-" reads standard input.
InputDocument load_input_document(const std::string& path);

/// Validate entries (finite, in [0,1], equal lengths) and build the pair.
/// Throws ParseError naming the offending field.
ParamPair to_param_pair(const InputDocument& doc);

/// Shortest decimal representation that parses back to exactly the same
/// double; locale-independent.
std::string format_double(double v);

}  // namespace btv
