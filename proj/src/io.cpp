#include "btv/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "btv/errors.hpp"

namespace btv {

namespace {

std::vector<double> parse_number_array(const nlohmann::json& node,
                                       const std::string& field) {
  if (!node.is_array()) {
    throw ParseError("field \"" + field + "\" must be an array of numbers");
  }
  std::vector<double> out;
  out.reserve(node.size());
  for (std::size_t i = 0; i < node.size(); ++i) {
    if (!node[i].is_number()) {
      throw ParseError("field \"" + field + "[" + std::to_string(i) +
                       "]\" is not a number");
    }
    out.push_back(node[i].get<double>());
  }
  return out;
}

InputDocument parse_structured(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed input document: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ParseError("input document must be an object with fields \"p\" "
                     "and \"q\"");
  }
  InputDocument out;
  bool have_p = false;
  bool have_q = false;
  for (const auto& [key, value] : doc.items()) {
    if (key == "p") {
      out.p = parse_number_array(value, "p");
      have_p = true;
    } else if (key == "q") {
      out.q = parse_number_array(value, "q");
      have_q = true;
    } else if (key == "label") {
      if (!value.is_string()) {
        throw ParseError("field \"label\" must be a string");
      }
      out.label = value.get<std::string>();
    } else {
      throw ParseError("unknown field \"" + key + "\"");
    }
  }
  if (!have_p) {
    throw ParseError("missing field \"p\"");
  }
  if (!have_q) {
    throw ParseError("missing field \"q\"");
  }
  return out;
}

std::vector<double> parse_csv_row(const std::string& line,
                                  const std::string& field) {
  std::vector<double> out;
  std::size_t start = 0;
  std::size_t index = 0;
  while (start <= line.size()) {
    std::size_t end = line.find(',', start);
    if (end == std::string::npos) {
      end = line.size();
    }
    std::size_t lo = start;
    std::size_t hi = end;
    while (lo < hi && std::isspace(static_cast<unsigned char>(line[lo]))) {
      ++lo;
    }
    while (hi > lo && std::isspace(static_cast<unsigned char>(line[hi - 1]))) {
      --hi;
    }
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(line.data() + lo, line.data() + hi, value);
    if (ec != std::errc() || ptr != line.data() + hi || lo == hi) {
      throw ParseError("field \"" + field + "[" + std::to_string(index) +
                       "]\" is not a number: \"" + line.substr(lo, hi - lo) +
                       "\"");
    }
    out.push_back(value);
    ++index;
    start = end + 1;
    if (end == line.size()) {
      break;
    }
  }
  return out;
}

InputDocument parse_csv(const std::string& text) {
  std::vector<std::string> rows;
  std::istringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) {
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    const bool blank =
        line.find_first_not_of(" \t") == std::string::npos;
    if (!blank) {
      rows.push_back(line);
    }
  }
  if (rows.size() != 2) {
    throw ParseError("CSV input must have exactly two rows (p then q), got " +
                     std::to_string(rows.size()));
  }
  InputDocument out;
  out.p = parse_csv_row(rows[0], "p");
  out.q = parse_csv_row(rows[1], "q");
  return out;
}

void validate_entries(const std::vector<double>& v, const std::string& field) {
  if (v.empty()) {
    throw ParseError("field \"" + field + "\" must be non-empty");
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] >= 0.0 && v[i] <= 1.0)) {
      throw ParseError("field \"" + field + "[" + std::to_string(i) +
                       "]\" = " + format_double(v[i]) +
                       " is outside [0,1]");
    }
  }
}

}  // namespace

InputDocument parse_input_document(const std::string& text) {
  for (const char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      continue;
    }
    return c == '{' ? parse_structured(text) : parse_csv(text);
  }
  throw ParseError("input document is empty");
}

InputDocument load_input_document(const std::string& path) {
  std::string text;
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    text = buffer.str();
  } else {
    std::ifstream file(path, std::ios::binary);
    if (!file) {
      throw ParseError("cannot open input file: " + path);
    }
    std::ostringstream buffer;
    buffer << file.rdbuf();
    text = buffer.str();
  }
  return parse_input_document(text);
}

ParamPair to_param_pair(const InputDocument& doc) {
  validate_entries(doc.p, "p");
  validate_entries(doc.q, "q");
  if (doc.p.size() != doc.q.size()) {
    throw ParseError("fields \"p\" (length " + std::to_string(doc.p.size()) +
                     ") and \"q\" (length " + std::to_string(doc.q.size()) +
                     ") differ in length");
  }
  return ParamPair(ParamVec(doc.p), ParamVec(doc.q));
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace btv
