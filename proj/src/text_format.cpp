#include "leu/text_format.hpp"

#include <charconv>
#include <istream>
#include <vector>

namespace leu {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::uint64_t parse_count(std::string_view token, const char* what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(std::string("invalid ") + what + " '" + std::string(token) + "'");
  }
  return v;
}

std::string next_line(std::istream& in, std::size_t& line_no, const char* expecting) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("unexpected end of input, expected " + std::string(expecting));
  ++line_no;
  return line;
}

std::size_t header_value(std::istream& in, std::size_t& line_no, const char* key) {
  const auto line = next_line(in, line_no, key);
  const auto tokens = split_ws(line);
  if (tokens.size() != 2 || tokens[0] != key) {
    throw ParseError("line " + std::to_string(line_no) + ": expected '" + key + " <count>'");
  }
  return static_cast<std::size_t>(parse_count(tokens[1], key));
}

template <ExactField F>
Matrix<F> read_entries(std::istream& in, std::size_t& line_no, const F& field, std::size_t rows, std::size_t cols,
                       bool via_rational) {
  Matrix<F> m(field, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto line = next_line(in, line_no, "a matrix row");
    const auto tokens = split_ws(line);
    if (tokens.size() != cols) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(cols) + " entries, found " +
                       std::to_string(tokens.size()));
    }
    for (std::size_t j = 0; j < cols; ++j) {
      try {
        m(i, j) = via_rational ? field.from_rational(parse_rational(tokens[j])) : field.parse(tokens[j]);
      } catch (const ParseError& e) {
        throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
      } catch (const DivisionByZero&) {
        throw ParseError("line " + std::to_string(line_no) + ": entry has no image in the target field");
      }
    }
  }
  return m;
}

}  // namespace

FieldSpec parse_field_spec(std::string_view text) {
  auto normalized = std::string(text);
  for (auto& ch : normalized)
    if (ch == ':') ch = ' ';
  const auto tokens = split_ws(normalized);
  if (tokens.size() == 1 && tokens[0] == "rational") return FieldSpec::rational();
  if (tokens.size() == 2 && tokens[0] == "gfp") {
    const auto p = parse_count(tokens[1], "modulus");
    if (!is_prime_u64(p)) throw ParseError("modulus " + std::to_string(p) + " is not prime");
    return FieldSpec{FieldKind::PrimeField, p};
  }
  throw ParseError("invalid field '" + std::string(text) + "', expected 'gfp <p>' or 'rational'");
}

AnyMatrix read_matrix(std::istream& in, const std::optional<FieldSpec>& override_field) {
  std::size_t line_no = 0;
  const auto field_line = next_line(in, line_no, "'field ...'");
  const auto tokens = split_ws(field_line);
  if (tokens.empty() || tokens[0] != "field") throw ParseError("line 1: expected 'field gfp <p>' or 'field rational'");
  std::string rest;
  for (std::size_t k = 1; k < tokens.size(); ++k) {
    if (k > 1) rest += ' ';
    rest += tokens[k];
  }
  const FieldSpec declared = parse_field_spec(rest);
  if (rest.find(':') != std::string::npos) throw ParseError("line 1: malformed field line");

  const std::size_t rows = header_value(in, line_no, "rows");
  const std::size_t cols = header_value(in, line_no, "cols");

  const FieldSpec spec = override_field.value_or(declared);
  const bool via_rational = override_field.has_value();
  if (spec.kind == FieldKind::PrimeField) {
    return read_entries(in, line_no, PrimeField(spec.modulus), rows, cols, via_rational);
  }
  return read_entries(in, line_no, RationalField{}, rows, cols, via_rational);
}

AnyMatrix parse_matrix(std::string_view text, const std::optional<FieldSpec>& override_field) {
  std::istringstream in{std::string(text)};
  auto m = read_matrix(in, override_field);
  std::string trailing;
  while (std::getline(in, trailing)) {
    if (!split_ws(trailing).empty()) throw ParseError("trailing content after matrix: '" + trailing + "'");
  }
  return m;
}

}  // namespace leu
