#pragma once

// Matrix text format:
//
//   field gfp <p>      or   field rational
//   rows <r>
//   cols <c>
//   r lines of c whitespace-separated scalars
//
// GF(p) scalars are decimal residues in [0, p); rationals are `n` or `n/d`
// with an optional leading `-`.

#include <iosfwd>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>

#include "leu/matrix.hpp"

namespace leu {

using AnyMatrix = std::variant<Matrix<PrimeField>, Matrix<RationalField>>;

/// `gfp <p>`, `gfp:<p>` or `rational`.
FieldSpec parse_field_spec(std::string_view text);

/// Read one matrix section from the stream, consuming exactly its 3 + rows
/// lines. With an override, every entry is read as a rational and mapped into
/// the override field, whatever the header says.
AnyMatrix read_matrix(std::istream& in, const std::optional<FieldSpec>& override_field = std::nullopt);

/// Parse a complete document holding exactly one matrix. Anything but
/// whitespace after the last row is an error.
AnyMatrix parse_matrix(std::string_view text, const std::optional<FieldSpec>& override_field = std::nullopt);

template <ExactField F>
void write_matrix(std::ostream& out, const Matrix<F>& m) {
  out << "field " << m.field().spec().to_string() << '\n';
  out << "rows " << m.rows() << '\n';
  out << "cols " << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ' ';
      out << m.field().format(m(i, j));
    }
    out << '\n';
  }
}

template <ExactField F>
std::string format_matrix(const Matrix<F>& m) {
  std::ostringstream out;
  write_matrix(out, m);
  return out.str();
}

/// parse_matrix, requiring the field type F.
template <ExactField F>
Matrix<F> parse_matrix_as(std::string_view text) {
  auto any = parse_matrix(text);
  if (auto* m = std::get_if<Matrix<F>>(&any)) return std::move(*m);
  throw FieldMismatch("matrix text is over a different field");
}

}  // namespace leu
