#include "leu/permmat.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace leu {

std::size_t DiagIdem::count() const { return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), true)); }

std::vector<std::size_t> DiagIdem::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < mask_.size(); ++i)
    if (mask_[i]) out.push_back(i);
  return out;
}

DiagIdem DiagIdem::head(std::size_t k) const {
  return DiagIdem(std::vector<bool>(mask_.begin(), mask_.begin() + static_cast<std::ptrdiff_t>(k)));
}

DiagIdem DiagIdem::tail(std::size_t k) const {
  return DiagIdem(std::vector<bool>(mask_.end() - static_cast<std::ptrdiff_t>(k), mask_.end()));
}

DiagIdem diag_complement(const DiagIdem& d) {
  DiagIdem out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out.set(i, !d[i]);
  return out;
}

DiagIdem diag_meet(const DiagIdem& a, const DiagIdem& b) {
  detail::require_conformal(a.size(), b.size(), "diag_meet");
  DiagIdem out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.set(i, a[i] && b[i]);
  return out;
}

bool diag_leq(const DiagIdem& a, const DiagIdem& b) {
  detail::require_conformal(a.size(), b.size(), "diag_leq");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

TruncPerm::TruncPerm(std::size_t n, std::vector<Position> ones) : n_(n), ones_(std::move(ones)) {
  std::sort(ones_.begin(), ones_.end());
  for (std::size_t k = 0; k < ones_.size(); ++k) {
    if (ones_[k].row >= n_ || ones_[k].col >= n_) throw std::invalid_argument("TruncPerm: position out of range");
    if (k > 0 && ones_[k].row == ones_[k - 1].row) throw std::invalid_argument("TruncPerm: two ones in one row");
  }
  by_col_.resize(ones_.size());
  for (std::size_t k = 0; k < ones_.size(); ++k) by_col_[k] = k;
  std::sort(by_col_.begin(), by_col_.end(), [&](std::size_t x, std::size_t y) { return ones_[x].col < ones_[y].col; });
  for (std::size_t k = 1; k < by_col_.size(); ++k) {
    if (ones_[by_col_[k]].col == ones_[by_col_[k - 1]].col) {
      throw std::invalid_argument("TruncPerm: two ones in one column");
    }
  }
}

TruncPerm TruncPerm::identity(std::size_t n) {
  std::vector<Position> ones(n);
  for (std::size_t i = 0; i < n; ++i) ones[i] = {i, i};
  return TruncPerm(n, std::move(ones));
}

std::optional<std::size_t> TruncPerm::col_of_row(std::size_t row) const {
  auto it = std::lower_bound(ones_.begin(), ones_.end(), row, [](const Position& p, std::size_t r) { return p.row < r; });
  if (it == ones_.end() || it->row != row) return std::nullopt;
  return it->col;
}

std::optional<std::size_t> TruncPerm::row_of_col(std::size_t col) const {
  auto it = std::lower_bound(by_col_.begin(), by_col_.end(), col,
                             [&](std::size_t k, std::size_t c) { return ones_[k].col < c; });
  if (it == by_col_.end() || ones_[*it].col != col) return std::nullopt;
  return ones_[*it].row;
}

TruncPerm reversal_perm(std::size_t n) {
  if (n == 0) throw std::invalid_argument("reversal_perm: n must be at least 1");
  std::vector<Position> ones(n);
  for (std::size_t i = 0; i < n; ++i) ones[i] = {i, n - 1 - i};
  return TruncPerm(n, std::move(ones));
}

TruncPerm tp_transpose(const TruncPerm& e) {
  std::vector<Position> ones;
  ones.reserve(e.rank());
  for (const auto& p : e.ones()) ones.push_back({p.col, p.row});
  return TruncPerm(e.size(), std::move(ones));
}

TruncPerm tp_complement(const TruncPerm& e) {
  const auto rows = diag_complement(tp_row_support(e)).indices();
  const auto cols = diag_complement(tp_col_support(e)).indices();
  std::vector<Position> ones;
  ones.reserve(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) ones.push_back({rows[k], cols[k]});
  return TruncPerm(e.size(), std::move(ones));
}

DiagIdem tp_row_support(const TruncPerm& e) {
  DiagIdem d(e.size());
  for (const auto& p : e.ones()) d.set(p.row, true);
  return d;
}

DiagIdem tp_col_support(const TruncPerm& e) {
  DiagIdem d(e.size());
  for (const auto& p : e.ones()) d.set(p.col, true);
  return d;
}

TruncPerm tp_disjoint_sum(const TruncPerm& a, const TruncPerm& b) {
  detail::require_conformal(a.size(), b.size(), "tp_disjoint_sum");
  std::vector<Position> ones(a.ones().begin(), a.ones().end());
  ones.insert(ones.end(), b.ones().begin(), b.ones().end());
  return TruncPerm(a.size(), std::move(ones));  // the constructor rejects overlaps
}

TruncPerm tp_product(const TruncPerm& p, const TruncPerm& q) {
  detail::require_conformal(p.size(), q.size(), "tp_product");
  std::vector<Position> ones;
  for (const auto& x : p.ones()) {
    if (auto c = q.col_of_row(x.col)) ones.push_back({x.row, *c});
  }
  return TruncPerm(p.size(), std::move(ones));
}

TruncPerm tp_assemble4(const TruncPerm& e11, const TruncPerm& e12, const TruncPerm& e21, const TruncPerm& e22) {
  const std::size_t h = e11.size();
  if (e12.size() != h || e21.size() != h || e22.size() != h) throw DimensionError("tp_assemble4: unequal blocks");
  std::vector<Position> ones;
  ones.reserve(e11.rank() + e12.rank() + e21.rank() + e22.rank());
  for (const auto& p : e11.ones()) ones.push_back(p);
  for (const auto& p : e12.ones()) ones.push_back({p.row, p.col + h});
  for (const auto& p : e21.ones()) ones.push_back({p.row + h, p.col});
  for (const auto& p : e22.ones()) ones.push_back({p.row + h, p.col + h});
  return TruncPerm(2 * h, std::move(ones));
}

TruncPerm tp_truncate(const TruncPerm& e, std::size_t k) {
  if (k > e.size()) throw DimensionError("tp_truncate: target larger than source");
  for (const auto& p : e.ones()) {
    if (p.row >= k || p.col >= k) throw ContractViolation("tp_truncate: a one lies outside the kept corner");
  }
  return TruncPerm(k, std::vector<Position>(e.ones().begin(), e.ones().end()));
}

std::string format_perm(const TruncPerm& e) {
  std::ostringstream out;
  out << "perm n=" << e.size() << " ones=";
  bool first = true;
  for (const auto& p : e.ones()) {
    if (!first) out << ';';
    out << '(' << p.row << ',' << p.col << ')';
    first = false;
  }
  return out.str();
}

namespace {

std::size_t take_number(std::string_view& s) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr == s.data()) throw ParseError("expected a number in permutation text");
  s.remove_prefix(static_cast<std::size_t>(ptr - s.data()));
  return v;
}

void expect(std::string_view& s, std::string_view lit) {
  if (s.substr(0, lit.size()) != lit) throw ParseError("expected '" + std::string(lit) + "' in permutation text");
  s.remove_prefix(lit.size());
}

}  // namespace

TruncPerm parse_perm(std::string_view text) {
  std::string_view s = text;
  expect(s, "perm n=");
  const std::size_t n = take_number(s);
  expect(s, " ones=");
  std::vector<Position> ones;
  while (!s.empty()) {
    if (!ones.empty()) expect(s, ";");
    expect(s, "(");
    const std::size_t i = take_number(s);
    expect(s, ",");
    const std::size_t j = take_number(s);
    expect(s, ")");
    ones.push_back({i, j});
  }
  try {
    return TruncPerm(n, std::move(ones));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

}  // namespace leu
