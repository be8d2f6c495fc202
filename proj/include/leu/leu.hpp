#pragma once

// Pivot-free LEU decomposition: L * A * U = E with L lower triangular and
// nonsingular, U upper unitriangular and E a truncated permutation of rank
// rank(A).
//
// A 2^k x 2^k input is split into quadrants and decomposed through four
// half-size decompositions and exactly seventeen half-size dense products:
//
//   (L11,E11,U11) = LEU(A11)
//   Q  = L11 A12                      B  = A21 U11
//   A12' = (1-I11) Q                  A21' = B (1-J11)
//   A22' = A22 - (B E11^T) Q
//   (L12,E12,U12) = LEU(A12')         (L21,E21,U21) = LEU(A21')   independent
//   G  = L21 A22' U12                 A22'' = (1-I21) G (1-J12)
//   (L22,E22,U22) = LEU(A22'')
//   W  = (G E12^T) L12 + L21 (B E11^T)
//   V  = U21 (E21^T (G (1-J12))) + (E11^T Q) U12
//   L  = [L12 L11, 0; -L22 W L11, L22 L21]
//   U  = [U11 U21, -U11 V U22; 0, U12 U22]
//   E  = [E11 E12; E21 E22]
//
// where Iij = Eij Eij^T and Jij = Eij^T Eij mark the rows and columns used by
// each block of E. No step inspects the data to choose a pivot: the block
// structure is fixed by the size alone. Other sizes are zero-padded to the
// next power of two and the leading corner of the result is kept.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "leu/matrix.hpp"
#include "leu/multiply.hpp"
#include "leu/parallel.hpp"
#include "leu/permmat.hpp"
#include "leu/triangular.hpp"

namespace leu {

template <ExactField F>
struct LeuResult {
  Matrix<F> L;
  TruncPerm E;
  Matrix<F> U;
  MulCounter counter;  // work spent producing this result

  std::size_t rank() const { return E.rank(); }
};

/// Snapshot of one internal node of the recursion, for instrumentation.
struct LeuNodeInfo {
  std::size_t n = 0;  // input size at this node
  MulCounter own;     // products done at this node itself, children excluded
  TruncPerm e11, e12, e21, e22;
  DiagIdem row_mask{0}, col_mask{0};  // the (I, J) the node input was promised to satisfy
};

struct LeuOptions {
  MulPolicy mul;
  /// Return (1, 0, 1) for an all-zero block without recursing. Output-identical
  /// to the full recursion, but the seventeen products of every skipped node
  /// are not performed and therefore not counted.
  bool skip_zero_blocks = true;
  /// Check the immersion contract and L A U = E at every node (expensive).
  bool debug_checks = false;
  /// Called once per internal node after it completes. Calls are serialised.
  std::function<void(const LeuNodeInfo&)> on_node;
};

/// Sub-decompositions at least this large run as concurrent tasks under parallel execution.
inline constexpr std::size_t kLeuTaskMin = 16;

/// 1x1 case: LEU(0) = (1, 0, 1), LEU(a) = (1/a, 1, 1).
template <ExactField F>
LeuResult<F> leu_base(const F& field, const typename F::Element& a, MulCounter& counter) {
  Matrix<F> l = Matrix<F>::identity(field, 1);
  MulCounter used;
  TruncPerm e(1);
  if (!field.is_zero(a)) {
    l(0, 0) = field.inv(a);
    ++used.scalar_invs;
    e = TruncPerm::identity(1);
  }
  counter += used;
  return {std::move(l), std::move(e), Matrix<F>::identity(field, 1), used};
}

template <ExactField F>
LeuResult<F> leu_base(const Scalar<F>& a, MulCounter& counter) {
  return leu_base(a.field(), a.value(), counter);
}

namespace detail {

template <ExactField F>
struct LeuTriple {
  Matrix<F> l;
  TruncPerm e;
  Matrix<F> u;
};

/// True iff A = I A J, i.e. A vanishes outside the rows of I and the columns of J.
template <ExactField F>
bool is_ij_zero(const Matrix<F>& a, const DiagIdem& rows, const DiagIdem& cols) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if ((!rows[i] || !cols[j]) && !a.field().is_zero(a(i, j))) return false;
  return true;
}

/// L = (1 - I_E) + I L I_E and U = (1 - J_E) + J_E U J, plus I_E <= I, J_E <= J.
template <ExactField F>
bool satisfies_immersion(const Matrix<F>& l, const TruncPerm& e, const Matrix<F>& u, const DiagIdem& rows,
                         const DiagIdem& cols) {
  const auto ie = tp_row_support(e);
  const auto je = tp_col_support(e);
  if (!diag_leq(ie, rows) || !diag_leq(je, cols)) return false;
  const auto l_expected = add_diag(diag_apply_left(rows, diag_apply_right(l, ie)), diag_complement(ie));
  const auto u_expected = add_diag(diag_apply_left(je, diag_apply_right(u, cols)), diag_complement(je));
  return l == l_expected && u == u_expected;
}

template <ExactField F>
void check_node(const Matrix<F>& a, const LeuTriple<F>& r, const DiagIdem& rows, const DiagIdem& cols) {
  const std::string where = " at node of size " + std::to_string(a.rows());
  if (!is_lower_triangular(r.l) || !has_nonzero_diagonal(r.l)) throw ContractViolation("L not invertible lower triangular" + where);
  if (!is_upper_triangular(r.u) || !has_unit_diagonal(r.u)) throw ContractViolation("U not upper unitriangular" + where);
  if (!satisfies_immersion(r.l, r.e, r.u, rows, cols)) throw ContractViolation("immersion property violated" + where);
  MulCounter scratch;
  const auto lau = mat_mul_classical(mat_mul_classical(r.l, a, scratch), r.u, scratch);
  if (!(lau == tp_to_dense(r.e, a.field()))) throw ContractViolation("L A U != E" + where);
}

template <ExactField F>
LeuTriple<F> leu_node(const Matrix<F>& a, const DiagIdem& row_mask, const DiagIdem& col_mask, MulCounter& counter,
                      const LeuOptions& opt) {
  const F& f = a.field();
  const std::size_t n = a.rows();
  if (n == 1) {
    auto base = leu_base(f, a(0, 0), counter);
    return {std::move(base.L), std::move(base.E), std::move(base.U)};
  }
  if (opt.skip_zero_blocks && a.is_zero()) {
    return {Matrix<F>::identity(f, n), TruncPerm(n), Matrix<F>::identity(f, n)};
  }

  const std::size_t h = n / 2;
  const MulPolicy& mp = opt.mul;
  const auto [a11, a12, a21, a22] = split4(a);
  const auto rows1 = row_mask.head(h), rows2 = row_mask.tail(h);
  const auto cols1 = col_mask.head(h), cols2 = col_mask.tail(h);

  MulCounter own, c11, c12, c21, c22;

  const auto r11 = leu_node(a11, rows1, cols1, c11, opt);
  const auto free_rows11 = diag_complement(tp_row_support(r11.e));
  const auto free_cols11 = diag_complement(tp_col_support(r11.e));

  const auto q = multiply(r11.l, a12, own, mp);
  const auto b = multiply(a21, r11.u, own, mp);
  const auto a12_next = diag_apply_left(free_rows11, q);
  const auto a21_next = diag_apply_right(b, free_cols11);
  const auto b_e11t = tp_apply_right_transposed(b, r11.e);
  const auto a22_next = mat_sub(a22, multiply(b_e11t, q, own, mp));

  std::optional<LeuTriple<F>> r12, r21;
  parallel::run_pair(
      mp.exec == Execution::Parallel && h >= kLeuTaskMin,
      [&] { r12 = leu_node(a12_next, diag_meet(free_rows11, rows1), cols2, c12, opt); },
      [&] { r21 = leu_node(a21_next, rows2, diag_meet(free_cols11, cols1), c21, opt); });

  const auto free_rows21 = diag_complement(tp_row_support(r21->e));
  const auto free_cols12 = diag_complement(tp_col_support(r12->e));
  const auto g = multiply(multiply(r21->l, a22_next, own, mp), r12->u, own, mp);
  const auto g_free = diag_apply_right(g, free_cols12);
  const auto a22_last = diag_apply_left(free_rows21, g_free);

  const auto r22 = leu_node(a22_last, diag_meet(free_rows21, rows2), diag_meet(free_cols12, cols2), c22, opt);

  const auto w = mat_add(multiply(tp_apply_right_transposed(g, r12->e), r12->l, own, mp),
                         multiply(r21->l, b_e11t, own, mp));
  const auto v = mat_add(multiply(r21->u, tp_apply_left_transposed(r21->e, g_free), own, mp),
                         multiply(tp_apply_left_transposed(r11.e, q), r12->u, own, mp));

  Matrix<F> l(f, n, n);
  l.set_block(0, 0, multiply(r12->l, r11.l, own, mp));
  l.set_block(h, 0, mat_neg(multiply(multiply(r22.l, w, own, mp), r11.l, own, mp)));
  l.set_block(h, h, multiply(r22.l, r21->l, own, mp));

  Matrix<F> u(f, n, n);
  u.set_block(0, 0, multiply(r11.u, r21->u, own, mp));
  u.set_block(0, h, mat_neg(multiply(multiply(r11.u, v, own, mp), r22.u, own, mp)));
  u.set_block(h, h, multiply(r12->u, r22.u, own, mp));

  TruncPerm e;
  try {
    e = tp_assemble4(r11.e, r12->e, r21->e, r22.e);
  } catch (const std::invalid_argument& err) {
    throw ContractViolation(std::string("quadrants of E overlap: ") + err.what());
  }

  counter += c11;
  counter += c12;
  counter += c21;
  counter += c22;
  counter += own;

  LeuTriple<F> result{std::move(l), std::move(e), std::move(u)};
  if (opt.debug_checks) check_node(a, result, row_mask, col_mask);
  if (opt.on_node) {
    LeuNodeInfo info{n, own, r11.e, r12->e, r21->e, r22.e, row_mask, col_mask};
#pragma omp critical(leu_on_node)
    opt.on_node(info);
  }
  return result;
}

}  // namespace detail

/// LEU of a 2^k x 2^k matrix A that satisfies A = I A J. The result obeys the
/// immersion property relative to (I, J): I_E <= I, J_E <= J,
/// L = (1 - I_E) + I L I_E and U = (1 - J_E) + J_E U J.
template <ExactField F>
LeuResult<F> leu_pow2(const Matrix<F>& a, const DiagIdem& row_mask, const DiagIdem& col_mask, MulCounter& counter,
                      const LeuOptions& opt = {}) {
  if (!a.is_square() || !is_pow2(a.rows())) throw DimensionError("leu_pow2 needs a square power-of-two matrix");
  if (row_mask.size() != a.rows() || col_mask.size() != a.rows()) throw DimensionError("leu_pow2: mask size mismatch");
  if (!detail::is_ij_zero(a, row_mask, col_mask)) throw ContractViolation("leu_pow2: input is not (I,J)-zero");
  MulCounter used;
  auto r = detail::leu_node(a, row_mask, col_mask, used, opt);
  counter += used;
  return {std::move(r.l), std::move(r.e), std::move(r.u), used};
}

/// LEU of any nonempty square matrix, through zero padding to a power of two.
template <ExactField F>
LeuResult<F> leu_decompose(const Matrix<F>& a, MulCounter& counter, const LeuOptions& opt = {}) {
  if (!a.is_square()) {
    throw DimensionError("leu_decompose needs a square matrix, got " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()));
  }
  if (a.rows() == 0) throw DimensionError("leu_decompose needs a nonempty matrix");
  const std::size_t s = a.rows();
  const auto padded = pad_to_pow2(a);
  const std::size_t n = padded.rows();
  auto full = leu_pow2(padded, DiagIdem::identity(n), DiagIdem::identity(n), counter, opt);
  if (n == s) return full;

  // The padded product is diag(L, 1) diag(A, 0) diag(U, 1) = diag(E, 0).
  auto e = tp_truncate(full.E, s);
  if (opt.debug_checks) {
    const F& f = a.field();
    const auto identity_tail = Matrix<F>::identity(f, n - s);
    const Matrix<F> zero_corner(f, n - s, s);
    if (!(full.L.block(s, 0, n - s, s) == zero_corner) || !(full.L.block(s, s, n - s, n - s) == identity_tail) ||
        !(full.U.block(0, s, s, n - s) == Matrix<F>(f, s, n - s)) ||
        !(full.U.block(s, s, n - s, n - s) == identity_tail)) {
      throw ContractViolation("leu_decompose: padded factors are not block diagonal with identity tail");
    }
  }
  return {full.L.block(0, 0, s, s), std::move(e), full.U.block(0, 0, s, s), full.counter};
}

struct LeuCheck {
  std::string name;
  bool passed = false;
};

struct LeuReport {
  std::vector<LeuCheck> checks;

  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return !checks.empty();
  }
  bool passed(std::string_view name) const {
    for (const auto& c : checks)
      if (c.name == name) return c.passed;
    return false;
  }
};

/// Structural verification of an LEU result against its input. Never throws
/// on bad factors; each property is reported separately:
///   lower_triangular     L lower triangular with nonzero diagonal
///   upper_unitriangular  U upper triangular with unit diagonal
///   reconstruction       L A U = E
///   immersion            L = (1 - I_E) + L I_E and U = (1 - J_E) + J_E U
///   inverse_immersion    the same two identities for L^-1 and U^-1
template <ExactField F>
LeuReport leu_verify(const Matrix<F>& a, const LeuResult<F>& r) {
  LeuReport report;
  const std::size_t n = a.rows();
  const bool conformal = a.is_square() && r.L.rows() == n && r.L.cols() == n && r.U.rows() == n &&
                         r.U.cols() == n && r.E.size() == n && a.field() == r.L.field() &&
                         a.field() == r.U.field();
  const bool lower = conformal && is_lower_triangular(r.L) && has_nonzero_diagonal(r.L);
  const bool upper = conformal && is_upper_triangular(r.U) && has_unit_diagonal(r.U);
  report.checks.push_back({"lower_triangular", lower});
  report.checks.push_back({"upper_unitriangular", upper});

  if (!conformal) {
    report.checks.push_back({"reconstruction", false});
    report.checks.push_back({"immersion", false});
    report.checks.push_back({"inverse_immersion", false});
    return report;
  }

  const F& f = a.field();
  MulCounter scratch;
  const auto lau = mat_mul_classical(mat_mul_classical(r.L, a, scratch), r.U, scratch);
  report.checks.push_back({"reconstruction", lau == tp_to_dense(r.E, f)});

  const auto ie = tp_row_support(r.E);
  const auto je = tp_col_support(r.E);
  const auto free_rows = diag_complement(ie);
  const auto free_cols = diag_complement(je);
  const bool immersion = r.L == add_diag(diag_apply_right(r.L, ie), free_rows) &&
                         r.U == add_diag(diag_apply_left(je, r.U), free_cols);
  report.checks.push_back({"immersion", immersion});

  bool inverse_immersion = false;
  if (lower && upper) {
    const auto l_inv = invert_lower_triangular(r.L, scratch);
    const auto u_inv = invert_upper_unitriangular(r.U, scratch);
    inverse_immersion = l_inv == add_diag(diag_apply_right(l_inv, ie), free_rows) &&
                        u_inv == add_diag(diag_apply_left(je, u_inv), free_cols);
  }
  report.checks.push_back({"inverse_immersion", inverse_immersion});
  return report;
}

}  // namespace leu
