// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "leu/derived.hpp"
#include "leu/random.hpp"
#include "leu/text_format.hpp"
#include "leu_oracle/gauss.hpp"

using namespace leu;
using oracle::gauss_rank;
using oracle::naive_product;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
};

class Tally {
 public:
  void check(bool ok, const std::string& what) {
    ++cases_;
    if (ok) return;
    ++failures_;
    if (first_failure_.empty()) first_failure_ = what;
  }
  std::size_t cases() const { return cases_; }
  std::size_t failures() const { return failures_; }
  const std::string& first_failure() const { return first_failure_; }

 private:
  std::size_t cases_ = 0;
  std::size_t failures_ = 0;
  std::string first_failure_;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(const char* format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

// ---------------------------------------------------------------------------
// Shared random case generation.

template <ExactField F>
Matrix<F> planted_rank(const F& f, std::size_t n, std::size_t rank, SplitMix64& rng) {
  return random_rank_matrix(f, n, rank, rng);
}

template <ExactField F>
bool is_nonsingular_lower(const Matrix<F>& l) {
  return is_lower_triangular(l) && has_nonzero_diagonal(l);
}

template <ExactField F>
bool is_unit_upper(const Matrix<F>& u) {
  return is_upper_triangular(u) && has_unit_diagonal(u);
}

bool ones_valid(const TruncPerm& e, std::size_t n) {
  if (e.size() != n || e.rank() > n) return false;
  std::vector<bool> row(n), col(n);
  for (const auto& p : e.ones()) {
    if (p.row >= n || p.col >= n || row[p.row] || col[p.col]) return false;
    row[p.row] = col[p.col] = true;
  }
  return true;
}

// ---------------------------------------------------------------------------
// 1 and 2: reconstruction and immersion on the same random cases.

struct ReconstructionTallies {
  Tally reconstruction;
  Tally immersion;
  double seconds = 0;
  std::size_t max_n = 0;
};

template <ExactField F>
void reconstruction_case(const F& f, std::size_t n, std::size_t rank, SplitMix64& rng, ReconstructionTallies& t) {
  const auto a = planted_rank(f, n, rank, rng);
  MulCounter c;
  const auto r = leu_decompose(a, c);
  const std::string tag = f.spec().to_string() + fmt(" n=%zu rank=%zu", n, rank);

  const bool structure = is_nonsingular_lower(r.L) && is_unit_upper(r.U) && ones_valid(r.E, n);
  const bool lau = naive_product(naive_product(r.L, a), r.U) == tp_to_dense(r.E, f);
  const bool rank_ok = r.rank() == gauss_rank(a);
  t.reconstruction.check(structure && lau && rank_ok, tag);

  const auto ie = tp_row_support(r.E), je = tp_col_support(r.E);
  const auto ie_bar = diag_complement(ie), je_bar = diag_complement(je);
  bool immersion = r.L == add_diag(diag_apply_right(r.L, ie), ie_bar) &&
                   r.U == add_diag(diag_apply_left(je, r.U), je_bar);
  if (structure) {
    MulCounter scratch;
    const auto li = invert_lower_triangular(r.L, scratch);
    const auto ui = invert_upper_unitriangular(r.U, scratch);
    immersion = immersion && naive_product(r.L, li) == Matrix<F>::identity(f, n) &&
                naive_product(r.U, ui) == Matrix<F>::identity(f, n) &&
                li == add_diag(diag_apply_right(li, ie), ie_bar) && ui == add_diag(diag_apply_left(je, ui), je_bar);
  } else {
    immersion = false;
  }
  t.immersion.check(immersion, tag);
}

ReconstructionTallies run_reconstruction_suite() {
  ReconstructionTallies t;
  const PrimeField gf7(7), gf65521(65521);
  const RationalField qq;
  SplitMix64 rng(0x5eed0001);
  const auto start = std::chrono::steady_clock::now();
  // 1200 cases: every size 1..48 appears for every field, the remaining cases
  // draw sizes at random (rationals up to 32, where entry growth keeps the
  // exact checks affordable). Ranks are uniform in 0..n.
  for (std::size_t i = 0; i < 1200; ++i) {
    const std::size_t field = i % 3;
    const std::size_t n = i < 144 ? 1 + i / 3 : 1 + rng.below(field == 2 ? 32 : 48);
    const std::size_t rank = rng.below(n + 1);
    t.max_n = std::max(t.max_n, n);
    if (field == 0) reconstruction_case(gf7, n, rank, rng, t);
    if (field == 1) reconstruction_case(gf65521, n, rank, rng, t);
    if (field == 2) reconstruction_case(qq, n, rank, rng, t);
  }
  t.seconds = seconds_since(start);
  return t;
}

// ---------------------------------------------------------------------------
// 3: oracle equivalence.

template <ExactField F>
void oracle_case(const F& f, std::size_t n, std::size_t rank, SplitMix64& rng, Tally& t) {
  const auto a = planted_rank(f, n, rank, rng);
  const std::string tag = f.spec().to_string() + fmt(" n=%zu rank=%zu", n, rank);
  MulCounter c;
  const std::size_t oracle_rank = gauss_rank(a);
  const bool rank_ok = mat_rank(a, c) == oracle_rank;

  const auto k = kernel_basis(a, c);
  const bool kernel_ok = k.rows() == n && k.cols() == n - oracle_rank && naive_product(a, k).is_zero() &&
                         gauss_rank(k) == k.cols() && oracle::gauss_kernel(a).cols() == k.cols();

  bool inverse_ok = false;
  if (oracle_rank == n) {
    const auto inv = mat_inverse(a, c);
    inverse_ok = inv == oracle::gauss_inverse(a) && naive_product(a, inv) == Matrix<F>::identity(f, n);
  } else {
    std::optional<std::size_t> ours, theirs;
    try {
      mat_inverse(a, c);
    } catch (const SingularError& e) {
      ours = e.rank();
    }
    try {
      oracle::gauss_inverse(a);
    } catch (const SingularError& e) {
      theirs = e.rank();
    }
    inverse_ok = ours && theirs && *ours == *theirs && *ours == oracle_rank;
  }
  t.check(rank_ok && kernel_ok && inverse_ok, tag);
}

Outcome criterion_oracle() {
  const PrimeField gf7(7), gf65521(65521);
  const RationalField qq;
  SplitMix64 rng(0x5eed0003);
  Tally t;
  std::size_t full_rank = 0;
  for (std::size_t i = 0; i < 600; ++i) {
    const std::size_t n = 1 + rng.below(32);
    const std::size_t rank = i % 2 == 0 ? n : rng.below(n + 1);
    full_rank += rank == n;
    if (i % 3 == 0) oracle_case(gf7, n, rank, rng, t);
    if (i % 3 == 1) oracle_case(gf65521, n, rank, rng, t);
    if (i % 3 == 2) oracle_case(qq, n, rank, rng, t);
  }
  return {t.failures() == 0 && t.cases() >= 500,
          fmt("%zu cases (%zu planted full rank), %zu failures", t.cases(), full_rank, t.failures()) +
              (t.failures() ? "; first: " + t.first_failure() : "")};
}

// ---------------------------------------------------------------------------
// 4: Bruhat decomposition.

template <ExactField F>
void bruhat_case(const F& f, std::size_t n, std::size_t rank, SplitMix64& rng, Tally& t, std::size_t& singular) {
  const auto m = planted_rank(f, n, rank, rng);
  MulCounter c;
  const auto b = bruhat_decompose(m, c);
  const bool product = naive_product(naive_product(b.V1, tp_to_dense(b.w, f)), b.V2) == m;
  const bool shapes = is_upper_triangular(b.V1) && is_upper_triangular(b.V2) && b.w.is_full() && b.w.size() == n;
  const std::size_t r = gauss_rank(m);
  singular += r < n;
  bool nonsingular_ok = true;
  if (r == n) nonsingular_ok = gauss_rank(b.V1) == n && gauss_rank(b.V2) == n;
  t.check(product && shapes && nonsingular_ok, f.spec().to_string() + fmt(" n=%zu rank=%zu", n, rank));
}

Outcome criterion_bruhat() {
  const PrimeField gf7(7), gf65521(65521);
  const RationalField qq;
  SplitMix64 rng(0x5eed0004);
  Tally t;
  std::size_t singular = 0;
  for (std::size_t i = 0; i < 360; ++i) {
    const std::size_t n = 1 + rng.below(24);
    const std::size_t rank = i % 2 == 0 ? n : rng.below(n + 1);
    if (i % 3 == 0) bruhat_case(gf7, n, rank, rng, t, singular);
    if (i % 3 == 1) bruhat_case(gf65521, n, rank, rng, t, singular);
    if (i % 3 == 2) bruhat_case(qq, n, rank, rng, t, singular);
  }
  return {t.failures() == 0 && t.cases() >= 300 && singular > 0,
          fmt("%zu cases (%zu singular), %zu failures", t.cases(), singular, t.failures()) +
              (t.failures() ? "; first: " + t.first_failure() : "")};
}

// ---------------------------------------------------------------------------
// 5: multiplication counts.

Matrix<PrimeField> full_rank_matrix(const PrimeField& f, std::size_t n, SplitMix64& rng) {
  for (;;) {
    auto a = random_matrix(f, n, n, rng);
    if (gauss_rank(a) == n) return a;
  }
}

Outcome criterion_complexity() {
  const PrimeField f(65521);
  SplitMix64 rng(0x5eed0005);
  const auto start = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = true;

  // (a) every internal node spends exactly 17 (n/2)^3 products.
  std::size_t nodes = 0, bad_nodes = 0, expected_nodes = 0;
  for (bool skip : {false, true}) {
    for (std::size_t n : {2, 4, 8, 16, 32, 64}) {
      const auto a = full_rank_matrix(f, n, rng);
      LeuOptions opt;
      opt.skip_zero_blocks = skip;
      opt.on_node = [&](const LeuNodeInfo& info) {
        const std::uint64_t h = info.n / 2;
        ++nodes;
        if (info.own.scalar_mults != 17 * h * h * h || info.own.scalar_invs != 0) ++bad_nodes;
      };
      MulCounter c;
      leu_decompose(a, c, opt);
      if (!skip) expected_nodes += (n * n - 1) / 3;
    }
  }
  const bool a_ok = bad_nodes == 0 && nodes >= expected_nodes;
  ok = ok && a_ok;
  detail += fmt("(a) %zu nodes, %zu off the 17(n/2)^3 count", nodes, bad_nodes);

  // (b) leading coefficient with classical products at n = 128.
  double lo = 1e9, hi = 0;
  for (int trial = 0; trial < 3; ++trial) {
    const auto a = full_rank_matrix(f, 128, rng);
    LeuOptions opt;
    opt.skip_zero_blocks = false;
    MulCounter c;
    leu_decompose(a, c, opt);
    const double ratio = static_cast<double>(c.total()) / (128.0 * 128.0 * 128.0);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  const bool b_ok = lo >= 3.4 && hi <= 4.6;
  ok = ok && b_ok;
  detail += fmt("; (b) t(128)/128^3 in [%.4f, %.4f]", lo, hi);

  // (c) growth ratio with Strassen products down to 1x1.
  LeuOptions strassen;
  strassen.skip_zero_blocks = false;
  strassen.mul.mode = MulMode::Strassen;
  strassen.mul.cutoff = 1;
  MulCounter c128, c256;
  leu_decompose(full_rank_matrix(f, 128, rng), c128, strassen);
  leu_decompose(full_rank_matrix(f, 256, rng), c256, strassen);
  const double growth = static_cast<double>(c256.total()) / static_cast<double>(c128.total());
  const bool c_ok = growth <= 7.6;
  ok = ok && c_ok;
  const double secs = seconds_since(start);
  ok = ok && secs < 300.0;
  detail += fmt("; (c) t(256)/t(128) = %.4f; %.1f s", growth, secs);
  return {ok, detail};
}

// ---------------------------------------------------------------------------
// 6: determinism across runs and execution modes.

template <ExactField F>
std::string leu_transcript(const Matrix<F>& a, const LeuOptions& opt) {
  MulCounter c;
  const auto r = leu_decompose(a, c, opt);
  std::ostringstream out;
  write_matrix(out, r.L);
  out << format_perm(r.E) << '\n';
  write_matrix(out, r.U);
  out << "mults " << c.scalar_mults << " invs " << c.scalar_invs << '\n';
  MulCounter d;
  const auto b = bruhat_decompose(a, d, opt);
  write_matrix(out, b.V1);
  out << format_perm(b.w) << '\n';
  write_matrix(out, b.V2);
  return out.str();
}

Outcome criterion_determinism() {
  const PrimeField gf65521(65521);
  const RationalField qq;
  const int saved = omp_get_max_threads();
  std::size_t mismatches = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    SplitMix64 rng(seed);
    const std::size_t n = 16 + rng.below(49);
    const std::size_t rank = rng.below(n + 1);
    LeuOptions serial;
    serial.mul.mode = seed % 2 ? MulMode::Classical : MulMode::Strassen;
    serial.mul.cutoff = 8;
    LeuOptions parallel = serial;
    parallel.mul.exec = Execution::Parallel;

    auto transcripts = [&](const auto& a) {
      omp_set_num_threads(1);
      const auto first = leu_transcript(a, serial);
      const auto second = leu_transcript(a, serial);
      omp_set_num_threads(4);
      const auto concurrent = leu_transcript(a, parallel);
      omp_set_num_threads(saved);
      return first == second && first == concurrent;
    };
    bool same;
    if (seed % 5 == 0) {
      same = transcripts(random_rank_matrix(qq, std::min<std::size_t>(n, 24), std::min(rank, std::size_t{24}), rng));
    } else {
      same = transcripts(random_rank_matrix(gf65521, n, rank, rng));
    }
    mismatches += !same;
  }
  return {mismatches == 0, fmt("50 seeded cases, serial x2 vs 4-thread tasks, %zu mismatches", mismatches)};
}

// ---------------------------------------------------------------------------
// 7: worked micro-traces.

// A = [[0,1],[0,0]]: every correction in the recursion vanishes.
template <ExactField F>
void upper_trace(const F& f, MulCounter& c, Tally& t) {
  const auto m = Matrix<F>::from_ints(f, {{0, 1}, {0, 0}});
  const auto s = leu_decompose(m, c);
  t.check(s.L == Matrix<F>::identity(f, 2) && s.U == Matrix<F>::identity(f, 2), "upper L, U");
  t.check(s.E == TruncPerm(2, {{0, 1}}), "upper E");
  t.check(kernel_basis(m, c) == Matrix<F>::from_ints(f, {{1}, {0}}), "upper kernel");
  const auto b = bruhat_decompose(m, c);
  t.check(b.V1 == Matrix<F>::from_ints(f, {{1, 0}, {0, 0}}), "upper V1");
  t.check(b.w == reversal_perm(2), "upper w");
  t.check(b.V2 == Matrix<F>::from_ints(f, {{0, 0}, {0, 1}}), "upper V2");
}

Outcome criterion_traces() {
  const PrimeField gf7(7);
  const RationalField qq;
  MulCounter c;
  Tally t;

  const auto a = Matrix<PrimeField>::from_ints(gf7, {{3, 1}, {2, 5}});
  const auto r = leu_decompose(a, c);
  t.check(r.L == Matrix<PrimeField>::from_ints(gf7, {{5, 0}, {2, 4}}), "GF(7) L");
  t.check(r.E == TruncPerm::identity(2), "GF(7) E");
  t.check(r.U == Matrix<PrimeField>::from_ints(gf7, {{1, 2}, {0, 1}}), "GF(7) U");
  const auto inv = mat_inverse(a, c);
  t.check(inv == Matrix<PrimeField>::from_ints(gf7, {{2, 1}, {2, 4}}), "GF(7) inverse");
  t.check(inv == oracle::gauss_inverse(a), "GF(7) inverse vs oracle");

  upper_trace(qq, c, t);
  upper_trace(gf7, c, t);
  return {t.failures() == 0, fmt("%zu exact comparisons, %zu failures", t.cases(), t.failures()) +
                                 (t.failures() ? "; first: " + t.first_failure() : "")};
}

// ---------------------------------------------------------------------------
// 8: largest nonsingular block.

template <ExactField F>
void block_case(const F& f, std::size_t n, std::size_t rank, SplitMix64& rng, Tally& t, std::ostream& log) {
  const auto a = planted_rank(f, n, rank, rng);
  const std::size_t r = gauss_rank(a);
  if (r == n) return;  // only singular instances count
  MulCounter c;
  const auto b = largest_nonsingular_block(a, c);
  const bool ok = b.rows.size() == r && b.cols.size() == r && gauss_rank(submatrix(a, b.rows, b.cols)) == r;
  if (!ok) {
    log << "counterexample to the (I_E rows, J_E cols) block over " << f.spec().to_string() << ":\n"
        << format_matrix(a);
  }
  t.check(ok, f.spec().to_string() + fmt(" n=%zu rank=%zu", n, rank));
}

Outcome criterion_block() {
  const PrimeField gf7(7), gf65521(65521);
  const RationalField qq;
  SplitMix64 rng(0x5eed0008);
  Tally t;
  std::size_t i = 0;
  while (t.cases() < 360) {
    const std::size_t n = 2 + rng.below(31);
    const std::size_t rank = rng.below(n);
    if (i % 3 == 0) block_case(gf7, n, rank, rng, t, std::cerr);
    if (i % 3 == 1) block_case(gf65521, n, rank, rng, t, std::cerr);
    if (i % 3 == 2) block_case(qq, std::min<std::size_t>(n, 20), std::min<std::size_t>(rank, 19), rng, t, std::cerr);
    ++i;
  }
  return {t.failures() == 0 && t.cases() >= 300, fmt("%zu singular cases, %zu failures", t.cases(), t.failures())};
}

// ---------------------------------------------------------------------------
// 9: command-line contract.

struct CliRun {
  int code;
  std::string out, err;
};

CliRun cli_run(std::vector<std::string> args) {
  args.insert(args.begin(), "leu-tool");
  std::vector<const char*> argv;
  for (const auto& s : args) argv.push_back(s.c_str());
  std::ostringstream out, err;
  const int code = cli::main_with_args(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome criterion_cli() {
  const std::filesystem::path dir{LEU_GOLDEN_DIR};
  const auto g = [&](const char* name) { return (dir / name).string(); };
  Tally t;

  // Golden outputs.
  const std::vector<std::pair<std::vector<std::string>, const char*>> golden{
      {{"leu", g("gf7_worked.txt"), "--count-mults"}, "leu_gf7_worked.expected"},
      {{"invert", g("gf7_worked.txt")}, "invert_gf7_worked.expected"},
      {{"bruhat", g("upper_2x2.txt")}, "bruhat_upper_2x2.expected"},
      {{"kernel", g("upper_2x2.txt")}, "kernel_upper_2x2.expected"},
      {{"block", g("upper_2x2.txt")}, "block_upper_2x2.expected"},
      {{"rank", g("rect_rank1.txt")}, "rank_rect_rank1.expected"},
      {{"kernel", g("rect_rank1.txt")}, "kernel_rect_rank1.expected"},
      {{"invert", g("rational_3x3.txt")}, "invert_rational_3x3.expected"},
      {{"leu", g("rational_3x3.txt"), "--field", "gfp:7"}, "leu_rational_3x3_gf7.expected"},
  };
  for (const auto& [args, expected] : golden) {
    const auto r = cli_run(args);
    t.check(r.code == 0 && r.out == slurp(dir / expected), std::string("golden ") + expected);
  }

  // Round trip: every printed matrix re-parses and re-prints identically.
  for (const char* input : {"gf7_worked.txt", "rational_3x3.txt", "upper_2x2.txt"}) {
    const auto inv = cli_run({"kernel", g(input)});
    t.check(inv.code == 0, "kernel run");
    const auto any = parse_matrix(inv.out);
    std::visit([&](const auto& m) { t.check(format_matrix(m) == inv.out, "kernel round trip"); }, any);
    const auto text = slurp(dir / input);
    std::visit([&](const auto& m) { t.check(format_matrix(m) == text, std::string("input round trip ") + input); },
               parse_matrix(text));
  }

  // Exit codes.
  const auto singular = cli_run({"invert", g("upper_2x2.txt")});
  t.check(singular.code == 2 && singular.err == "singular rank=1\n", "invert singular exit 2");
  t.check(cli_run({"leu", g("malformed.txt")}).code == 1, "malformed exit 1");
  t.check(cli_run({"leu", g("missing.txt")}).code == 1, "missing file exit 1");
  t.check(cli_run({"unknown", g("gf7_worked.txt")}).code == 1, "unknown command exit 1");
  t.check(cli_run({"leu", g("gf7_worked.txt"), "--cutoff", "0"}).code == 1, "bad cutoff exit 1");
  for (const char* input : {"gf7_worked.txt", "upper_2x2.txt", "rect_rank1.txt", "rational_3x3.txt"}) {
    const auto v = cli_run({"verify", g(input)});
    t.check(v.code == 0 && v.out.find("FAIL") == std::string::npos, std::string("verify ") + input);
  }

  // Bench reproducibility.
  const auto b1 = cli_run({"bench", "--seed", "1"});
  const auto b2 = cli_run({"bench", "--seed", "1"});
  t.check(b1.code == 0 && b1.out == b2.out, "bench repeat");
  t.check(b1.out == slurp(dir / "bench_seed1.expected"), "bench golden");

  return {t.failures() == 0, fmt("%zu checks, %zu failures", t.cases(), t.failures()) +
                                 (t.failures() ? "; first: " + t.first_failure() : "")};
}

void report(int number, const char* name, const Outcome& o, bool& all) {
  std::cout << "criterion " << number << " " << name << ": " << (o.passed ? "PASS" : "FAIL") << " (" << o.detail
            << ")" << std::endl;
  all = all && o.passed;
}

}  // namespace

int main() {
  bool all = true;

  const auto rec = run_reconstruction_suite();
  report(1, "reconstruction",
         {rec.reconstruction.failures() == 0 && rec.reconstruction.cases() >= 1000 && rec.seconds < 60.0,
          fmt("%zu cases, sizes 1..%zu, %zu failures, %.1f s", rec.reconstruction.cases(), rec.max_n,
              rec.reconstruction.failures(), rec.seconds) +
              (rec.reconstruction.failures() ? "; first: " + rec.reconstruction.first_failure() : "")},
         all);
  report(2, "immersion",
         {rec.immersion.failures() == 0 && rec.immersion.cases() >= 1000,
          fmt("%zu cases, %zu failures", rec.immersion.cases(), rec.immersion.failures()) +
              (rec.immersion.failures() ? "; first: " + rec.immersion.first_failure() : "")},
         all);
  report(3, "oracle_equivalence", criterion_oracle(), all);
  report(4, "bruhat", criterion_bruhat(), all);
  report(5, "complexity", criterion_complexity(), all);
  report(6, "determinism", criterion_determinism(), all);
  report(7, "micro_traces", criterion_traces(), all);
  report(8, "nonsingular_block", criterion_block(), all);
  report(9, "cli_contract", criterion_cli(), all);

  std::cout << (all ? "all criteria passed" : "some criteria FAILED") << std::endl;
  return all ? 0 : 1;
}
