#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <variant>

#include <CLI11.hpp>

#include "leu/derived.hpp"
#include "leu/random.hpp"
#include "leu/text_format.hpp"
#include "leu_oracle/gauss.hpp"

namespace leu::cli {

namespace {

LeuOptions leu_options(const CliConfig& config) {
  LeuOptions opt;
  opt.mul.mode = config.mul_mode;
  opt.mul.cutoff = config.strassen_cutoff;
  opt.debug_checks = config.debug_checks;
  return opt;
}

void print_counts(std::ostream& out, const CliConfig& config, const MulCounter& c) {
  if (!config.count_mults) return;
  out << "mults " << c.scalar_mults << '\n';
  out << "invs " << c.scalar_invs << '\n';
}

template <ExactField F>
void cmd_leu(const Matrix<F>& a, const CliConfig& config, std::ostream& out) {
  MulCounter c;
  const auto r = leu_decompose(pad_to_square(a), c, leu_options(config));
  out << "L\n";
  write_matrix(out, r.L);
  out << "E\n" << format_perm(r.E) << '\n';
  out << "U\n";
  write_matrix(out, r.U);
  out << "rank " << r.rank() << '\n';
  print_counts(out, config, c);
}

template <ExactField F>
void cmd_bruhat(const Matrix<F>& a, const CliConfig& config, std::ostream& out) {
  MulCounter c;
  const auto b = bruhat_decompose(pad_to_square(a), c, leu_options(config));
  out << "V1\n";
  write_matrix(out, b.V1);
  out << "w\n" << format_perm(b.w) << '\n';
  out << "V2\n";
  write_matrix(out, b.V2);
  print_counts(out, config, c);
}

template <ExactField F>
void cmd_invert(const Matrix<F>& a, const CliConfig& config, std::ostream& out) {
  MulCounter c;
  write_matrix(out, mat_inverse(a, c, leu_options(config)));
  print_counts(out, config, c);
}

template <ExactField F>
void cmd_rank(const Matrix<F>& a, const CliConfig& config, std::ostream& out) {
  MulCounter c;
  out << "rank " << mat_rank(a, c, leu_options(config)) << '\n';
  print_counts(out, config, c);
}

template <ExactField F>
void cmd_kernel(const Matrix<F>& a, const CliConfig& config, std::ostream& out) {
  MulCounter c;
  write_matrix(out, kernel_basis(a, c, leu_options(config)));
  print_counts(out, config, c);
}

void write_indices(std::ostream& out, const char* label, const std::vector<std::size_t>& idx) {
  out << label;
  for (auto i : idx) out << ' ' << i;
  out << '\n';
}

template <ExactField F>
void cmd_block(const Matrix<F>& a, const CliConfig& config, std::ostream& out) {
  MulCounter c;
  const auto b = largest_nonsingular_block(pad_to_square(a), c, leu_options(config));
  write_indices(out, "row_indices", b.rows);
  write_indices(out, "col_indices", b.cols);
  print_counts(out, config, c);
}

template <ExactField F>
bool cmd_verify(const Matrix<F>& a, const CliConfig& config, std::ostream& out) {
  const auto opt = leu_options(config);
  const F& f = a.field();
  const auto sq = pad_to_square(a);
  std::vector<LeuCheck> checks;

  if (sq.rows() == 0) {
    checks.push_back({"empty_input", true});
  } else {
    MulCounter c;
    const auto r = leu_decompose(sq, c, opt);
    for (const auto& check : leu_verify(sq, r).checks) checks.push_back(check);
    const std::size_t rank = r.rank();

    checks.push_back({"oracle_rank", rank == oracle::gauss_rank(a)});

    const auto k = kernel_basis(a, c, opt);
    checks.push_back({"oracle_kernel", k.cols() == oracle::gauss_kernel(a).cols() && k.cols() == a.cols() - rank &&
                                           oracle::naive_product(a, k).is_zero() && oracle::gauss_rank(k) == k.cols()});

    bool inverse_ok = false;
    try {
      const auto inv = mat_inverse(sq, c, opt);
      inverse_ok = inv == oracle::gauss_inverse(sq);
    } catch (const SingularError& e) {
      try {
        oracle::gauss_inverse(sq);
      } catch (const SingularError& oe) {
        inverse_ok = e.rank() == oe.rank();
      }
    }
    checks.push_back({"oracle_inverse", inverse_ok});

    const auto b = bruhat_decompose(sq, c, opt);
    checks.push_back({"bruhat", is_upper_triangular(b.V1) && is_upper_triangular(b.V2) && b.w.is_full() &&
                                    oracle::naive_product(oracle::naive_product(b.V1, tp_to_dense(b.w, f)), b.V2) ==
                                        sq});

    const auto blk = largest_nonsingular_block(sq, c, opt);
    checks.push_back({"block_nonsingular", blk.rows.size() == rank &&
                                               oracle::gauss_rank(submatrix(sq, blk.rows, blk.cols)) == rank});
  }

  bool all = true;
  for (const auto& check : checks) {
    out << check.name << ": " << (check.passed ? "PASS" : "FAIL") << '\n';
    all = all && check.passed;
  }
  return all;
}

void cmd_bench(const CliConfig& config, std::ostream& out) {
  const PrimeField f(65521);
  SplitMix64 rng(config.seed);
  out << "n,mode,mults,invs\n";
  for (std::size_t n : {8, 16, 32, 64, 128}) {
    Matrix<PrimeField> a(f, n, n);
    for (;;) {
      a = random_matrix(f, n, n, rng);
      MulCounter scratch;
      if (leu_decompose(a, scratch).rank() == n) break;
    }
    for (MulMode mode : {MulMode::Classical, MulMode::Strassen}) {
      LeuOptions opt = leu_options(config);
      opt.mul.mode = mode;
      opt.skip_zero_blocks = false;
      MulCounter c;
      leu_decompose(a, c, opt);
      out << n << ',' << (mode == MulMode::Classical ? "classical" : "strassen") << ',' << c.scalar_mults << ','
          << c.scalar_invs << '\n';
    }
  }
}

AnyMatrix load_input(const CliConfig& config) {
  std::ifstream in(config.input_path);
  if (!in) throw ParseError("cannot open input file '" + config.input_path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_matrix(buffer.str(), config.field_override);
}

int dispatch(const CliConfig& config, std::ostream& out) {
  if (config.strassen_cutoff < 1) throw std::invalid_argument("--cutoff must be at least 1");
  if (config.command == Command::Bench) {
    cmd_bench(config, out);
    return kExitOk;
  }
  const auto input = load_input(config);
  return std::visit(
      [&](const auto& a) {
        switch (config.command) {
          case Command::Leu: cmd_leu(a, config, out); break;
          case Command::Bruhat: cmd_bruhat(a, config, out); break;
          case Command::Invert: cmd_invert(a, config, out); break;
          case Command::Rank: cmd_rank(a, config, out); break;
          case Command::Kernel: cmd_kernel(a, config, out); break;
          case Command::Block: cmd_block(a, config, out); break;
          case Command::Verify: return cmd_verify(a, config, out) ? kExitOk : kExitUsage;
          case Command::Bench: break;
        }
        return kExitOk;
      },
      input);
}

}  // namespace

int run(const CliConfig& config, std::ostream& out, std::ostream& err) {
  std::ostringstream buffer;
  int code = kExitOk;
  try {
    code = dispatch(config, buffer);
  } catch (const SingularError& e) {
    err << "singular rank=" << e.rank().value_or(0) << '\n';
    return kExitSingular;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  if (config.output_path) {
    std::ofstream file(*config.output_path);
    if (!file) {
      err << "error: cannot open output file '" << *config.output_path << "'\n";
      return kExitUsage;
    }
    file << buffer.str();
  } else {
    out << buffer.str();
  }
  return code;
}

int main_with_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact pivot-free LEU decomposition and derived operations over GF(p) and Q"};
  app.set_help_flag("-h,--help", "Print this help message and exit");

  const std::map<std::string, Command> commands{
      {"leu", Command::Leu},       {"bruhat", Command::Bruhat}, {"invert", Command::Invert},
      {"rank", Command::Rank},     {"kernel", Command::Kernel}, {"block", Command::Block},
      {"verify", Command::Verify}, {"bench", Command::Bench}};
  const std::map<std::string, MulMode> modes{{"classical", MulMode::Classical}, {"strassen", MulMode::Strassen}};

  CliConfig config;
  std::string output_path;
  std::string field_text;
  app.add_option("command", config.command, "leu | bruhat | invert | rank | kernel | block | verify | bench")
      ->required()
      ->transform(CLI::CheckedTransformer(commands, CLI::ignore_case));
  app.add_option("input", config.input_path, "Matrix file (not used by bench)");
  app.add_option("--field", field_text, "Read entries into this field: 'gfp:<p>' or 'rational'");
  app.add_option("--mul", config.mul_mode, "Dense multiplication: classical | strassen")
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
  app.add_option("--cutoff", config.strassen_cutoff, "Strassen recursion cutoff")->check(CLI::PositiveNumber);
  app.add_flag("--count-mults", config.count_mults, "Append scalar multiplication and inversion counts");
  app.add_option("--seed", config.seed, "Seed for bench matrices");
  app.add_flag("--debug-checks", config.debug_checks, "Check the decomposition contract at every recursion node");
  app.add_option("--output", output_path, "Write results to this file instead of standard output");

  try {
    app.parse(argc, argv);
    if (!output_path.empty()) config.output_path = output_path;
    if (!field_text.empty()) config.field_override = parse_field_spec(field_text);
    if (config.command != Command::Bench && config.input_path.empty()) {
      throw CLI::ValidationError("input", "an input matrix file is required");
    }
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return run(config, out, err);
}

}  // namespace leu::cli
