#pragma once

// Command-line front end. `run` is the whole program minus argument parsing,
// so tests can drive it with in-memory streams.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "leu/multiply.hpp"
#include "leu/scalars.hpp"

namespace leu::cli {

enum class Command { Leu, Bruhat, Invert, Rank, Kernel, Block, Verify, Bench };

struct CliConfig {
  Command command = Command::Leu;
  std::string input_path;
  std::optional<std::string> output_path;  // standard output when empty
  std::optional<FieldSpec> field_override;
  MulMode mul_mode = MulMode::Classical;
  std::size_t strassen_cutoff = 32;
  bool count_mults = false;
  std::uint64_t seed = 1;
  bool debug_checks = false;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitSingular = 2;

/// Run one command. Results go to `out` (or the output file), diagnostics to `err`.
int run(const CliConfig& config, std::ostream& out, std::ostream& err);

/// Parse the command line and run it.
int main_with_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace leu::cli
