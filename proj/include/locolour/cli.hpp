#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace locolour::cli {

enum class Command { Solve, Verify, Gen, Oracle, Bench };
enum class Algo { Mod2, Mod2Edges, Rational };
enum class ReportFormat { Text, Structured };

std::string_view to_string(Algo algo);

enum ExitStatus : int {
  kExitOk = 0,
  kExitFailure = 1,  // invalid colouring or promise violation
  kExitUsage = 2,    // bad arguments, unreadable input, malformed files
};

struct RunConfig {
  Command command = Command::Solve;
  Algo algo = Algo::Mod2;
  std::string input;
  std::string output;
  std::string colouring;
  std::uint64_t seed = 0;
  std::size_t brute_threshold = 20;
  std::size_t max_retries = 64;
  ReportFormat report_format = ReportFormat::Text;

  // gen
  std::string kind = "planted";
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t k = 0;
  double ones_fraction = 0.25;
  std::string witness;

  // oracle; 0 means "number of vertices"
  std::size_t budget = 0;

  // bench
  std::vector<std::size_t> sizes;
  std::size_t edge_factor = 2;
  std::size_t instances = 1;
  unsigned jobs = 0;
};

/// Colour-count guarantee of an algorithm for an instance, or nullopt where
/// none is claimed (mod2 with n < 4, mod2-edges with m = 0).
std::optional<double> theoretical_bound(Algo algo, std::size_t n, std::size_t m);

/// Exact comparison against theoretical_bound; true where no bound applies.
bool within_bound(Algo algo, std::size_t colours, std::size_t n, std::size_t m);

struct BenchRow {
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint64_t seed = 0;
  Algo algo = Algo::Mod2;
  bool fallback = false;
  std::size_t colours_used = 0;
  std::optional<double> bound;
  bool within_bound = false;
  bool valid = false;
  double elapsed_ms = 0;
  std::string error;
};

/// Planted instances for every size in config.sizes (config.instances each,
/// m = edge_factor * n, ones fraction 1/4), solved in parallel across
/// instances. Rows come back in a fixed order independent of config.jobs.
std::vector<BenchRow> run_bench(const RunConfig& config);

/// Executes one command. Reports go to `out`, diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses command-line arguments (args[0] is the program name) and runs.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace locolour::cli
