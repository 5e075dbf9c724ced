#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "northpole/battery.hpp"
#include "northpole/rng.hpp"

namespace northpole::cli {

// Stable exit-code contract.
inline constexpr int kExitSuccess = 0;
inline constexpr int kExitVerificationFailure = 1;
inline constexpr int kExitUsage = 2;

enum class Command { Sample, Density, Table, Verify, Haar };
enum class Method { Exact, Direct, Qr, Decomposition };
enum class Format { Csv, Json };

struct RunConfig {
  Command command = Command::Sample;
  int p = 3;
  int k = 1;
  std::size_t n = 100000;
  std::uint64_t seed = kDefaultSeed;
  Method method = Method::Exact;
  Format format = Format::Csv;
  double alpha = 0.001;
  std::vector<int> dims;
  std::size_t identity_draws = 10000;
  mc::Fixture fixture = mc::Fixture::None;
};

/// Thrown for configurations that are syntactically fine but invalid for
/// the chosen command; maps to kExitUsage.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int cmd_sample(const RunConfig& cfg, std::ostream& out);
int cmd_density(const RunConfig& cfg, std::ostream& out);
int cmd_table(const RunConfig& cfg, std::ostream& out);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_haar(const RunConfig& cfg, std::ostream& out);

/// Parses argv (argv[0] is the program name), runs the command and returns
/// the process exit code. Data goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace northpole::cli
