#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bw/distribution.hpp"
#include "bw/inference.hpp"

// Command implementations behind the bw executable. Everything here is
// stream-based so the integration tests can drive commands in-process.

namespace bw::cli {

enum class Command { Fit, Test, Moments, Curve, Simulate, Info };
enum class OutputFormat { Json, Csv };

struct RunConfig {
  Command command = Command::Info;
  SpecialCase model = SpecialCase::BetaWeibull;
  std::optional<std::string> input_path;
  std::optional<double> a;
  std::optional<double> b;
  std::optional<double> c;
  std::optional<double> lambda;
  std::vector<double> r_list;
  std::string sweep;  // "", "a" or "b"
  std::optional<std::int64_t> n;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  OutputFormat format = OutputFormat::Json;
  std::optional<double> xmin;
  std::optional<double> xmax;
  int points = 200;
  bool paper_check = false;
};

// Bad flags, unreadable input, malformed data. run() maps it to exit code 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "fit" | "test" | "moments" | "curve" | "simulate" | "info".
Command parse_command(const std::string& name);

// "bw" | "weibull" | "exp-weibull" | "beta-exp".
SpecialCase parse_model(const std::string& name);
const char* model_name(SpecialCase model);

// One positive decimal per token, whitespace- or comma-separated, comments
// from '#' to end of line. Throws UsageError with a line-numbered message.
inference::Dataset load_dataset(std::istream& in, const std::string& name);
inference::Dataset load_dataset_file(const std::string& path);

// Executes the configured command, results on out, diagnostics on err.
// Returns the process exit code: 0 success, 1 usage or input error,
// 2 numerical non-convergence.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace bw::cli
