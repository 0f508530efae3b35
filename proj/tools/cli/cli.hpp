#pragma once

// Command-line front end: subcommand dispatch, config files and report
// serialization.

#include <string>
#include <string_view>
#include <vector>

namespace qdeco::cli {

inline constexpr std::string_view kToolName = "qdeco";
inline constexpr std::string_view kToolVersion = "1.0.0";

enum class ExitCode : int { ok = 0, validation = 1, usage = 2 };
enum class Format { json, csv };

struct RunResult {
  int exit_code = 0;
  std::string out;  // standard output
  std::string err;  // standard error
};

// argv without the program name. Writes the report to --out when given,
// otherwise returns it in `out`.
RunResult run(const std::vector<std::string>& args);

// %.12g
std::string format_number(double value);

// Rows of equal width under `header`. CSV has a header line; JSON is an array
// of objects keyed by the header. Throws DimensionError on ragged rows.
std::string emit_sweep(const std::vector<std::vector<double>>& rows, const std::vector<std::string>& header,
                       Format format);

}  // namespace qdeco::cli
