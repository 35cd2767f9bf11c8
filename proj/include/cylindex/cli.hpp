#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cylindex/pipeline.hpp"

namespace cylindex {

enum class Command { Check, Index, Oracle, Verify, Calibrate, Svplot, Fedosov, Quantize };
enum class OutputFormat { Text, Json };

std::string_view to_string(Command c);

struct RunConfig {
  Command command = Command::Check;
  std::string input;
  std::string out;  ///< empty: standard output
  OutputFormat format = OutputFormat::Text;
  /// Ellipticity grid, loop samples and Fedosov resolution, when set.
  std::optional<int> grid;
  std::vector<int> radii;
  std::optional<double> tol;
  bool allow_large = false;
  /// svplot: which boundary operator to sweep.
  Side side = Side::Plus;
  bool runtimes = false;

  PipelineConfig pipeline() const;
};

/// Runs one command. Exit status 0 on success, 2 on validation errors
/// (schema, ellipticity, sizes), 3 on numerical failures.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace cylindex
