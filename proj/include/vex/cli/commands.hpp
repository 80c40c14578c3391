#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vex/io/json.hpp"

namespace vex::cli {

using io::Json;

enum ExitCode : int { kHolds = 0, kInputError = 2, kRefuted = 10, kInconclusive = 20 };

/// Flags shared by all commands; each command reads the ones it needs.
struct Options {
  std::string problem;
  std::string property = "extremal";
  std::string flavor = "frechet";
  std::string kind = "separation";
  std::optional<std::string> eps, rho, delta;
  std::optional<int> levels;
  std::string point, x, y, ystar;
  std::string set_file, mapping_file, cert_file;
  bool props = false;
  std::string out, manifest;
  std::string filter, corpus_dir, inject_fault;
};

/// Defaults live here so every manifest records them.
struct RunConfig {
  int schedule_depth = 12;
  int grid_depth = 12;  // grid denominator 2^grid_depth
  std::size_t budget = 64;
};

/// --levels overrides the schedule depth, VEX_GRID_DEPTH the grid depth.
RunConfig run_config(const Options& o);

using NormalFn = std::function<NormalCone(const SetExpr&, const Vec&, ConeFlavor)>;

struct Outcome {
  int exit_code = kInputError;
  std::string summary;
  Json result;
  /// Extra files written by the command (corpus trees).
  std::vector<std::string> artifacts;
};

/// Runs one command without touching the file system except for reading
/// inputs (and, for `corpus`, writing the requested output tree). Input
/// errors come back as exit code 2 with the diagnostic in `summary`.
Outcome run(const std::string& command, const Options& o, const NormalFn& normal = normal_cone);

/// run() plus output: the result goes to --out (or `out`), the diagnostic
/// of an input error to `err`, and the manifest to --manifest.
int execute(const std::string& command, const Options& o, std::ostream& out, std::ostream& err);

/// FNV-1a over the canonical dump, as 16 hex digits.
std::string config_hash(const Json& config);

Json options_json(const std::string& command, const Options& o);

}  // namespace vex::cli
