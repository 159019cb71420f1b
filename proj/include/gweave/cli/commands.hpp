#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

#include "gweave/gframe.hpp"
#include "gweave/weaving.hpp"

namespace gweave::cli {

using Json = nlohmann::ordered_json;

struct CommandOptions {
  double tol = kDefaultTolerance;
  std::optional<std::uint64_t> search_budget;  // unset: exhaustive
  std::uint64_t seed = 0;
  std::size_t cap = kDefaultExhaustiveCap;
  std::size_t dim_scale = 0;
  std::string out;  // output path for commands that produce a family
};

struct CommandOutcome {
  Json report;
  std::string text;
  int exit_code = 0;
};

enum ExitCode { kExitOk = 0, kExitSuiteFailure = 1, kExitInputError = 2 };

// GWEAVE_EXHAUSTIVE_CAP when set to a positive integer, else the default.
std::size_t default_cap();

CommandOutcome cmd_bounds(const std::string& path, const CommandOptions& options);
CommandOutcome cmd_woven(const std::string& path_f, const std::string& path_g, const CommandOptions& options);
// kind: frame | exact | riesz | onb | dual-with (needs path2)
CommandOutcome cmd_check(const std::string& path, const std::string& kind, const std::string& path2,
                         const CommandOptions& options);
CommandOutcome cmd_dual(const std::string& path, const CommandOptions& options);
CommandOutcome cmd_transform_parseval(const std::string& path, const CommandOptions& options);
CommandOutcome cmd_paper_suite(const CommandOptions& options);
// Writes every example family (and the four-channel weave at {1,2}) to dir.
CommandOutcome cmd_export_examples(const std::string& dir, const CommandOptions& options);

}  // namespace gweave::cli
