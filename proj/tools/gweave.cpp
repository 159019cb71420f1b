#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "gweave/cli/commands.hpp"
#include "gweave/error.hpp"

namespace {

using gweave::cli::CommandOptions;
using gweave::cli::CommandOutcome;

struct GlobalFlags {
  bool json = false;
  bool exhaustive = false;
  std::optional<std::uint64_t> search;
  std::optional<std::size_t> cap;
};

void add_common(CLI::App* sub, CommandOptions& options, GlobalFlags& flags) {
  sub->add_option("--tol", options.tol, "classification tolerance (relative)")->check(CLI::PositiveNumber);
  sub->add_flag("--json", flags.json, "print the JSON report");
  sub->add_option("--cap", flags.cap, "largest N enumerated exhaustively")->check(CLI::PositiveNumber);
  sub->add_option("--seed", options.seed, "seed for search starts and random unitaries");
}

void add_search(CLI::App* sub, GlobalFlags& flags) {
  auto* ex = sub->add_flag("--exhaustive", flags.exhaustive, "enumerate every selection (default)");
  auto* search = sub->add_option("--search", flags.search, "local search with this many starts");
  ex->excludes(search);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gweave: g-frames and their weavings"};
  app.require_subcommand(1);

  CommandOptions options;
  GlobalFlags flags;
  std::string path;
  std::string path2;
  std::string kind;
  std::string dir;

  auto* bounds = app.add_subcommand("bounds", "optimal frame bounds of a family");
  bounds->add_option("file", path, "GFrameDocument")->required();
  add_common(bounds, options, flags);

  auto* woven = app.add_subcommand("woven", "decide whether two families are woven");
  woven->add_option("file_f", path, "first family")->required();
  woven->add_option("file_g", path2, "second family")->required();
  add_common(woven, options, flags);
  add_search(woven, flags);

  auto* check = app.add_subcommand("check", "classify a family");
  check->add_option("file", path, "GFrameDocument")->required();
  check->add_option("kind", kind, "frame | exact | riesz | onb | dual-with")
      ->required()
      ->check(CLI::IsMember({"frame", "exact", "riesz", "onb", "dual-with"}));
  check->add_option("other", path2, "second family for dual-with");
  add_common(check, options, flags);

  auto* dual = app.add_subcommand("dual", "canonical dual family");
  dual->add_option("file", path, "GFrameDocument")->required();
  dual->add_option("--out", options.out, "write the dual here");
  add_common(dual, options, flags);

  auto* parseval = app.add_subcommand("transform-parseval", "apply S^{-1/2} to every block");
  parseval->add_option("file", path, "GFrameDocument")->required();
  parseval->add_option("--out", options.out, "write the transformed family here");
  add_common(parseval, options, flags);

  auto* suite = app.add_subcommand("paper-suite", "run the worked-example battery");
  suite->add_option("--dim-scale", options.dim_scale, "grow every truncation by K");
  add_common(suite, options, flags);
  suite->add_option("--search", flags.search, "search budget for examples beyond the cap");

  auto* export_cmd = app.add_subcommand("export-examples", "write the example families as documents");
  export_cmd->add_option("dir", dir, "output directory")->required();
  export_cmd->add_option("--dim-scale", options.dim_scale, "grow every truncation by K");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : gweave::cli::kExitInputError;
  }

  options.cap = flags.cap.value_or(gweave::cli::default_cap());
  options.search_budget = flags.search;

  try {
    CommandOutcome outcome;
    if (*bounds) {
      outcome = gweave::cli::cmd_bounds(path, options);
    } else if (*woven) {
      outcome = gweave::cli::cmd_woven(path, path2, options);
    } else if (*check) {
      outcome = gweave::cli::cmd_check(path, kind, path2, options);
    } else if (*dual) {
      outcome = gweave::cli::cmd_dual(path, options);
    } else if (*parseval) {
      outcome = gweave::cli::cmd_transform_parseval(path, options);
    } else if (*suite) {
      outcome = gweave::cli::cmd_paper_suite(options);
    } else {
      outcome = gweave::cli::cmd_export_examples(dir, options);
    }
    if (flags.json) {
      std::cout << outcome.report.dump(2) << "\n";
    } else {
      std::cout << outcome.text;
    }
    return outcome.exit_code;
  } catch (const gweave::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return gweave::cli::kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return gweave::cli::kExitInputError;
  }
}
