#pragma once

#include <array>
#include <string_view>

#include "lsi_cli/config.hpp"

namespace lsi::cli {

inline constexpr std::array<std::string_view, 8> kSubcommands = {
    "extract-graph", "node2vec",      "train-sgns", "filter-corpus",
    "impute",        "align-baseline", "evaluate",  "pipeline"};

enum ExitCode : int { kOk = 0, kInputError = 1, kInternalError = 2 };

/// Runs one stage; throws InputError on bad input and other exceptions on
/// internal failures. Every stage writes <output_dir>/manifests/<name>.json.
void run_stage(std::string_view name, const PipelineConfig& cfg);

/// run_stage with exceptions mapped to exit codes (and logged).
int run_subcommand(std::string_view name, const PipelineConfig& cfg);

/// Full command line entry point: "lsi [--config F] <subcommand> [flags]".
int run_cli(int argc, const char* const* argv);

}  // namespace lsi::cli
