#pragma once

// Command implementations behind the `mythforge` executable. Each returns the
// process exit code.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "mythforge/config.hpp"

namespace mythforge::commands {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,      // usage, config, parse errors
  kIntegrity = 2,  // build produced a structurally invalid dataset
  kValidation = 3, // integrity check or competency question failed
};

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

int cmd_build(const config::PipelineConfig& cfg, const std::filesystem::path& input,
              const std::filesystem::path& out_dir, Streams io);

// Writes validation-report.json into `report_dir` (default: the dataset's
// directory).
int cmd_validate(const config::PipelineConfig& cfg, const std::filesystem::path& dataset,
                 const std::filesystem::path& suite,
                 const std::optional<std::filesystem::path>& report_dir, Streams io);

int cmd_query(const config::PipelineConfig& cfg, const std::filesystem::path& dataset,
              const std::filesystem::path& query_file, Streams io);

int cmd_export(const config::PipelineConfig& cfg, const std::filesystem::path& dataset,
               const std::filesystem::path& out_dir, const std::string& work_slug, Streams io);

// Full command line: global `--config`, `--mode`, subcommands.
int run(int argc, const char* const* argv, Streams io);

}  // namespace mythforge::commands
