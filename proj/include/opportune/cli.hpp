#pragma once

#include <string>
#include <vector>

#include "opportune/config.hpp"

namespace opportune::cli {

/// "key=value" strings from repeated --set flags.
Overrides parse_overrides(const std::vector<std::string>& kv_flags);

struct RunArgs {
  std::string scenario_path;
  std::vector<std::string> set_flags;
  std::string out_dir;  // empty: use scenario Report.outputDir
};

struct BatchArgs {
  std::string scenario_path;
  std::vector<std::string> set_flags;
  std::vector<std::string> protocols{"epidemic", "prophet"};
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  unsigned jobs = 1;
  std::string out_dir;
};

struct ValidateArgs {
  std::string scenario_path;
  std::vector<std::string> set_flags;
};

int cmd_run(const RunArgs& args);
int cmd_batch(const BatchArgs& args);
int cmd_validate(const ValidateArgs& args);

}  // namespace opportune::cli
