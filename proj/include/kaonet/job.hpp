#pragma once

#include <string>

#include "kaonet/keyvalue.hpp"

namespace kaonet {

// Commands: synth, analyze, cptest, simulate, verify, sweep.  The config
// document carries the command plus the sections it needs; reports are
// key/value documents with an optional tab-separated table, deterministic
// for identical configs.
struct RunResult {
  std::string report;
  int status = 0;  // 0 ok, 2 config error, 3 infeasible spectrum, 4 numerical
};

RunResult run(const KeyValueDoc& config);
RunResult run_config_text(const std::string& text);

}  // namespace kaonet
