#pragma once

#include <string>

#include "vcc/config.hpp"

namespace vcc {

// Each command returns the process exit code: 0 success, 2 input error,
// 3 provider auth/availability, 4 data-contract violation, 5 fixture miss.
int cmd_extract(const PipelineConfig& cfg);
int cmd_embed(const PipelineConfig& cfg);
int cmd_detect(const PipelineConfig& cfg);
int cmd_validate(const PipelineConfig& cfg);
int cmd_evaluate(const PipelineConfig& cfg, const std::string& truth_path);
int cmd_bench_gen(const PipelineConfig& cfg, const std::string& pairs_path);
int cmd_report(const PipelineConfig& cfg);

int run_cli(int argc, char** argv);

}  // namespace vcc
