#ifndef HARDMONO_PIPELINE_HPP
#define HARDMONO_PIPELINE_HPP

#include <string>
#include <vector>

#include "hardmono/config.hpp"

namespace hardmono {

struct PipelineConfig {
  DatasetSpec dataset;
  TrainConfig train;
  std::string out_dir;
  int ensemble_members = 1;  // seeds train.seed .. train.seed + members - 1
};

struct PipelineError : std::runtime_error {
  std::string stage;
  PipelineError(std::string stage_, const std::string& msg)
      : std::runtime_error("[" + stage_ + "] " + msg), stage(std::move(stage_)) {}
};

// align -> oracle -> train (x members) -> predict -> evaluate.
// Returns the summary JSON text that was also written to
// <out_dir>/summary.json.
std::string run_pipeline(const PipelineConfig& config);

}  // namespace hardmono

#endif
