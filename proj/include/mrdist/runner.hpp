#pragma once

#include "mrdist/config.hpp"

#include <string>

namespace mrdist {

// Executes the pipeline named by [run] pipeline in the config, writing CSV
// data files and a summary.json into out_dir.  Returns the process exit
// code: 0 when every check passes, 2 when a check fails or a numerical
// error stops the run (the summary still records the failure and, for
// hypothesis failures, the failing clause).  ConfigError propagates to the
// caller before any result files are written.
int run_pipeline(const Config& cfg, const std::string& out_dir);

// Prints the requested catalog ("filters", "distributions", "batteries",
// "pipelines", or "all") to stdout.
int run_list(const std::string& what);

std::vector<std::string> pipeline_names();

} // namespace mrdist
