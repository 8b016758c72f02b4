#pragma once

#include <iosfwd>

#include "nagflow/config.hpp"

namespace nagflow {

/// Runs the configured experiment, writes its CSV artifacts and a verdict
/// summary (one line per asserted check) to `log`. Returns 0 iff every
/// asserted check passed.
int execute(const ExperimentConfig& config, std::ostream& log);

}  // namespace nagflow
