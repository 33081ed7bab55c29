#pragma once

#include <string>

#include "psp/config.hpp"

namespace psp {

/// Executes one CLI command (powers | kernels | verify | expand | approx).
/// Artifacts land under out_dir (falls back to cfg.outputs).  Returns the
/// process exit status: 0 when all requested checks pass.
int run_command(const std::string& command, const RunConfig& cfg, const std::string& out_dir = "");

}  // namespace psp
