// The five subcommands.  Each returns a process exit code (0 on success,
// 4 when a verify check fails); configuration, physics and I/O failures
// propagate as the corresponding exceptions for main() to map.
#pragma once

#include "config.hpp"

namespace casimir_spin::cli {

// Test fixture for the verify command: deliberately corrupt one formula so
// the oracle suite demonstrably catches it.
enum class FaultInjection { none, prefactor, sign };

int cmd_depol(const RunConfig& cfg);
int cmd_mode_torque(const RunConfig& cfg);
int cmd_vacuum(const RunConfig& cfg);
int cmd_verify(const RunConfig& cfg, FaultInjection fault);
int cmd_sweep(const RunConfig& cfg);

}  // namespace casimir_spin::cli
