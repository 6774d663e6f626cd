#pragma once

#include <iosfwd>
#include <memory>

#include "thz/atmosphere.hpp"
#include "thz/config.hpp"
#include "thz/scenarios.hpp"

namespace thz {

enum ExitCode : int {
    kExitOk = 0,
    kExitDomainError = 1,
    kExitConfigError = 2,
    kExitInfeasible = 3,
};

AbsorptionModel make_absorption_model(const SimConfig& config);
RadioHardware make_hardware(const SimConfig& config);

/// Runs the configured scenario, writes its CSV files under config.output
/// and prints a one-line summary to `out`. Errors go to `err` and map to
/// the ExitCode values.
int run(const SimConfig& config, std::ostream& out, std::ostream& err);

} // namespace thz
