#pragma once

#include "entanglecert/config.hpp"

namespace entanglecert {

/// Dispatches a validated configuration to the engines and assembles the
/// result table, metadata echo included.
ResultTable run_command(const RunConfig& config);

}  // namespace entanglecert
