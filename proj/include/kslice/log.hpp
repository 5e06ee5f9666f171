#pragma once

// Diagnostics go to stderr. The level comes from KS_LOG (error, info, debug);
// the default is error.

#include <spdlog/spdlog.h>

namespace kslice::log {

void init_from_env();

using spdlog::debug;
using spdlog::error;
using spdlog::info;

}  // namespace kslice::log
