#pragma once

#include <memory>

#include <spdlog/logger.h>

namespace lsi {

/// Shared library logger (stderr). The level is read once from LSI_LOG_LEVEL
/// (trace, debug, info, warn, error, off); default is info.
spdlog::logger& logger();

void set_log_level(spdlog::level::level_enum level);

}  // namespace lsi
