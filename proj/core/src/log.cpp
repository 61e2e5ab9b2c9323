#include "lsi/log.hpp"

#include <cstdlib>
#include <string>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

namespace lsi {

namespace {

std::shared_ptr<spdlog::logger> make_logger() {
  auto log = spdlog::stderr_color_mt("lsi");
  log->set_pattern("[%H:%M:%S.%e] [%^%l%$] %v");
  spdlog::level::level_enum level = spdlog::level::info;
  if (const char* env = std::getenv("LSI_LOG_LEVEL")) {
    level = spdlog::level::from_str(env);
  }
  log->set_level(level);
  return log;
}

}  // namespace

spdlog::logger& logger() {
  static std::shared_ptr<spdlog::logger> instance = make_logger();
  return *instance;
}

void set_log_level(spdlog::level::level_enum level) { logger().set_level(level); }

}  // namespace lsi
