#include "kslice/log.hpp"

#include <cstdlib>
#include <string_view>

#include <spdlog/sinks/stdout_sinks.h>

namespace kslice::log {

void init_from_env() {
  auto logger = spdlog::stderr_logger_mt("kslice");
  logger->set_pattern("[%l] %v");
  spdlog::set_default_logger(logger);

  spdlog::level::level_enum level = spdlog::level::err;
  if (const char* env = std::getenv("KS_LOG")) {
    const std::string_view v(env);
    if (v == "debug") level = spdlog::level::debug;
    else if (v == "info") level = spdlog::level::info;
  }
  spdlog::set_level(level);
}

}  // namespace kslice::log
