#include "log.hpp"

#include <cstdlib>

#include <spdlog/sinks/stdout_sinks.h>

namespace zsac {

std::shared_ptr<spdlog::logger> log() {
  static const std::shared_ptr<spdlog::logger> logger = [] {
    auto l = std::make_shared<spdlog::logger>(
        "zsac", std::make_shared<spdlog::sinks::stderr_sink_mt>());
    l->set_pattern("[%l] %v");
    auto level = spdlog::level::info;
    if (const char* env = std::getenv("ZSAC_LOG")) level = spdlog::level::from_str(env);
    l->set_level(level);
    return l;
  }();
  return logger;
}

}  // namespace zsac
