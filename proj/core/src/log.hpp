#pragma once

#include <memory>

#include <spdlog/spdlog.h>

namespace zsac {

// Shared stderr logger; level comes from ZSAC_LOG (trace|debug|info|warn|error|off).
std::shared_ptr<spdlog::logger> log();

}  // namespace zsac
