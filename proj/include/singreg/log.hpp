// Copyright 2026 The singreg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <utility>

#include <spdlog/logger.h>

namespace singreg::log {

/// Library logger writing to stderr. Its level comes from the SINGREG_LOG
/// environment variable (trace, debug, info, warn, error, off; default warn).
spdlog::logger& logger();

/// Re-reads SINGREG_LOG.
void reload_level();

template <class... Args>
void debug(fmt::format_string<Args...> format, Args&&... args) {
  logger().debug(format, std::forward<Args>(args)...);
}

template <class... Args>
void info(fmt::format_string<Args...> format, Args&&... args) {
  logger().info(format, std::forward<Args>(args)...);
}

template <class... Args>
void warn(fmt::format_string<Args...> format, Args&&... args) {
  logger().warn(format, std::forward<Args>(args)...);
}

}  // namespace singreg::log
