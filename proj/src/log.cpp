// Copyright 2026 The singreg Authors
// SPDX-License-Identifier: Apache-2.0

#include "singreg/log.hpp"

#include <cstdlib>
#include <string>

#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

namespace singreg::log {

namespace {

spdlog::level::level_enum level_from_env() {
  const char* value = std::getenv("SINGREG_LOG");
  if (value == nullptr || *value == '\0') return spdlog::level::warn;
  const auto level = spdlog::level::from_str(value);
  // from_str maps unknown names to off; keep the default instead.
  if (level == spdlog::level::off && std::string(value) != "off") return spdlog::level::warn;
  return level;
}

std::shared_ptr<spdlog::logger> make_logger() {
  auto sink = std::make_shared<spdlog::sinks::stderr_sink_mt>();
  auto out = std::make_shared<spdlog::logger>("singreg", std::move(sink));
  out->set_pattern("[singreg %l] %v");
  out->set_level(level_from_env());
  return out;
}

}  // namespace

spdlog::logger& logger() {
  static const std::shared_ptr<spdlog::logger> instance = make_logger();
  return *instance;
}

void reload_level() { logger().set_level(level_from_env()); }

}  // namespace singreg::log
