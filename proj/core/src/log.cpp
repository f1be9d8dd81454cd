#include "scriptorium/log.hpp"

#include <atomic>
#include <cctype>
#include <cstdio>
#include <cstdlib>

namespace scriptorium {

namespace {

LogLevel parse_env_level() {
  const char* raw = std::getenv("SCRIPTORIUM_LOG");
  if (!raw) return LogLevel::Warn;
  std::string v(raw);
  for (char& c : v) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (v == "error") return LogLevel::Error;
  if (v == "warn" || v == "warning") return LogLevel::Warn;
  if (v == "info") return LogLevel::Info;
  if (v == "debug") return LogLevel::Debug;
  return LogLevel::Warn;
}

std::atomic<int>& level_slot() {
  static std::atomic<int> level{static_cast<int>(parse_env_level())};
  return level;
}

const char* level_name(LogLevel level) {
  switch (level) {
    case LogLevel::Error: return "error";
    case LogLevel::Warn: return "warn";
    case LogLevel::Info: return "info";
    case LogLevel::Debug: return "debug";
  }
  return "?";
}

}  // namespace

LogLevel log_level() { return static_cast<LogLevel>(level_slot().load()); }

void set_log_level(LogLevel level) { level_slot().store(static_cast<int>(level)); }

void log_message(LogLevel level, const std::string& message) {
  if (static_cast<int>(level) > level_slot().load()) return;
  std::fprintf(stderr, "[scriptorium %s] %s\n", level_name(level), message.c_str());
}

}  // namespace scriptorium
