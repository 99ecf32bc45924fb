#include "opportune/log.hpp"

#include <cstdarg>
#include <cstdlib>
#include <cstring>

namespace opportune {

LogLevel log_threshold() {
  static const LogLevel level = [] {
    const char* env = std::getenv("OPPORTUNE_LOG");
    if (env == nullptr) return LogLevel::info;
    if (std::strcmp(env, "debug") == 0) return LogLevel::debug;
    if (std::strcmp(env, "info") == 0) return LogLevel::info;
    if (std::strcmp(env, "warn") == 0) return LogLevel::warn;
    if (std::strcmp(env, "error") == 0) return LogLevel::error;
    if (std::strcmp(env, "off") == 0) return static_cast<LogLevel>(-1);
    return LogLevel::info;
  }();
  return level;
}

bool log_enabled(LogLevel level) {
  return static_cast<int>(level) <= static_cast<int>(log_threshold());
}

void log_message(LogLevel level, const char* fmt, ...) {
  if (!log_enabled(level)) return;
  static const char* const names[] = {"error", "warn", "info", "debug"};
  std::fprintf(stderr, "[%s] ", names[static_cast<int>(level)]);
  va_list args;
  va_start(args, fmt);
  std::vfprintf(stderr, fmt, args);
  va_end(args);
  std::fputc('\n', stderr);
}

}  // namespace opportune
