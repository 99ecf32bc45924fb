#pragma once

#include <cstdio>

namespace opportune {

enum class LogLevel { error = 0, warn = 1, info = 2, debug = 3 };

/// Threshold from OPPORTUNE_LOG (error|warn|info|debug|off); default info.
LogLevel log_threshold();

bool log_enabled(LogLevel level);

/// printf-style to stderr, filtered by OPPORTUNE_LOG.
void log_message(LogLevel level, const char* fmt, ...) __attribute__((format(printf, 2, 3)));

#define OPPORTUNE_LOG_ERROR(...) ::opportune::log_message(::opportune::LogLevel::error, __VA_ARGS__)
#define OPPORTUNE_LOG_WARN(...) ::opportune::log_message(::opportune::LogLevel::warn, __VA_ARGS__)
#define OPPORTUNE_LOG_INFO(...) ::opportune::log_message(::opportune::LogLevel::info, __VA_ARGS__)
#define OPPORTUNE_LOG_DEBUG(...) ::opportune::log_message(::opportune::LogLevel::debug, __VA_ARGS__)

}  // namespace opportune
