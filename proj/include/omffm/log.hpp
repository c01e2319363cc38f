#pragma once

namespace omffm {

enum class LogLevel { error = 0, warn = 1, info = 2, debug = 3 };

// Level comes from the OMFFM_LOG environment variable
// (error|warn|info|debug); default is warn.
LogLevel log_level();
bool log_enabled(LogLevel level);

void log_message(LogLevel level, const char* fmt, ...)
#if defined(__GNUC__) || defined(__clang__)
    __attribute__((format(printf, 2, 3)))
#endif
    ;

}  // namespace omffm

#define OMFFM_LOG_ERROR(...) ::omffm::log_message(::omffm::LogLevel::error, __VA_ARGS__)
#define OMFFM_LOG_WARN(...) ::omffm::log_message(::omffm::LogLevel::warn, __VA_ARGS__)
#define OMFFM_LOG_INFO(...) ::omffm::log_message(::omffm::LogLevel::info, __VA_ARGS__)
#define OMFFM_LOG_DEBUG(...) ::omffm::log_message(::omffm::LogLevel::debug, __VA_ARGS__)
