#pragma once

#include <string>

namespace bovw {

enum class LogLevel { Debug = 0, Info = 1, Warn = 2, Quiet = 3 };

void set_log_level(LogLevel level);
void log_info(const std::string& msg);
void log_warn(const std::string& msg);

}  // namespace bovw
