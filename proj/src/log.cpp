#include "bovw/log.hpp"

#include <atomic>
#include <cstdio>
#include <mutex>

namespace bovw {

namespace {
std::atomic<LogLevel> g_level{LogLevel::Info};
std::mutex g_mutex;  // keep lines from interleaving across worker threads
}  // namespace

void set_log_level(LogLevel level) { g_level.store(level); }

void log_info(const std::string& msg) {
  if (g_level.load() > LogLevel::Info) return;
  std::lock_guard<std::mutex> lock(g_mutex);
  std::fprintf(stderr, "[info] %s\n", msg.c_str());
}

void log_warn(const std::string& msg) {
  if (g_level.load() > LogLevel::Warn) return;
  std::lock_guard<std::mutex> lock(g_mutex);
  std::fprintf(stderr, "[warn] %s\n", msg.c_str());
}

}  // namespace bovw
