#include "cluster/log.hpp"

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <mutex>

namespace cluster {

namespace {

spdlog::logger& logger() {
  static std::once_flag once;
  static std::shared_ptr<spdlog::logger> lg;
  std::call_once(once, [] {
    lg = spdlog::stderr_color_mt("cluster");
    lg->set_pattern("[%l] %v");
    const char* env = std::getenv("CLUSTER_LOG");
    lg->set_level(env ? spdlog::level::from_str(env) : spdlog::level::warn);
  });
  return *lg;
}

}  // namespace

void log_init_from_env() { logger(); }
void log_debug(const std::string& msg) { logger().debug(msg); }
void log_info(const std::string& msg) { logger().info(msg); }
void log_warn(const std::string& msg) { logger().warn(msg); }

}  // namespace cluster
