#pragma once

#include <string>

namespace cluster {

// Verbosity follows the CLUSTER_LOG environment variable (trace, debug, info, warn, error, off).
void log_init_from_env();
void log_debug(const std::string& msg);
void log_info(const std::string& msg);
void log_warn(const std::string& msg);

}  // namespace cluster
