#ifndef WSCK_ENGINE_HPP
#define WSCK_ENGINE_HPP

#include <string>

namespace wsck {

struct RunResult {
  int status = 0;  // 0 = all checks passed, 1 = a check failed, 2 = bad config
  std::string json;
  std::string text;
};

/// Dispatch one command described by a JSON config; never throws.
RunResult run_command(const std::string& config_json);

/// Parallelism cap from CONFKIT_THREADS (>= 1).
int thread_cap();

}  // namespace wsck

#endif
