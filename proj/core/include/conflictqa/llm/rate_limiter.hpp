#pragma once

#include <chrono>
#include <mutex>

namespace conflictqa::llm {

/// Token-bucket limiter keyed to requests per minute. rpm <= 0 disables
/// limiting. acquire() blocks the calling thread until a token is available.
class RateLimiter {
 public:
  explicit RateLimiter(int requests_per_minute);

  void acquire();

 private:
  using Clock = std::chrono::steady_clock;
  std::mutex mutex_;
  double rpm_;
  double tokens_;
  Clock::time_point last_refill_;
};

}  // namespace conflictqa::llm
