#include "conflictqa/llm/rate_limiter.hpp"

#include <algorithm>
#include <thread>

namespace conflictqa::llm {

RateLimiter::RateLimiter(int requests_per_minute)
    : rpm_(requests_per_minute), tokens_(requests_per_minute), last_refill_(Clock::now()) {}

void RateLimiter::acquire() {
  if (rpm_ <= 0) return;

  for (;;) {
    std::chrono::milliseconds wait{0};
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto now = Clock::now();
      double elapsed_s = std::chrono::duration<double>(now - last_refill_).count();
      tokens_ = std::min(rpm_, tokens_ + elapsed_s * rpm_ / 60.0);
      last_refill_ = now;
      if (tokens_ >= 1.0) {
        tokens_ -= 1.0;
        return;
      }
      double deficit = 1.0 - tokens_;
      wait = std::chrono::milliseconds(static_cast<long>(deficit * 60000.0 / rpm_) + 1);
    }
    std::this_thread::sleep_for(wait);
  }
}

}  // namespace conflictqa::llm
