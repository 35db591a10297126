#include "conflictqa/llm/backend.hpp"

#include <stdexcept>
#include <thread>

#include "conflictqa/error.hpp"

namespace conflictqa::llm {

Completion complete(Backend& backend, const CompletionRequest& request,
                    const RetryPolicy& retry) {
  if (request.user.empty()) {
    throw std::invalid_argument("complete: request.user must be non-empty (tag=" + request.tag +
                                ")");
  }

  auto delay = retry.base_delay;
  for (int attempt = 0;; ++attempt) {
    try {
      return backend.complete_once(request);
    } catch (const AuthError&) {
      throw;
    } catch (const BackendError& e) {
      if (!e.transient() || attempt >= retry.max_retries) {
        throw BackendError("backend '" + backend.id() + "' failed (tag=" + request.tag +
                               ", attempts=" + std::to_string(attempt + 1) + "): " + e.what(),
                           false);
      }
      if (retry.sleep_between) std::this_thread::sleep_for(delay);
      delay *= 2;
    }
  }
}

}  // namespace conflictqa::llm
