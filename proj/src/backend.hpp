#pragma once

#include "protocol.hpp"

#include <chrono>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace rebact::backend {

enum class Policy { Rebact, React };

std::string to_string(Policy p);

struct BackendError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AuthError : BackendError {
    using BackendError::BackendError;
};

struct DeadlineExceeded : BackendError {
    using BackendError::BackendError;
};

struct CompletionRequest {
    std::string prompt;
    // Episode context.
    std::string task_id;
    int step = 0;       // executed env actions so far
    int call_index = 0; // per-episode LLM call counter (retries included)
    protocol::Format format = protocol::Format::Textcraft;
    Policy policy = Policy::Rebact;
    /// Reflected previous actions (oldest first); empty on the first step.
    std::vector<std::string> window_actions;
    std::chrono::milliseconds deadline{0}; // zero = no deadline
};

/// Completion provider contract. Deterministic backends are pure functions
/// of the request and their internal script/seed state.
class Backend {
public:
    virtual ~Backend() = default;

    /// Returns the full response text. Throws BackendError (transport or
    /// exhaustion), AuthError, or DeadlineExceeded.
    virtual std::string complete(const CompletionRequest &req) = 0;

    virtual std::string kind() const = 0;
};

using BackendPtr = std::unique_ptr<Backend>;

} // namespace rebact::backend
