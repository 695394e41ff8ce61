#pragma once

#include "backend.hpp"
#include "env.hpp"
#include "logging.hpp"
#include "protocol.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace rebact::agent {

using backend::Policy;

struct AgentConfig {
    Policy policy = Policy::Rebact;
    protocol::Format format = protocol::Format::Textcraft;
    int window = 1;
    int budget = 40; // max environment actions
    int max_parse_retries = 2;
    std::uint64_t seed = 0;
    std::string template_path; // optional override of the builtin template
};

enum class TrajectoryStatus { Running, Success, Failure, BudgetExhausted, ParseAbort };

std::string to_string(TrajectoryStatus s);

struct TrajectoryEntry {
    std::string action;
    std::string observation;
    protocol::ExecSource source = protocol::ExecSource::Next;
    std::vector<int> call_ids; // call indices that produced this action
};

struct Trajectory {
    std::string task_id;
    std::vector<TrajectoryEntry> entries; // append-only
    TrajectoryStatus status = TrajectoryStatus::Running;
};

struct EpisodeResult {
    std::string task_id;
    bool success = false;
    int score = 0; // 100 on success, 0 otherwise
    int steps = 0;
    int llm_calls = 0;
    int modifications = 0;
    int retries = 0; // calls whose response failed to parse
    std::string termination;
};

using CallSink = std::function<void(const CallRecord &)>;

/// Run one episode against the environment: each loop iteration builds the
/// prompt, calls the backend (with the format-reminder retry policy on
/// parse failures), executes exactly one environment action, and records
/// the step, until the goal is reached, the budget is exhausted, or retries
/// run out. Every LLM call is reported to the sink as it completes.
/// BackendError propagates after the log has been flushed.
EpisodeResult run_episode(const AgentConfig &cfg, craft::Env &env, backend::Backend &backend,
                          const CallSink &sink, Trajectory *trajectory_out = nullptr);

} // namespace rebact::agent
