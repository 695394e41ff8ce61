#pragma once

#include "protocol.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rebact::agent {

struct CorruptLog : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One trajectory-log record per LLM call. JSONL field order is fixed:
/// {episode_id, step, call_index, prompt_sha256, response, parsed, exec,
///  observation, duration_ms}. `parsed`, `exec` and `observation` are null
/// for calls whose response failed to parse.
struct CallRecord {
    std::string episode_id;
    int step = 0;       // executed actions before this call
    int call_index = 0; // per-episode call counter
    std::string prompt_sha256;
    std::string response;

    bool parse_ok = false;
    std::vector<protocol::Verdict> verdicts;
    std::vector<std::string> modified;
    std::string next_action;

    bool executed = false;
    std::string action;
    protocol::ExecSource source = protocol::ExecSource::Next;
    std::vector<protocol::Violation> violations;
    std::string observation;

    double duration_ms = 0.0;
};

std::string call_record_to_jsonl(const CallRecord &record);

/// Parse one JSONL line; `line_number` is used in error messages.
CallRecord call_record_from_jsonl(const std::string &line, std::size_t line_number);

void write_trajectory_log(const std::vector<CallRecord> &records, const std::string &path);

/// Read a JSONL trajectory log. Malformed or truncated lines raise
/// CorruptLog with the offending line number; an empty file is an empty log.
std::vector<CallRecord> read_trajectory_log(const std::string &path);

std::string to_string(protocol::ExecSource source);
std::string to_string(protocol::Violation violation);
std::string to_string(protocol::Verdict verdict);

} // namespace rebact::agent
