#pragma once

#include "agent.hpp"
#include "backends.hpp"
#include "metrics.hpp"

#include <string>

namespace rebact::runner {

using backend::ConfigError;
using metrics::IntegrityError;

struct RunConfig {
    agent::AgentConfig agent;
    backend::BackendSpec backend;
    std::string backend_arg = "planner"; // kind name or config path
    std::string tasks_path;
    std::string out_dir = "out";
    int jobs = 1;
};

/// Merge a structured JSON config file (keys: agent, backend, tasks, out,
/// format, budget, window, seed, jobs, max_parse_retries, template).
void merge_config_file(RunConfig &cfg, const std::string &path);

/// Apply a single string-valued override with the same keys.
void set_config_key(RunConfig &cfg, const std::string &key, const std::string &value);

/// Resolve backend_arg into the backend spec; validates files exist.
void finalize_config(RunConfig &cfg);

/// Run every task: per-episode JSONL logs under <out>/logs/, results.json,
/// summary.txt and summary.csv under <out>. Episodes run concurrently up to
/// `jobs`; outputs are byte-deterministic for a fixed config and seed
/// (timing fields aside). After writing, logs are read back and verified
/// against the results. Returns the summary table text.
std::string run_batch(const RunConfig &cfg);

/// Re-aggregate a run directory: verifies results.json against the logs and
/// returns the freshly rendered summary table.
std::string report(const std::string &out_dir);

} // namespace rebact::runner
