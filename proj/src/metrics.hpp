#pragma once

#include "agent.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace rebact::metrics {

struct EmptyInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct IntegrityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Aggregated quantities for one method over a batch of episodes.
/// modification_proportion is pooled over steps (call-weighted), not a mean
/// of per-episode ratios.
struct Summary {
    std::string method;
    int n_tasks = 0;
    double success_rate = 0.0; // percent
    double avg_score = 0.0;
    double avg_llm_calls = 0.0;
    double modification_proportion = 0.0;
    double avg_retries = 0.0;
};

Summary aggregate(const std::vector<agent::EpisodeResult> &results, const std::string &label);

/// Fixed-width table; two-decimal display throughout.
std::string render_table(const std::vector<Summary> &summaries);

/// CSV with columns method,n_tasks,success_rate,avg_score,avg_llm_calls,
/// modification_proportion,avg_retries; same values as the table.
std::string render_csv(const std::vector<Summary> &summaries);

/// Counters recomputed from a trajectory log, per episode.
struct RecountedEpisode {
    int llm_calls = 0;
    int steps = 0;
    int modifications = 0;
    int retries = 0;
};

RecountedEpisode recount(const std::vector<agent::CallRecord> &records);

/// Verify that recomputed log counters equal the result fields exactly.
/// Throws IntegrityError naming the first mismatching episode.
void recount_check(const std::vector<agent::CallRecord> &records,
                   const std::vector<agent::EpisodeResult> &results);

} // namespace rebact::metrics
