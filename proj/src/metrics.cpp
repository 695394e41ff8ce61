#include "metrics.hpp"

#include "util.hpp"

#include <map>

namespace rebact::metrics {

Summary aggregate(const std::vector<agent::EpisodeResult> &results, const std::string &label) {
    if (results.empty()) throw EmptyInput("aggregate: no episode results");
    Summary s;
    s.method = label;
    s.n_tasks = (int)results.size();
    long successes = 0, steps = 0, modifications = 0;
    double score = 0, calls = 0, retries = 0;
    for (const auto &r : results) {
        successes += r.success ? 1 : 0;
        score += r.score;
        calls += r.llm_calls;
        retries += r.retries;
        steps += r.steps;
        modifications += r.modifications;
    }
    s.success_rate = 100.0 * (double)successes / s.n_tasks;
    s.avg_score = score / s.n_tasks;
    s.avg_llm_calls = calls / s.n_tasks;
    s.avg_retries = retries / s.n_tasks;
    s.modification_proportion = steps > 0 ? (double)modifications / (double)steps : 0.0;
    return s;
}

namespace {

const char *kColumns[] = {"method",        "n_tasks",       "success_rate",
                          "avg_score",     "avg_llm_calls", "modification_proportion",
                          "avg_retries"};

std::vector<std::string> row_values(const Summary &s) {
    return {s.method,
            std::to_string(s.n_tasks),
            format_2dp(s.success_rate),
            format_2dp(s.avg_score),
            format_2dp(s.avg_llm_calls),
            format_2dp(s.modification_proportion),
            format_2dp(s.avg_retries)};
}

std::string csv_escape(const std::string &value) {
    if (value.find_first_of(",\"\n") == std::string::npos) return value;
    std::string out = "\"";
    for (char c : value) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace

std::string render_table(const std::vector<Summary> &summaries) {
    if (summaries.empty()) throw EmptyInput("render_table: no summaries");
    constexpr int n = 7;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> width(n);
    for (int c = 0; c < n; ++c) width[c] = std::string(kColumns[c]).size();
    for (const auto &s : summaries) {
        rows.push_back(row_values(s));
        for (int c = 0; c < n; ++c) width[c] = std::max(width[c], rows.back()[c].size());
    }
    auto pad = [&](const std::string &value, std::size_t w, bool left) {
        std::string spaces(w - value.size(), ' ');
        return left ? value + spaces : spaces + value;
    };
    std::string out;
    for (int c = 0; c < n; ++c)
        out += (c ? "  " : "") + pad(kColumns[c], width[c], c == 0);
    out += "\n";
    for (const auto &row : rows) {
        for (int c = 0; c < n; ++c) out += (c ? "  " : "") + pad(row[c], width[c], c == 0);
        out += "\n";
    }
    return out;
}

std::string render_csv(const std::vector<Summary> &summaries) {
    if (summaries.empty()) throw EmptyInput("render_csv: no summaries");
    std::string out;
    for (int c = 0; c < 7; ++c) out += std::string(c ? "," : "") + kColumns[c];
    out += "\n";
    for (const auto &s : summaries) {
        auto row = row_values(s);
        for (int c = 0; c < 7; ++c) out += (c ? "," : "") + csv_escape(row[c]);
        out += "\n";
    }
    return out;
}

RecountedEpisode recount(const std::vector<agent::CallRecord> &records) {
    RecountedEpisode e;
    for (const auto &r : records) {
        ++e.llm_calls;
        if (r.executed) {
            ++e.steps;
            if (r.source == protocol::ExecSource::Modified) ++e.modifications;
        }
        if (!r.parse_ok) ++e.retries;
    }
    return e;
}

void recount_check(const std::vector<agent::CallRecord> &records,
                   const std::vector<agent::EpisodeResult> &results) {
    std::map<std::string, std::vector<agent::CallRecord>> by_episode;
    for (const auto &r : records) by_episode[r.episode_id].push_back(r);

    std::map<std::string, const agent::EpisodeResult *> by_task;
    for (const auto &r : results) by_task.emplace(r.task_id, &r);

    for (const auto &[episode, recs] : by_episode)
        if (!by_task.count(episode))
            throw IntegrityError("episode '" + episode + "': log records but no result entry");

    for (const auto &r : results) {
        auto it = by_episode.find(r.task_id);
        RecountedEpisode e =
            it == by_episode.end() ? RecountedEpisode{} : recount(it->second);
        auto mismatch = [&](const char *field, int log_value, int result_value) {
            throw IntegrityError("episode '" + r.task_id + "': " + field + " log=" +
                                 std::to_string(log_value) +
                                 " results=" + std::to_string(result_value));
        };
        if (e.llm_calls != r.llm_calls) mismatch("llm_calls", e.llm_calls, r.llm_calls);
        if (e.steps != r.steps) mismatch("steps", e.steps, r.steps);
        if (e.modifications != r.modifications)
            mismatch("modifications", e.modifications, r.modifications);
        if (e.retries != r.retries) mismatch("retries", e.retries, r.retries);
    }
}

} // namespace rebact::metrics
