#include "runner.hpp"

#include "task_io.hpp"
#include "util.hpp"

#include "json.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

namespace rebact::runner {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

std::string sanitize_id(const std::string &id) {
    std::string out;
    for (char c : id) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                  c == '-' || c == '_' || c == '.';
        out += ok ? c : '_';
    }
    return out.empty() ? "episode" : out;
}

int parse_int(const std::string &key, const std::string &value) {
    try {
        std::size_t used = 0;
        int v = std::stoi(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception &) {
        throw ConfigError("config key '" + key + "': '" + value + "' is not an integer");
    }
}

std::uint64_t parse_u64(const std::string &key, const std::string &value) {
    try {
        std::size_t used = 0;
        unsigned long long v = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception &) {
        throw ConfigError("config key '" + key + "': '" + value + "' is not an integer");
    }
}

ordered_json result_to_json(const agent::EpisodeResult &r) {
    ordered_json j;
    j["task_id"] = r.task_id;
    j["success"] = r.success;
    j["score"] = r.score;
    j["steps"] = r.steps;
    j["llm_calls"] = r.llm_calls;
    j["modifications"] = r.modifications;
    j["retries"] = r.retries;
    j["termination"] = r.termination;
    return j;
}

agent::EpisodeResult result_from_json(const ordered_json &j) {
    agent::EpisodeResult r;
    r.task_id = j.at("task_id").get<std::string>();
    r.success = j.at("success").get<bool>();
    r.score = j.at("score").get<int>();
    r.steps = j.at("steps").get<int>();
    r.llm_calls = j.at("llm_calls").get<int>();
    r.modifications = j.at("modifications").get<int>();
    r.retries = j.at("retries").get<int>();
    r.termination = j.at("termination").get<std::string>();
    return r;
}

} // namespace

void set_config_key(RunConfig &cfg, const std::string &key, const std::string &value) {
    if (key == "agent") {
        if (value == "rebact")
            cfg.agent.policy = backend::Policy::Rebact;
        else if (value == "react")
            cfg.agent.policy = backend::Policy::React;
        else
            throw ConfigError("unknown agent policy '" + value + "'");
    } else if (key == "backend") {
        cfg.backend_arg = value;
    } else if (key == "tasks") {
        cfg.tasks_path = value;
    } else if (key == "out") {
        cfg.out_dir = value;
    } else if (key == "format") {
        auto f = protocol::parse_format(value);
        if (!f) throw ConfigError("unknown format '" + value + "'");
        cfg.agent.format = *f;
    } else if (key == "budget") {
        cfg.agent.budget = parse_int(key, value);
        if (cfg.agent.budget < 1) throw ConfigError("budget must be >= 1");
    } else if (key == "window") {
        cfg.agent.window = parse_int(key, value);
        if (cfg.agent.window < 1) throw ConfigError("window must be >= 1");
    } else if (key == "seed") {
        cfg.agent.seed = parse_u64(key, value);
    } else if (key == "jobs") {
        cfg.jobs = parse_int(key, value);
        if (cfg.jobs < 1) throw ConfigError("jobs must be >= 1");
    } else if (key == "max_parse_retries") {
        cfg.agent.max_parse_retries = parse_int(key, value);
        if (cfg.agent.max_parse_retries < 0)
            throw ConfigError("max_parse_retries must be >= 0");
    } else if (key == "template") {
        cfg.agent.template_path = value;
    } else {
        throw ConfigError("unknown config key '" + key + "'");
    }
}

void merge_config_file(RunConfig &cfg, const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    ordered_json j;
    try {
        j = ordered_json::parse(buf.str());
    } catch (const nlohmann::json::parse_error &e) {
        throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
    for (const auto &[key, value] : j.items()) {
        if (value.is_string())
            set_config_key(cfg, key, value.get<std::string>());
        else
            set_config_key(cfg, key, value.dump());
    }
}

void finalize_config(RunConfig &cfg) {
    if (cfg.tasks_path.empty()) throw ConfigError("no task file configured");
    cfg.backend = backend::backend_spec_from_arg(cfg.backend_arg);
}

namespace {

struct EpisodeOutput {
    agent::EpisodeResult result;
    std::vector<agent::CallRecord> records;
};

EpisodeOutput run_one(const RunConfig &cfg, const craft::CraftTask &task,
                      std::uint64_t episode_seed) {
    EpisodeOutput out;
    craft::Env env(task);
    auto probe = [&env]() { return env.inventory(); };
    auto be = backend::make_backend(cfg.backend, task, probe, cfg.agent.policy, episode_seed);
    auto sink = [&out](const agent::CallRecord &r) { out.records.push_back(r); };
    try {
        out.result = agent::run_episode(cfg.agent, env, *be, sink);
    } catch (const backend::BackendError &e) {
        // Partial log is kept; the episode is a data-level failure.
        auto counters = metrics::recount(out.records);
        out.result.task_id = task.id;
        out.result.success = false;
        out.result.score = 0;
        out.result.steps = counters.steps;
        out.result.llm_calls = counters.llm_calls;
        out.result.modifications = counters.modifications;
        out.result.retries = counters.retries;
        out.result.termination = std::string("backend_error: ") + e.what();
    }
    return out;
}

} // namespace

std::string run_batch(const RunConfig &cfg) {
    auto tasks = craft::load_tasks(cfg.tasks_path);
    if (tasks.empty()) throw ConfigError("task file '" + cfg.tasks_path + "' holds no tasks");

    std::set<std::string> log_names;
    for (const auto &t : tasks)
        if (!log_names.insert(sanitize_id(t.id)).second)
            throw ConfigError("task ids collide after sanitizing: '" + t.id + "'");

    fs::create_directories(fs::path(cfg.out_dir) / "logs");

    std::vector<EpisodeOutput> outputs(tasks.size());
    std::atomic<std::size_t> cursor{0};
    std::exception_ptr failure;
    std::mutex failure_mu;

    auto worker = [&]() {
        for (;;) {
            std::size_t i = cursor.fetch_add(1);
            if (i >= tasks.size()) return;
            try {
                outputs[i] = run_one(cfg, tasks[i], mix_seed(cfg.agent.seed, i));
            } catch (...) {
                std::lock_guard lock(failure_mu);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };

    int jobs = std::min<std::size_t>(std::max(cfg.jobs, 1), tasks.size());
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto &t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    // Outputs are written in task order regardless of scheduling.
    std::vector<agent::EpisodeResult> results;
    std::vector<agent::CallRecord> all_records;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        const auto &out = outputs[i];
        results.push_back(out.result);
        all_records.insert(all_records.end(), out.records.begin(), out.records.end());
        agent::write_trajectory_log(
            out.records,
            (fs::path(cfg.out_dir) / "logs" / (sanitize_id(tasks[i].id) + ".jsonl")).string());
    }

    std::string label = backend::to_string(cfg.agent.policy);
    auto summary = metrics::aggregate(results, label);
    std::string table = metrics::render_table({summary});
    std::string csv = metrics::render_csv({summary});

    ordered_json results_doc;
    results_doc["method"] = label;
    results_doc["backend"] = cfg.backend.kind;
    results_doc["n_tasks"] = (int)tasks.size();
    auto episodes = ordered_json::array();
    for (const auto &r : results) episodes.push_back(result_to_json(r));
    results_doc["episodes"] = std::move(episodes);

    {
        std::ofstream out(fs::path(cfg.out_dir) / "results.json");
        if (!out) throw std::runtime_error("cannot write results.json");
        out << results_doc.dump(2) << "\n";
    }
    {
        std::ofstream out(fs::path(cfg.out_dir) / "summary.txt");
        out << table;
    }
    {
        std::ofstream out(fs::path(cfg.out_dir) / "summary.csv");
        out << csv;
    }

    // Self-check: the on-disk logs must recount to the results exactly.
    std::vector<agent::CallRecord> reread;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        auto log = agent::read_trajectory_log(
            (fs::path(cfg.out_dir) / "logs" / (sanitize_id(tasks[i].id) + ".jsonl")).string());
        reread.insert(reread.end(), log.begin(), log.end());
    }
    metrics::recount_check(reread, results);

    return table;
}

std::string report(const std::string &out_dir) {
    fs::path dir(out_dir);
    if (!fs::exists(dir / "results.json"))
        throw ConfigError("'" + out_dir + "' does not contain results.json");

    std::ifstream in(dir / "results.json");
    std::ostringstream buf;
    buf << in.rdbuf();
    ordered_json doc;
    try {
        doc = ordered_json::parse(buf.str());
    } catch (const nlohmann::json::parse_error &e) {
        throw agent::CorruptLog(std::string("results.json: ") + e.what());
    }

    std::vector<agent::EpisodeResult> results;
    try {
        for (const auto &j : doc.at("episodes")) results.push_back(result_from_json(j));
    } catch (const nlohmann::json::exception &e) {
        throw agent::CorruptLog(std::string("results.json: ") + e.what());
    }
    if (results.empty()) throw ConfigError("results.json holds no episodes");

    std::vector<agent::CallRecord> records;
    for (const auto &r : results) {
        fs::path log = dir / "logs" / (sanitize_id(r.task_id) + ".jsonl");
        if (!fs::exists(log))
            throw IntegrityError("episode '" + r.task_id + "': missing log file");
        auto recs = agent::read_trajectory_log(log.string());
        records.insert(records.end(), recs.begin(), recs.end());
    }
    metrics::recount_check(records, results);

    std::string label = doc.value("method", std::string("unknown"));
    auto summary = metrics::aggregate(results, label);
    return metrics::render_table({summary});
}

} // namespace rebact::runner
