#include "rebact.h"

#include "agent.hpp"
#include "backends.hpp"
#include "runner.hpp"
#include "serve.hpp"
#include "task_io.hpp"
#include "taskgen.hpp"

#include <cstring>
#include <string>

using namespace rebact;

namespace {

thread_local std::string g_last_error = "no error";

char *dup_string(const std::string &s) {
    char *out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

int fail(int code, const std::string &message) {
    g_last_error = message;
    return code;
}

/// Translate C++ failures at the boundary into error codes.
template <typename Fn>
int guarded(Fn &&fn) {
    try {
        return fn();
    } catch (const backend::ConfigError &e) {
        return fail(RBA_ERR_CONFIG, e.what());
    } catch (const craft::TaskError &e) {
        return fail(RBA_ERR_PARSE, e.what());
    } catch (const craft::InsufficientUniverse &e) {
        return fail(RBA_ERR_UNSOLVABLE, e.what());
    } catch (const agent::CorruptLog &e) {
        return fail(RBA_ERR_INTEGRITY, e.what());
    } catch (const metrics::IntegrityError &e) {
        return fail(RBA_ERR_INTEGRITY, e.what());
    } catch (const backend::AuthError &e) {
        return fail(RBA_ERR_BACKEND, e.what());
    } catch (const backend::BackendError &e) {
        return fail(RBA_ERR_BACKEND, e.what());
    } catch (const std::invalid_argument &e) {
        return fail(RBA_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::exception &e) {
        return fail(RBA_ERR_IO, e.what());
    } catch (...) {
        return fail(RBA_ERR_INTERNAL, "unknown failure");
    }
}

} // namespace

struct rba_task_set {
    std::vector<craft::CraftTask> tasks;
};

struct rba_env {
    craft::Env env;
};

struct rba_session {
    serve::Session session;
};

struct rba_run_config {
    runner::RunConfig config;
};

extern "C" {

const char *rba_version(void) { return "1.0.0"; }

const char *rba_last_error(void) { return g_last_error.c_str(); }

void rba_string_free(char *s) { delete[] s; }

int rba_task_set_load(const char *path, rba_task_set **out) {
    if (!path || !out) return fail(RBA_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        auto set = new rba_task_set{craft::load_tasks(path)};
        *out = set;
        return RBA_OK;
    });
}

int rba_task_set_generate(unsigned long long universe_seed, int depth, int count,
                          unsigned long long seed, rba_task_set **out) {
    if (!out) return fail(RBA_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        auto universe = craft::make_universe(universe_seed);
        auto set = new rba_task_set{craft::generate_tasks(universe, depth, count, seed)};
        *out = set;
        return RBA_OK;
    });
}

int rba_task_set_save(const rba_task_set *set, const char *path) {
    if (!set || !path) return fail(RBA_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        craft::save_tasks(set->tasks, path);
        return RBA_OK;
    });
}

size_t rba_task_set_size(const rba_task_set *set) { return set ? set->tasks.size() : 0; }

const char *rba_task_set_id(const rba_task_set *set, size_t index) {
    if (!set || index >= set->tasks.size()) return nullptr;
    return set->tasks[index].id.c_str();
}

void rba_task_set_free(rba_task_set *set) { delete set; }

int rba_env_create(const rba_task_set *set, const char *task_id, rba_env **out) {
    if (!set || !task_id || !out) return fail(RBA_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        for (const auto &task : set->tasks) {
            if (task.id == task_id) {
                *out = new rba_env{craft::Env(task)};
                return RBA_OK;
            }
        }
        return fail(RBA_ERR_CONFIG, std::string("unknown task '") + task_id + "'");
    });
}

int rba_env_exec(rba_env *env, const char *command_line, char **observation_out) {
    if (!env || !command_line || !observation_out)
        return fail(RBA_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        *observation_out = dup_string(env->env.exec_line(command_line));
        return RBA_OK;
    });
}

int rba_env_description(const rba_env *env, char **out) {
    if (!env || !out) return fail(RBA_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        *out = dup_string(env->env.description());
        return RBA_OK;
    });
}

int rba_env_inventory(const rba_env *env, char **out) {
    if (!env || !out) return fail(RBA_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        *out = dup_string(craft::render_inventory(env->env.inventory()));
        return RBA_OK;
    });
}

int rba_env_goal_reached(const rba_env *env, int *out) {
    if (!env || !out) return fail(RBA_ERR_INVALID_ARGUMENT, "null argument");
    *out = env->env.goal_reached() ? 1 : 0;
    return RBA_OK;
}

int rba_env_reset(rba_env *env) {
    if (!env) return fail(RBA_ERR_INVALID_ARGUMENT, "null argument");
    env->env.reset();
    return RBA_OK;
}

void rba_env_free(rba_env *env) { delete env; }

int rba_session_create(const rba_task_set *set, rba_session **out) {
    if (!set || !out) return fail(RBA_ERR_INVALID_ARGUMENT, "null argument");
    *out = new rba_session{serve::Session(set->tasks)};
    return RBA_OK;
}

int rba_session_line(rba_session *session, const char *line, char **reply_out,
                     int *closed_out) {
    if (!session || !line || !reply_out)
        return fail(RBA_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        auto reply = session->session.handle_line(line);
        *reply_out = dup_string(reply.text);
        if (closed_out) *closed_out = reply.close ? 1 : 0;
        return RBA_OK;
    });
}

void rba_session_free(rba_session *session) { delete session; }

int rba_run_config_new(rba_run_config **out) {
    if (!out) return fail(RBA_ERR_INVALID_ARGUMENT, "null argument");
    *out = new rba_run_config{};
    return RBA_OK;
}

int rba_run_config_load(rba_run_config *cfg, const char *path) {
    if (!cfg || !path) return fail(RBA_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        runner::merge_config_file(cfg->config, path);
        return RBA_OK;
    });
}

int rba_run_config_set(rba_run_config *cfg, const char *key, const char *value) {
    if (!cfg || !key || !value) return fail(RBA_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        runner::set_config_key(cfg->config, key, value);
        return RBA_OK;
    });
}

int rba_run_execute(const rba_run_config *cfg, char **summary_out) {
    if (!cfg) return fail(RBA_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        runner::RunConfig config = cfg->config;
        runner::finalize_config(config);
        std::string table = runner::run_batch(config);
        if (summary_out) *summary_out = dup_string(table);
        return RBA_OK;
    });
}

void rba_run_config_free(rba_run_config *cfg) { delete cfg; }

int rba_report(const char *out_dir, char **summary_out) {
    if (!out_dir) return fail(RBA_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        std::string table = runner::report(out_dir);
        if (summary_out) *summary_out = dup_string(table);
        return RBA_OK;
    });
}

} // extern "C"
