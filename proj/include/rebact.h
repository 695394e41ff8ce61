/* rebact.h — C API for the REBACT crafting-agent harness.
 *
 * All objects are opaque handles. Functions return RBA_OK (0) on success or
 * a nonzero error code; rba_last_error() returns a human-readable message
 * for the most recent failure on the calling thread.
 *
 * Strings returned through `char **` out-parameters are heap-allocated and
 * must be released with rba_string_free(). Strings returned as `const char *`
 * are owned by the library or the handle they came from.
 */
#ifndef REBACT_H
#define REBACT_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
    RBA_OK = 0,
    RBA_ERR_INVALID_ARGUMENT = 1,
    RBA_ERR_CONFIG = 2,    /* bad config, task file, or reference */
    RBA_ERR_IO = 3,        /* filesystem failure */
    RBA_ERR_PARSE = 4,     /* malformed input (task/log/response) */
    RBA_ERR_INTEGRITY = 5, /* log/result consistency violation */
    RBA_ERR_BACKEND = 6,   /* completion backend failure */
    RBA_ERR_UNSOLVABLE = 7,
    RBA_ERR_INTERNAL = 8
};

typedef struct rba_task_set rba_task_set;
typedef struct rba_env rba_env;
typedef struct rba_session rba_session;
typedef struct rba_run_config rba_run_config;

const char *rba_version(void);

/* Message for the last failed rba_* call on this thread. Never NULL. */
const char *rba_last_error(void);

void rba_string_free(char *s);

/* ---- task sets ---------------------------------------------------------- */

/* Load a JSON task file (array of task objects, or a single object). */
int rba_task_set_load(const char *path, rba_task_set **out);

/* Generate `count` tasks whose optimal solution needs exactly `depth` craft
 * commands, drawn from a synthetic recipe universe. Deterministic in
 * (universe_seed, depth, count, seed). */
int rba_task_set_generate(unsigned long long universe_seed, int depth,
                          int count, unsigned long long seed,
                          rba_task_set **out);

int rba_task_set_save(const rba_task_set *set, const char *path);
size_t rba_task_set_size(const rba_task_set *set);

/* Task id at `index`, or NULL if out of range. Owned by the set. */
const char *rba_task_set_id(const rba_task_set *set, size_t index);

void rba_task_set_free(rba_task_set *set);

/* ---- crafting environment ----------------------------------------------- */

int rba_env_create(const rba_task_set *set, const char *task_id,
                   rba_env **out);

/* Execute one command line; *observation_out receives the observation text. */
int rba_env_exec(rba_env *env, const char *command_line,
                 char **observation_out);

int rba_env_description(const rba_env *env, char **out);
int rba_env_inventory(const rba_env *env, char **out);
int rba_env_goal_reached(const rba_env *env, int *out);
int rba_env_reset(rba_env *env);
void rba_env_free(rba_env *env);

/* ---- line-protocol session (RESET / commands / QUIT) --------------------- */

int rba_session_create(const rba_task_set *set, rba_session **out);

/* Feed one input line (without trailing newline). *reply_out receives the
 * full reply block, terminated by a blank line. *closed_out is set to 1
 * after QUIT. */
int rba_session_line(rba_session *session, const char *line,
                     char **reply_out, int *closed_out);

void rba_session_free(rba_session *session);

/* ---- batch runs and reports ---------------------------------------------- */

int rba_run_config_new(rba_run_config **out);

/* Merge a structured JSON config file into the config. */
int rba_run_config_load(rba_run_config *cfg, const char *path);

/* Override a single key. Keys: agent, backend, tasks, out, format,
 * budget, window, seed, jobs, max_parse_retries, template. */
int rba_run_config_set(rba_run_config *cfg, const char *key,
                       const char *value);

/* Run the batch: writes per-episode JSONL logs, results.json, summary.txt
 * and summary.csv under the output directory, then verifies the logs
 * against the results. *summary_out receives the summary table. */
int rba_run_execute(const rba_run_config *cfg, char **summary_out);

void rba_run_config_free(rba_run_config *cfg);

/* Re-aggregate a finished run directory, verifying log/result consistency. */
int rba_report(const char *out_dir, char **summary_out);

#ifdef __cplusplus
}
#endif

#endif /* REBACT_H */
