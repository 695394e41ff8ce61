// Command-line front-end for the REBACT harness. Only the public C API is
// used; everything else lives behind the shared library.

#include "rebact.h"

#include "CLI11.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cstdio>
#include <cstring>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

namespace {

int exit_code_for(int rba_code) {
    switch (rba_code) {
    case RBA_OK: return 0;
    case RBA_ERR_INTEGRITY: return 3;
    case RBA_ERR_CONFIG:
    case RBA_ERR_PARSE:
    case RBA_ERR_IO:
    case RBA_ERR_INVALID_ARGUMENT:
    case RBA_ERR_UNSOLVABLE: return 2;
    default: return 1;
    }
}

int report_failure(int rba_code) {
    std::cerr << "error: " << rba_last_error() << "\n";
    return exit_code_for(rba_code);
}

struct OwnedString {
    char *ptr = nullptr;
    ~OwnedString() { rba_string_free(ptr); }
};

// ---- run -------------------------------------------------------------------

struct RunArgs {
    std::string config_path;
    std::string agent = "rebact";
    std::string backend = "planner";
    std::string tasks;
    std::string out = "out";
    std::string format = "textcraft";
    std::string template_path;
    int budget = 40;
    int window = 1;
    unsigned long long seed = 0;
    int jobs = 1;
    int max_parse_retries = 2;
};

int cmd_run(const RunArgs &args, const CLI::App &sub) {
    rba_run_config *cfg = nullptr;
    if (int rc = rba_run_config_new(&cfg); rc != RBA_OK) return report_failure(rc);

    auto set = [&](const char *key, const std::string &value) {
        return rba_run_config_set(cfg, key, value.c_str());
    };

    int rc = RBA_OK;
    if (!args.config_path.empty()) rc = rba_run_config_load(cfg, args.config_path.c_str());

    struct Override {
        const char *flag;
        const char *key;
        std::string value;
    };
    const std::vector<Override> overrides = {
        {"--agent", "agent", args.agent},
        {"--backend", "backend", args.backend},
        {"--tasks", "tasks", args.tasks},
        {"--out", "out", args.out},
        {"--format", "format", args.format},
        {"--template", "template", args.template_path},
        {"--budget", "budget", std::to_string(args.budget)},
        {"--window", "window", std::to_string(args.window)},
        {"--seed", "seed", std::to_string(args.seed)},
        {"--jobs", "jobs", std::to_string(args.jobs)},
        {"--max-parse-retries", "max_parse_retries", std::to_string(args.max_parse_retries)},
    };
    for (const auto &o : overrides) {
        if (rc != RBA_OK) break;
        // Flags the user did not pass fall back to the config file's values.
        bool given = sub.count(o.flag) > 0;
        bool required_default = args.config_path.empty();
        if (given || (required_default && !o.value.empty())) rc = set(o.key, o.value);
    }

    OwnedString summary;
    if (rc == RBA_OK) rc = rba_run_execute(cfg, &summary.ptr);
    rba_run_config_free(cfg);
    if (rc != RBA_OK) return report_failure(rc);
    std::cout << summary.ptr;
    return 0;
}

// ---- report ----------------------------------------------------------------

int cmd_report(const std::string &dir) {
    OwnedString summary;
    int rc = rba_report(dir.c_str(), &summary.ptr);
    if (rc != RBA_OK) return report_failure(rc);
    std::cout << summary.ptr;
    return 0;
}

// ---- gen -------------------------------------------------------------------

int cmd_gen(int depth, int count, unsigned long long seed, unsigned long long universe_seed,
            const std::string &out) {
    rba_task_set *set = nullptr;
    int rc = rba_task_set_generate(universe_seed, depth, count, seed, &set);
    if (rc != RBA_OK) return report_failure(rc);
    rc = rba_task_set_save(set, out.c_str());
    size_t n = rba_task_set_size(set);
    rba_task_set_free(set);
    if (rc != RBA_OK) return report_failure(rc);
    std::cout << "wrote " << n << " tasks to " << out << "\n";
    return 0;
}

// ---- serve -----------------------------------------------------------------

int serve_stdio(const rba_task_set *tasks) {
    rba_session *session = nullptr;
    if (int rc = rba_session_create(tasks, &session); rc != RBA_OK)
        return report_failure(rc);
    std::string line;
    while (std::getline(std::cin, line)) {
        OwnedString reply;
        int closed = 0;
        int rc = rba_session_line(session, line.c_str(), &reply.ptr, &closed);
        if (rc != RBA_OK) {
            rba_session_free(session);
            return report_failure(rc);
        }
        std::cout << reply.ptr << std::flush;
        if (closed) break;
    }
    rba_session_free(session);
    return 0;
}

/// Reads newline-terminated lines from a socket.
class LineReader {
public:
    explicit LineReader(int fd) : fd_(fd) {}

    bool next(std::string &line) {
        for (;;) {
            auto nl = buffer_.find('\n');
            if (nl != std::string::npos) {
                line = buffer_.substr(0, nl);
                buffer_.erase(0, nl + 1);
                return true;
            }
            char chunk[4096];
            ssize_t got = ::recv(fd_, chunk, sizeof(chunk), 0);
            if (got <= 0) return false;
            buffer_.append(chunk, (size_t)got);
        }
    }

private:
    int fd_;
    std::string buffer_;
};

bool send_all(int fd, const char *data, size_t len) {
    size_t sent = 0;
    while (sent < len) {
        ssize_t n = ::send(fd, data + sent, len - sent, 0);
        if (n <= 0) return false;
        sent += (size_t)n;
    }
    return true;
}

void serve_connection(int fd, const rba_task_set *tasks) {
    rba_session *session = nullptr;
    if (rba_session_create(tasks, &session) != RBA_OK) {
        ::close(fd);
        return;
    }
    LineReader reader(fd);
    std::string line;
    while (reader.next(line)) {
        OwnedString reply;
        int closed = 0;
        if (rba_session_line(session, line.c_str(), &reply.ptr, &closed) != RBA_OK) break;
        if (!send_all(fd, reply.ptr, std::strlen(reply.ptr))) break;
        if (closed) break;
    }
    rba_session_free(session);
    ::close(fd);
}

int serve_tcp(const rba_task_set *tasks, int port) {
    int listener = ::socket(AF_INET, SOCK_STREAM, 0);
    if (listener < 0) {
        std::perror("socket");
        return 1;
    }
    int yes = 1;
    ::setsockopt(listener, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));

    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = htons((uint16_t)port);
    if (::bind(listener, (sockaddr *)&addr, sizeof(addr)) < 0) {
        std::perror("bind");
        ::close(listener);
        return 1;
    }
    if (::listen(listener, 16) < 0) {
        std::perror("listen");
        ::close(listener);
        return 1;
    }
    socklen_t len = sizeof(addr);
    ::getsockname(listener, (sockaddr *)&addr, &len);
    std::cout << "LISTENING " << ntohs(addr.sin_port) << "\n" << std::flush;

    for (;;) {
        int conn = ::accept(listener, nullptr, nullptr);
        if (conn < 0) continue;
        std::thread(serve_connection, conn, tasks).detach();
    }
}

int cmd_serve(const std::string &tasks_path, bool use_stdio, int port) {
    rba_task_set *tasks = nullptr;
    if (int rc = rba_task_set_load(tasks_path.c_str(), &tasks); rc != RBA_OK)
        return report_failure(rc);
    int rc = use_stdio ? serve_stdio(tasks) : serve_tcp(tasks, port);
    rba_task_set_free(tasks);
    return rc;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"REBACT crafting-agent harness"};
    app.require_subcommand(1);

    RunArgs run_args;
    auto *run = app.add_subcommand("run", "Run a batch evaluation");
    run->add_option("--config", run_args.config_path, "Structured config file (flags override)");
    run->add_option("--agent", run_args.agent, "Agent policy: rebact|react");
    run->add_option("--backend", run_args.backend,
                    "Backend: kind name (planner|faulty) or config file");
    run->add_option("--tasks", run_args.tasks, "Task file (JSON)");
    run->add_option("--budget", run_args.budget, "Max environment actions per episode");
    run->add_option("--window", run_args.window, "Reflection window (webshop format)");
    run->add_option("--seed", run_args.seed, "Run seed");
    run->add_option("--jobs", run_args.jobs, "Concurrent episodes");
    run->add_option("--out", run_args.out, "Output directory");
    run->add_option("--format", run_args.format, "Prompt format: textcraft|webshop|alfworld");
    run->add_option("--template", run_args.template_path, "Prompt template override file");
    run->add_option("--max-parse-retries", run_args.max_parse_retries,
                    "Format-retry budget per step");

    std::string report_dir = "out";
    auto *report = app.add_subcommand("report", "Re-aggregate a run directory");
    report->add_option("dir", report_dir, "Run directory");

    std::string serve_tasks;
    bool serve_use_stdio = false;
    int serve_port = -1;
    auto *serve = app.add_subcommand("serve", "Serve environments over a line protocol");
    serve->add_option("--tasks", serve_tasks, "Task file (JSON)")->required();
    serve->add_flag("--stdio", serve_use_stdio, "Serve one session on stdin/stdout");
    serve->add_option("--port", serve_port, "TCP port (0 picks a free port)");

    int gen_depth = 1, gen_count = 10;
    unsigned long long gen_seed = 0, gen_universe_seed = 0;
    std::string gen_out;
    auto *gen = app.add_subcommand("gen", "Generate a task file");
    gen->add_option("--depth", gen_depth, "Craft commands in the optimal plan")->required();
    gen->add_option("--n", gen_count, "Number of tasks")->required();
    gen->add_option("--seed", gen_seed, "Generation seed");
    gen->add_option("--universe-seed", gen_universe_seed, "Recipe universe seed");
    gen->add_option("--out", gen_out, "Output task file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (run->parsed()) return cmd_run(run_args, *run);
    if (report->parsed()) return cmd_report(report_dir);
    if (gen->parsed()) return cmd_gen(gen_depth, gen_count, gen_seed, gen_universe_seed, gen_out);
    if (serve->parsed()) {
        if (!serve_use_stdio && serve_port < 0) {
            std::cerr << "error: serve needs --stdio or --port\n";
            return 2;
        }
        return cmd_serve(serve_tasks, serve_use_stdio, serve_port);
    }
    return 2;
}
