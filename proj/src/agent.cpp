#include "agent.hpp"

#include "util.hpp"

#include <chrono>

namespace rebact::agent {

using protocol::ExecChoice;
using protocol::ExecSource;
using protocol::Format;
using protocol::FormatError;
using protocol::PromptTemplate;
using protocol::ReflectionDecision;

std::string to_string(TrajectoryStatus s) {
    switch (s) {
    case TrajectoryStatus::Running: return "running";
    case TrajectoryStatus::Success: return "success";
    case TrajectoryStatus::Failure: return "failure";
    case TrajectoryStatus::BudgetExhausted: return "budget_exhausted";
    case TrajectoryStatus::ParseAbort: return "parse_abort";
    }
    return "unknown";
}

namespace {

struct StepOutcome {
    bool executed = false; // false => parse retries exhausted
};

class EpisodeRunner {
public:
    EpisodeRunner(const AgentConfig &cfg, craft::Env &env, backend::Backend &backend,
                  const CallSink &sink)
        : cfg_(cfg), env_(env), backend_(backend), sink_(sink),
          template_(cfg.template_path.empty()
                        ? (cfg.policy == Policy::React ? PromptTemplate::builtin_react()
                                                       : PromptTemplate::builtin(cfg.format))
                        : PromptTemplate::load_file(cfg.template_path)) {
        trajectory_.task_id = env.task().id;
    }

    EpisodeResult run() {
        while (trajectory_.status == TrajectoryStatus::Running) {
            if (env_.goal_reached()) {
                trajectory_.status = TrajectoryStatus::Success;
                break;
            }
            if ((int)trajectory_.entries.size() >= cfg_.budget) {
                trajectory_.status = TrajectoryStatus::BudgetExhausted;
                break;
            }
            StepOutcome outcome = step();
            if (!outcome.executed) trajectory_.status = TrajectoryStatus::ParseAbort;
        }
        return result();
    }

    const Trajectory &trajectory() const { return trajectory_; }

private:
    std::vector<std::pair<std::string, std::string>> history() const {
        std::vector<std::pair<std::string, std::string>> pairs;
        for (const auto &e : trajectory_.entries) pairs.push_back({e.action, e.observation});
        return pairs;
    }

    std::vector<std::string> window_actions(int count) const {
        std::vector<std::string> actions;
        int n = (int)trajectory_.entries.size();
        for (int i = n - count; i < n; ++i) actions.push_back(trajectory_.entries[i].action);
        return actions;
    }

    StepOutcome step() {
        auto pairs = history();
        int window = cfg_.policy == Policy::React
                         ? 0
                         : protocol::effective_window(cfg_.format, cfg_.window);
        auto rendered = template_.render(env_.task().exemplar_block, env_.description(), pairs,
                                         window);
        std::vector<std::string> reflected = window_actions(rendered.window_used);

        std::string prompt = rendered.text;
        for (int attempt = 0;; ++attempt) {
            CallRecord record;
            record.episode_id = trajectory_.task_id;
            record.step = (int)trajectory_.entries.size();
            record.call_index = llm_calls_;

            backend::CompletionRequest req;
            req.prompt = prompt;
            req.task_id = trajectory_.task_id;
            req.step = record.step;
            req.call_index = record.call_index;
            req.format = cfg_.format;
            req.policy = cfg_.policy;
            req.window_actions = reflected;

            record.prompt_sha256 = sha256_hex(prompt);
            auto started = std::chrono::steady_clock::now();
            record.response = backend_.complete(req);
            record.duration_ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                          started)
                    .count();
            ++llm_calls_;

            std::optional<ExecChoice> choice = interpret(record, reflected);
            if (!choice) {
                ++retries_;
                sink_(record);
                if (attempt >= cfg_.max_parse_retries) return {false};
                prompt = rendered.text + "\n" + reminder();
                continue;
            }

            record.executed = true;
            record.action = choice->action;
            record.source = choice->source;
            record.violations = choice->violations;
            record.observation = env_.exec_line(choice->action);

            TrajectoryEntry entry;
            entry.action = choice->action;
            entry.observation = record.observation;
            entry.source = choice->source;
            for (int id = first_call_of_step_; id <= record.call_index; ++id)
                entry.call_ids.push_back(id);
            trajectory_.entries.push_back(std::move(entry));
            if (choice->source == ExecSource::Modified) ++modifications_;
            sink_(record);
            first_call_of_step_ = llm_calls_;
            return {true};
        }
    }

    /// Parse the response and pick the single action to execute; fills the
    /// record's parsed fields. Returns nullopt on a format error.
    std::optional<ExecChoice> interpret(CallRecord &record,
                                        const std::vector<std::string> &reflected) {
        if (cfg_.policy == Policy::React) {
            auto parsed = protocol::parse_action_line(record.response);
            if (std::holds_alternative<FormatError>(parsed)) return std::nullopt;
            record.parse_ok = true;
            record.next_action = std::get<std::string>(parsed);
            ExecChoice choice;
            choice.source = ExecSource::Next;
            choice.action = record.next_action;
            return choice;
        }

        auto parsed = protocol::parse_reflection(record.response, cfg_.format);
        if (std::holds_alternative<FormatError>(parsed)) return std::nullopt;
        const auto &decision = std::get<ReflectionDecision>(parsed);
        if (decision.verdicts.size() != reflected.size()) return std::nullopt;
        record.parse_ok = true;
        record.verdicts = decision.verdicts;
        record.modified = decision.modified;
        record.next_action = decision.next_action;
        return protocol::decide_executed_action(decision, reflected);
    }

    std::string reminder() const {
        if (cfg_.policy == Policy::React) return protocol::react_format_reminder();
        return protocol::format_reminder(cfg_.format, !trajectory_.entries.empty());
    }

    EpisodeResult result() const {
        EpisodeResult r;
        r.task_id = trajectory_.task_id;
        r.success = trajectory_.status == TrajectoryStatus::Success;
        r.score = r.success ? 100 : 0;
        r.steps = (int)trajectory_.entries.size();
        r.llm_calls = llm_calls_;
        r.modifications = modifications_;
        r.retries = retries_;
        r.termination = to_string(trajectory_.status);
        return r;
    }

    const AgentConfig &cfg_;
    craft::Env &env_;
    backend::Backend &backend_;
    const CallSink &sink_;
    PromptTemplate template_;
    Trajectory trajectory_;
    int llm_calls_ = 0;
    int retries_ = 0;
    int modifications_ = 0;
    int first_call_of_step_ = 0;
};

} // namespace

EpisodeResult run_episode(const AgentConfig &cfg, craft::Env &env, backend::Backend &backend,
                          const CallSink &sink, Trajectory *trajectory_out) {
    static const CallSink null_sink = [](const CallRecord &) {};
    EpisodeRunner runner(cfg, env, backend, sink ? sink : null_sink);
    EpisodeResult result = runner.run();
    if (trajectory_out) *trajectory_out = runner.trajectory();
    return result;
}

} // namespace rebact::agent
