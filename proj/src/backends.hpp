#pragma once

#include "backend.hpp"
#include "env.hpp"
#include "planner.hpp"

#include <cstdint>
#include <functional>

namespace rebact::backend {

/// Replays a fixed list of responses in order; exhaustion is a backend
/// failure. Scripts files hold one response per record, records separated
/// by a line containing only "---".
class ScriptedBackend : public Backend {
public:
    explicit ScriptedBackend(std::vector<std::string> responses)
        : responses_(std::move(responses)) {}

    static ScriptedBackend from_file(const std::string &path);
    static std::vector<std::string> parse_script(const std::string &text);

    std::string complete(const CompletionRequest &req) override;
    std::string kind() const override { return "scripted"; }

private:
    std::vector<std::string> responses_;
    std::size_t next_ = 0;
};

using InventoryProbe = std::function<craft::Inventory()>;

/// Policies that expose the bare next action, composable under fault
/// injection.
class ActionPolicy {
public:
    virtual ~ActionPolicy() = default;
    virtual std::string next_action(const CompletionRequest &req) = 0;
};

/// Oracle backend: replans from the episode's ground-truth inventory on
/// every call and emits protocol-correct responses that always verdict the
/// previous action correct. Emits "inventory" once the goal is reached.
class PlannerBackend : public Backend, public ActionPolicy {
public:
    PlannerBackend(craft::CraftTask task, InventoryProbe probe,
                   plan::PlannerLimits limits = {});

    std::string next_action(const CompletionRequest &req) override;
    std::string complete(const CompletionRequest &req) override;
    std::string kind() const override { return "planner"; }

private:
    craft::CraftTask task_;
    InventoryProbe probe_;
    plan::PlannerLimits limits_;
};

/// Plans once from the start state and replays the plan without looking at
/// the environment again; each call advances the cursor. Used as the
/// no-correction arm under fault injection, where a skipped action stays
/// skipped.
class FixedPlanPolicy : public ActionPolicy {
public:
    explicit FixedPlanPolicy(const craft::CraftTask &task, plan::PlannerLimits limits = {});

    std::string next_action(const CompletionRequest &req) override;

private:
    std::vector<std::string> actions_;
    std::size_t next_ = 0;
};

/// Fault injector over an inner policy: with probability p per planned
/// step it emits a known-bad action (fetching the craft-only goal). With
/// corrections enabled the following call verdicts that action wrong and
/// supplies the inner policy's action as the modification, driving the
/// modified-execution path; without corrections the bad action simply
/// replaces the planned one.
class FaultyBackend : public Backend {
public:
    FaultyBackend(craft::CraftTask task, std::unique_ptr<ActionPolicy> inner, double p,
                  std::uint64_t seed, bool corrections);

    std::string complete(const CompletionRequest &req) override;
    std::string kind() const override { return "faulty"; }

    int faults_fired() const { return faults_fired_; }

private:
    std::string bad_action() const;

    craft::CraftTask task_;
    std::unique_ptr<ActionPolicy> inner_;
    double p_;
    std::uint64_t rng_state_;
    bool corrections_;
    bool pending_correction_ = false;
    std::string remembered_action_;
    int faults_fired_ = 0;
};

/// Backend construction spec, loadable from a JSON config file:
///   {kind: scripted|planner|faulty|http, script_path?, p?, seed?,
///    url?, model?, token_env?, timeout_ms?, max_retries?,
///    response_path?, max_in_flight?}
struct BackendSpec {
    std::string kind = "planner";
    std::string script_path;
    double p = 0.3;
    std::uint64_t seed = 0;
    std::string url;
    std::string model;
    std::string token_env;
    int timeout_ms = 30000;
    int max_retries = 2;
    std::string response_path = "choices.0.message.content";
    int max_in_flight = 4;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parse a spec from a bare kind name ("planner") or a JSON config path.
BackendSpec backend_spec_from_arg(const std::string &arg);
BackendSpec backend_spec_from_json_text(const std::string &text);

/// Instantiate a per-episode backend. `episode_seed` individualizes fault
/// schedules; the probe exposes the episode's environment inventory to the
/// oracle backends.
BackendPtr make_backend(const BackendSpec &spec, const craft::CraftTask &task,
                        InventoryProbe probe, Policy policy, std::uint64_t episode_seed);

} // namespace rebact::backend
