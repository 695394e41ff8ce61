#include "backends.hpp"

#include "http_backend.hpp"
#include "util.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>

namespace rebact::backend {

using protocol::ReflectionDecision;
using protocol::Verdict;

std::string to_string(Policy p) {
    return p == Policy::Rebact ? "rebact" : "react";
}

namespace {

/// Wrap a bare next action into the response shape the caller expects:
/// a single action line for the baseline, or a protocol-correct reflection
/// (previous action correct, repeated as the modification) for REBACT.
std::string wrap_action(const CompletionRequest &req, const std::string &action) {
    if (req.policy == Policy::React) return action;
    ReflectionDecision decision;
    for (const auto &prev : req.window_actions) {
        decision.verdicts.push_back(Verdict::Correct);
        decision.modified.push_back(prev);
    }
    decision.next_action = action;
    return protocol::render_reflection(decision, req.format, req.window_actions);
}

} // namespace

// ---- ScriptedBackend -------------------------------------------------------

std::vector<std::string> ScriptedBackend::parse_script(const std::string &text) {
    std::vector<std::string> records{std::string{}};
    for (const auto &line : split(text, "\n")) {
        if (trim(line) == "---") {
            records.emplace_back();
            continue;
        }
        if (!records.back().empty()) records.back() += "\n";
        records.back() += line;
    }
    std::vector<std::string> responses;
    for (auto &r : records) responses.push_back(trim(r));
    while (!responses.empty() && responses.back().empty()) responses.pop_back();
    return responses;
}

ScriptedBackend ScriptedBackend::from_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw BackendError("cannot open script file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return ScriptedBackend(parse_script(buf.str()));
}

std::string ScriptedBackend::complete(const CompletionRequest &) {
    if (next_ >= responses_.size())
        throw BackendError("script exhausted after " + std::to_string(responses_.size()) +
                           " responses");
    return responses_[next_++];
}

// ---- PlannerBackend --------------------------------------------------------

PlannerBackend::PlannerBackend(craft::CraftTask task, InventoryProbe probe,
                               plan::PlannerLimits limits)
    : task_(std::move(task)), probe_(std::move(probe)), limits_(limits) {}

std::string PlannerBackend::next_action(const CompletionRequest &) {
    craft::Inventory inv = probe_();
    if (craft::goal_reached(inv, task_.goal)) return "inventory";
    auto result = plan::bfs_plan(task_, inv, limits_);
    if (!result.found())
        throw BackendError("planner: " + result.message);
    return result.plan.actions.front();
}

std::string PlannerBackend::complete(const CompletionRequest &req) {
    return wrap_action(req, next_action(req));
}

// ---- FixedPlanPolicy -------------------------------------------------------

FixedPlanPolicy::FixedPlanPolicy(const craft::CraftTask &task, plan::PlannerLimits limits) {
    auto result = plan::bfs_plan(task, {}, limits);
    if (!result.found()) throw BackendError("planner: " + result.message);
    actions_ = result.plan.actions;
}

std::string FixedPlanPolicy::next_action(const CompletionRequest &) {
    if (next_ >= actions_.size()) return "inventory";
    return actions_[next_++];
}

// ---- FaultyBackend ---------------------------------------------------------

FaultyBackend::FaultyBackend(craft::CraftTask task, std::unique_ptr<ActionPolicy> inner,
                             double p, std::uint64_t seed, bool corrections)
    : task_(std::move(task)), inner_(std::move(inner)), p_(p),
      rng_state_(mix_seed(seed, 0xfa17ull)), corrections_(corrections) {}

std::string FaultyBackend::bad_action() const {
    return "get 1 " + task_.goal.item;
}

std::string FaultyBackend::complete(const CompletionRequest &req) {
    if (corrections_ && pending_correction_) {
        pending_correction_ = false;
        ReflectionDecision decision;
        for (std::size_t i = 0; i < req.window_actions.size(); ++i) {
            bool last = i + 1 == req.window_actions.size();
            decision.verdicts.push_back(last ? Verdict::Wrong : Verdict::Correct);
            decision.modified.push_back(last ? remembered_action_ : req.window_actions[i]);
        }
        decision.next_action = inner_->next_action(req);
        return protocol::render_reflection(decision, req.format, req.window_actions);
    }

    std::string planned = inner_->next_action(req);
    DetRng rng(rng_state_);
    double roll = rng.uniform();
    rng_state_ = rng.state;
    if (roll < p_) {
        ++faults_fired_;
        if (corrections_) {
            remembered_action_ = planned;
            pending_correction_ = true;
        }
        return wrap_action(req, bad_action());
    }
    return wrap_action(req, planned);
}

// ---- Spec parsing and factory ----------------------------------------------

namespace {

using nlohmann::json;

BackendSpec spec_from_json(const json &j) {
    if (!j.is_object()) throw ConfigError("backend config must be a JSON object");
    BackendSpec spec;
    spec.kind = j.value("kind", spec.kind);
    if (spec.kind != "scripted" && spec.kind != "planner" && spec.kind != "faulty" &&
        spec.kind != "http")
        throw ConfigError("unknown backend kind '" + spec.kind + "'");
    spec.script_path = j.value("script_path", spec.script_path);
    spec.p = j.value("p", spec.p);
    if (spec.p < 0.0 || spec.p > 1.0) throw ConfigError("backend p must be within [0, 1]");
    spec.seed = j.value("seed", spec.seed);
    spec.url = j.value("url", spec.url);
    spec.model = j.value("model", spec.model);
    spec.token_env = j.value("token_env", spec.token_env);
    spec.timeout_ms = j.value("timeout_ms", spec.timeout_ms);
    spec.max_retries = j.value("max_retries", spec.max_retries);
    spec.response_path = j.value("response_path", spec.response_path);
    spec.max_in_flight = j.value("max_in_flight", spec.max_in_flight);
    if (spec.kind == "scripted" && spec.script_path.empty())
        throw ConfigError("scripted backend needs script_path");
    if (spec.kind == "http" && spec.url.empty()) throw ConfigError("http backend needs url");
    return spec;
}

} // namespace

BackendSpec backend_spec_from_json_text(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ConfigError(std::string("backend config is not valid JSON: ") + e.what());
    }
    return spec_from_json(j);
}

BackendSpec backend_spec_from_arg(const std::string &arg) {
    if (arg == "scripted" || arg == "planner" || arg == "faulty" || arg == "http") {
        BackendSpec spec;
        spec.kind = arg;
        if (arg == "scripted") throw ConfigError("scripted backend needs a config file with script_path");
        if (arg == "http") throw ConfigError("http backend needs a config file with url");
        return spec;
    }
    std::ifstream in(arg);
    if (!in) throw ConfigError("backend config '" + arg + "' is neither a known kind nor a readable file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return backend_spec_from_json_text(buf.str());
}

BackendPtr make_backend(const BackendSpec &spec, const craft::CraftTask &task,
                        InventoryProbe probe, Policy policy, std::uint64_t episode_seed) {
    if (spec.kind == "scripted")
        return std::make_unique<ScriptedBackend>(ScriptedBackend::from_file(spec.script_path));
    if (spec.kind == "planner")
        return std::make_unique<PlannerBackend>(task, std::move(probe));
    if (spec.kind == "faulty") {
        std::unique_ptr<ActionPolicy> inner;
        if (policy == Policy::Rebact)
            inner = std::make_unique<PlannerBackend>(task, std::move(probe));
        else
            inner = std::make_unique<FixedPlanPolicy>(task);
        return std::make_unique<FaultyBackend>(task, std::move(inner),
                                               spec.p, mix_seed(spec.seed, episode_seed),
                                               policy == Policy::Rebact);
    }
    if (spec.kind == "http") return make_http_backend(spec);
    throw ConfigError("unknown backend kind '" + spec.kind + "'");
}

} // namespace rebact::backend
