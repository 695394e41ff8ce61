#pragma once

// Independent reachability oracle for plan-minimality checks. Shares no code
// with the planner: it enumerates craft sequences exhaustively and packs the
// required base acquisitions optimally (one get per distinct item, issued up
// front), which is a canonical form every successful action sequence can be
// normalized into without growing:
//   - a get can always move earlier, and two gets of one item merge into one;
//   - get counts reduce to exactly what the crafts consume;
//   - generic slots can be provisioned from a family's lexicographically
//     first gettable specialization without disturbing concrete slots.
// Every hit is replayed through the environment before being believed.
//
// Valid for tasks whose generic specializations are gettable base items
// (never crafted), which holds for all generated tasks.

#include "env.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace oracle {

using namespace rebact::craft;

struct CanonicalPlan {
    std::map<std::string, int> gets;      // item -> count
    std::vector<const Recipe *> crafts;   // in execution order

    std::size_t length() const { return gets.size() + crafts.size(); }
};

/// Minimal base acquisitions for a craft sequence, or nullopt if the
/// sequence cannot be executed at all.
inline std::optional<CanonicalPlan> pack_gets(const CraftTask &task,
                                              const std::vector<const Recipe *> &crafts) {
    std::map<std::string, const Recipe *> by_output;
    for (const auto &r : task.recipes) by_output.emplace(r.output.item, &r);

    CanonicalPlan plan;
    plan.crafts = crafts;
    std::map<std::string, int> produced;
    for (const auto *r : crafts) {
        for (const auto &slot : r->ingredients) {
            if (by_output.count(slot.item)) {
                // Crafted intermediate: must come from earlier crafts.
                if (produced[slot.item] < slot.count) return std::nullopt;
                produced[slot.item] -= slot.count;
            } else if (const auto *specs = task.generics.specializations(slot.item)) {
                const std::string *chosen = nullptr;
                for (const auto &s : *specs)
                    if (is_gettable(task, s)) {
                        chosen = &s;
                        break;
                    }
                if (!chosen) return std::nullopt;
                plan.gets[*chosen] += slot.count;
            } else {
                if (!is_gettable(task, slot.item)) return std::nullopt;
                plan.gets[slot.item] += slot.count;
            }
        }
        produced[r->output.item] += r->output.count;
    }
    int have = produced.count(task.goal.item) ? produced[task.goal.item] : 0;
    if (have < task.goal.count) {
        if (!is_gettable(task, task.goal.item)) return std::nullopt;
        plan.gets[task.goal.item] += task.goal.count - have;
    }
    return plan;
}

inline bool replay_reaches_goal(const CraftTask &task, const CanonicalPlan &plan) {
    Env env(task);
    for (const auto &[item, count] : plan.gets) {
        std::string obs = env.exec_line("get " + std::to_string(count) + " " + item);
        if (obs.rfind("Got ", 0) != 0) return false;
    }
    for (const auto *r : plan.crafts) {
        std::string obs = env.exec_line(recipe_command_text(*r));
        if (obs.rfind("Crafted ", 0) != 0) return false;
    }
    return env.goal_reached();
}

/// True iff some action sequence of length <= max_len reaches the goal.
/// Exhaustive over craft sequences (with repetition) up to max_len.
inline bool reachable_within(const CraftTask &task, int max_len) {
    std::vector<const Recipe *> sequence;
    auto search = [&](auto &&self, int remaining) -> bool {
        auto packed = pack_gets(task, sequence);
        if (packed && (int)packed->length() <= max_len && replay_reaches_goal(task, *packed))
            return true;
        if (remaining == 0) return false;
        for (const auto &r : task.recipes) {
            sequence.push_back(&r);
            if (self(self, remaining - 1)) return true;
            sequence.pop_back();
        }
        return false;
    };
    return search(search, max_len);
}

} // namespace oracle
