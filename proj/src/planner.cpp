#include "planner.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

namespace rebact::plan {

using craft::CraftCommand;
using craft::CraftTask;
using craft::Inventory;
using craft::ItemStack;
using craft::Recipe;

int Plan::craft_count() const {
    int n = 0;
    for (const auto &a : actions)
        if (a.rfind("craft ", 0) == 0) ++n;
    return n;
}

namespace {

std::string state_key(const Inventory &inv) {
    std::string key;
    for (const auto &[item, count] : inv.entries()) {
        key += item;
        key += '=';
        key += std::to_string(count);
        key += ';';
    }
    return key;
}

/// Items and recipes that can contribute to the goal. A minimal plan never
/// touches anything outside this closure, so the search may ignore it.
struct UsefulSet {
    std::set<std::string> items;
    std::vector<const Recipe *> recipes;
};

UsefulSet useful_closure(const CraftTask &task) {
    UsefulSet useful;
    std::deque<std::string> queue{task.goal.item};
    useful.items.insert(task.goal.item);
    std::set<const Recipe *> seen;
    while (!queue.empty()) {
        std::string item = queue.front();
        queue.pop_front();
        for (const auto &r : task.recipes) {
            if (r.output.item != item || seen.count(&r)) continue;
            seen.insert(&r);
            useful.recipes.push_back(&r);
            auto enqueue = [&](const std::string &name) {
                if (useful.items.insert(name).second) queue.push_back(name);
            };
            for (const auto &slot : r.ingredients) {
                enqueue(slot.item);
                if (const auto *specs = task.generics.specializations(slot.item))
                    for (const auto &s : *specs) enqueue(s);
            }
        }
    }
    return useful;
}

/// Craft command stated from actual consumption: a generic slot consumed
/// from a single specialization is named by it; a mixed slot keeps the
/// generic name (the only stated form that still maps onto one slot).
std::string craft_action_text(const Recipe &recipe,
                              const std::vector<std::vector<ItemStack>> &slot_consumption) {
    std::string out = "craft " + std::to_string(recipe.output.count) + " " + recipe.output.item +
                      " using ";
    for (std::size_t i = 0; i < recipe.ingredients.size(); ++i) {
        if (i) out += ", ";
        const auto &slot = recipe.ingredients[i];
        std::string name = slot.item;
        if (i < slot_consumption.size() && slot_consumption[i].size() == 1)
            name = slot_consumption[i][0].item;
        out += std::to_string(slot.count) + " " + name;
    }
    return out;
}

struct GetAction {
    std::string item;
    int count;
    std::string text;
};

std::vector<GetAction> get_actions(const CraftTask &task, const UsefulSet &useful) {
    // Concrete gettable items in the useful set.
    std::set<std::string> concrete;
    for (const auto &g : task.gettable) {
        if (const auto *specs = task.generics.specializations(g)) {
            for (const auto &s : *specs)
                if (useful.items.count(s)) concrete.insert(s);
        } else if (useful.items.count(g)) {
            concrete.insert(g);
        }
    }

    // Needed counts per item: slot counts the item can fill (directly or as
    // a specialization), plus the goal count when the goal is gettable. One
    // get may serve several slots, so candidates are the subset sums of the
    // needs multiset.
    std::vector<GetAction> actions;
    for (const auto &item : concrete) {
        std::vector<int> needs;
        for (const auto *r : useful.recipes) {
            for (const auto &slot : r->ingredients) {
                if (slot.item == item) needs.push_back(slot.count);
                if (const auto *g = task.generics.generic_of(item); g && *g == slot.item)
                    needs.push_back(slot.count);
            }
        }
        if (item == task.goal.item) needs.push_back(task.goal.count);
        if (needs.size() > 12) needs.resize(12);
        std::set<int> sums{0};
        for (int need : needs) {
            std::set<int> grown = sums;
            for (int s : sums) grown.insert(s + need);
            sums = std::move(grown);
        }
        sums.erase(0);
        for (int c : sums)
            actions.push_back({item, c, "get " + std::to_string(c) + " " + item});
    }
    return actions;
}

} // namespace

PlanResult bfs_plan(const CraftTask &task, const Inventory &start, const PlannerLimits &limits) {
    PlanResult result;
    UsefulSet useful = useful_closure(task);
    std::vector<GetAction> gets = get_actions(task, useful);

    // visited: state key -> (parent key, action taken to reach it)
    std::map<std::string, std::pair<std::string, std::string>> visited;
    std::deque<Inventory> frontier;

    auto goal_met = [&](const Inventory &inv) { return craft::goal_reached(inv, task.goal); };

    std::string start_key = state_key(start);
    visited.emplace(start_key, std::make_pair(std::string{}, std::string{}));
    frontier.push_back(start);
    bool pruned = false;
    std::string goal_key;

    if (goal_met(start)) {
        result.status = PlanStatus::Found;
        result.plan.goal = task.goal;
        return result;
    }

    while (!frontier.empty() && goal_key.empty()) {
        Inventory inv = std::move(frontier.front());
        frontier.pop_front();
        std::string key = state_key(inv);

        auto consider = [&](Inventory next, const std::string &action) {
            if (next.total() > limits.max_total_items) {
                pruned = true;
                return;
            }
            std::string nkey = state_key(next);
            if (!visited.emplace(nkey, std::make_pair(key, action)).second) return;
            if (goal_met(next)) {
                goal_key = nkey;
                return;
            }
            frontier.push_back(std::move(next));
        };

        for (const auto &g : gets) {
            if (!goal_key.empty()) break;
            Inventory next = inv;
            next.add(g.item, g.count);
            consider(std::move(next), g.text);
        }
        for (const auto *r : useful.recipes) {
            if (!goal_key.empty()) break;
            CraftCommand cmd{r->output, r->ingredients};
            auto match = craft::match_recipe(cmd, task, inv);
            if (!match.matched()) continue;
            Inventory next = inv;
            for (const auto &stack : match.consumption) next.remove(stack.item, stack.count);
            next.add(match.recipe->output.item, match.recipe->output.count);
            consider(std::move(next), craft_action_text(*match.recipe, match.slot_consumption));
        }

        if (visited.size() > limits.max_states) {
            result.status = PlanStatus::StateSpaceExceeded;
            result.message = "state limit of " + std::to_string(limits.max_states) + " exceeded";
            return result;
        }
    }

    if (goal_key.empty()) {
        if (pruned) {
            result.status = PlanStatus::StateSpaceExceeded;
            result.message = "inventory bound of " + std::to_string(limits.max_total_items) +
                             " items pruned the search";
        } else {
            result.status = PlanStatus::Unsolvable;
            result.message = "no action sequence reaches " + std::to_string(task.goal.count) +
                             " " + task.goal.item;
        }
        return result;
    }

    std::vector<std::string> actions;
    for (std::string key = goal_key; key != start_key;) {
        const auto &[parent, action] = visited.at(key);
        actions.push_back(action);
        key = parent;
    }
    std::reverse(actions.begin(), actions.end());

    // Replay through the environment; a mismatch here is a planner bug.
    craft::Env env(task, start);
    for (const auto &a : actions) {
        std::string obs = env.exec_line(a);
        if (obs.rfind("Got ", 0) != 0 && obs.rfind("Crafted ", 0) != 0)
            throw std::logic_error("plan replay rejected action '" + a + "': " + obs);
    }
    if (!env.goal_reached()) throw std::logic_error("plan replay did not reach the goal");

    result.status = PlanStatus::Found;
    result.plan.goal = task.goal;
    result.plan.actions = std::move(actions);
    return result;
}

} // namespace rebact::plan
