#include "env.hpp"

#include "util.hpp"

#include <algorithm>
#include <map>

namespace rebact::craft {

void validate_task(const CraftTask &task) {
    if (task.id.empty()) throw TaskError("task id is empty");
    if (task.goal.item.empty() || task.goal.count < 1)
        throw TaskError("task '" + task.id + "': invalid goal");

    std::set<std::string> outputs;
    for (const auto &r : task.recipes) {
        if (r.output.count < 1) throw TaskError("task '" + task.id + "': output count < 1");
        if (r.ingredients.empty())
            throw TaskError("task '" + task.id + "': recipe for '" + r.output.item +
                            "' has no ingredients");
        std::set<std::string> seen;
        for (const auto &ing : r.ingredients) {
            if (ing.count < 1) throw TaskError("task '" + task.id + "': ingredient count < 1");
            if (ing.item == r.output.item)
                throw TaskError("task '" + task.id + "': recipe for '" + r.output.item +
                                "' lists its own output as ingredient");
            if (!seen.insert(ing.item).second)
                throw TaskError("task '" + task.id + "': duplicate ingredient '" + ing.item +
                                "' in recipe for '" + r.output.item + "'");
        }
        outputs.insert(r.output.item);
    }

    for (const auto &g : task.gettable)
        if (outputs.count(g))
            throw TaskError("task '" + task.id + "': gettable item '" + g +
                            "' is also a recipe output");

    if (!outputs.count(task.goal.item) && !is_gettable(task, task.goal.item))
        throw TaskError("task '" + task.id + "': goal '" + task.goal.item +
                        "' is neither craftable nor gettable");

    // Cycle check over item dependencies (generic slots depend on all
    // specializations).
    std::map<std::string, std::vector<std::string>> deps;
    for (const auto &r : task.recipes) {
        auto &d = deps[r.output.item];
        for (const auto &ing : r.ingredients) {
            d.push_back(ing.item);
            if (const auto *specs = task.generics.specializations(ing.item))
                d.insert(d.end(), specs->begin(), specs->end());
        }
    }
    std::map<std::string, int> color; // 0 new, 1 active, 2 done
    std::vector<std::pair<std::string, std::size_t>> stack;
    for (const auto &[root, _] : deps) {
        if (color[root]) continue;
        stack.push_back({root, 0});
        color[root] = 1;
        while (!stack.empty()) {
            auto &[item, idx] = stack.back();
            auto it = deps.find(item);
            if (it == deps.end() || idx >= it->second.size()) {
                color[item] = 2;
                stack.pop_back();
                continue;
            }
            const std::string &next = it->second[idx++];
            if (color[next] == 1)
                throw TaskError("task '" + task.id + "': recipe cycle through '" + next + "'");
            if (color[next] == 0 && deps.count(next)) {
                color[next] = 1;
                stack.push_back({next, 0});
            }
        }
    }
}

std::string task_description(const CraftTask &task) {
    std::string out = "Crafting commands:\n";
    for (const auto &r : task.recipes) out += recipe_command_text(r) + "\n";
    out += "Goal: craft " + std::to_string(task.goal.count) + " " + task.goal.item + ".";
    return out;
}

bool is_gettable(const CraftTask &task, const std::string &item) {
    if (task.generics.is_generic(item)) return false; // generics are abstract
    if (task.gettable.count(item)) return true;
    if (const auto *g = task.generics.generic_of(item)) return task.gettable.count(*g) > 0;
    return false;
}

namespace {

/// One-to-one mapping of stated inputs onto recipe slots: exact name matches
/// first, then specializations onto generic slots. Counts must equal.
bool inputs_match_slots(const std::vector<ItemStack> &stated, const Recipe &recipe,
                        const GenericMap &generics) {
    if (stated.size() != recipe.ingredients.size()) return false;
    std::vector<bool> used(recipe.ingredients.size(), false);
    std::vector<bool> mapped(stated.size(), false);

    for (std::size_t i = 0; i < stated.size(); ++i) {
        for (std::size_t j = 0; j < recipe.ingredients.size(); ++j) {
            const auto &slot = recipe.ingredients[j];
            if (!used[j] && slot.item == stated[i].item && slot.count == stated[i].count) {
                used[j] = mapped[i] = true;
                break;
            }
        }
    }
    for (std::size_t i = 0; i < stated.size(); ++i) {
        if (mapped[i]) continue;
        for (std::size_t j = 0; j < recipe.ingredients.size(); ++j) {
            const auto &slot = recipe.ingredients[j];
            if (used[j] || slot.count != stated[i].count) continue;
            if (const auto *g = generics.generic_of(stated[i].item); g && *g == slot.item) {
                used[j] = mapped[i] = true;
                break;
            }
        }
        if (!mapped[i]) return false;
    }
    return true;
}

std::string shortfall_text(const std::vector<ItemStack> &shortfalls) {
    std::string out = "Missing ingredients:";
    for (std::size_t i = 0; i < shortfalls.size(); ++i) {
        out += (i ? ", " : " ");
        out += std::to_string(shortfalls[i].count) + " " + shortfalls[i].item;
    }
    return out;
}

} // namespace

MatchResult match_recipe(const CraftCommand &cmd, const CraftTask &task, const Inventory &inv) {
    MatchResult result;

    std::vector<const Recipe *> same_item;
    for (const auto &r : task.recipes)
        if (r.output.item == cmd.target.item) same_item.push_back(&r);
    if (same_item.empty()) {
        result.status = MatchStatus::NoSuchRecipe;
        result.message = "Could not find a recipe for " + cmd.target.item;
        return result;
    }

    std::vector<const Recipe *> exact;
    for (const auto *r : same_item)
        if (r->output.count == cmd.target.count) exact.push_back(r);
    if (exact.empty()) {
        result.status = MatchStatus::CountMismatch;
        result.message = "Could not craft " + std::to_string(cmd.target.count) + " " +
                         cmd.target.item + ": the recipe yields " +
                         std::to_string(same_item.front()->output.count) + " " + cmd.target.item;
        return result;
    }

    const Recipe *recipe = nullptr;
    for (const auto *r : exact) {
        if (inputs_match_slots(cmd.inputs, *r, task.generics)) {
            recipe = r;
            break;
        }
    }
    if (!recipe) {
        result.status = MatchStatus::NoSuchRecipe;
        result.message = "Could not craft " + std::to_string(cmd.target.count) + " " +
                         cmd.target.item + " using the given ingredients: no matching recipe";
        return result;
    }

    // Coverage and consumption against a working copy, slot by slot in
    // recipe order; generic slots draw from specializations lexicographically.
    Inventory work = inv;
    std::vector<std::vector<ItemStack>> per_slot;
    std::vector<ItemStack> shortfalls;
    for (const auto &slot : recipe->ingredients) {
        std::vector<ItemStack> taken;
        int needed = slot.count;
        if (const auto *specs = task.generics.specializations(slot.item)) {
            for (const auto &spec : *specs) {
                if (needed == 0) break;
                int take = std::min(needed, work.count(spec));
                if (take > 0) {
                    work.remove(spec, take);
                    taken.push_back({spec, take});
                    needed -= take;
                }
            }
        } else {
            int take = std::min(needed, work.count(slot.item));
            if (take > 0) {
                work.remove(slot.item, take);
                taken.push_back({slot.item, take});
                needed -= take;
            }
        }
        if (needed > 0) shortfalls.push_back({slot.item, needed});
        per_slot.push_back(std::move(taken));
    }

    if (!shortfalls.empty()) {
        result.status = MatchStatus::MissingIngredients;
        result.shortfalls = std::move(shortfalls);
        result.message = shortfall_text(result.shortfalls);
        return result;
    }

    result.status = MatchStatus::Matched;
    result.recipe = recipe;
    result.slot_consumption = std::move(per_slot);
    std::map<std::string, int> flat;
    for (const auto &slot : result.slot_consumption)
        for (const auto &stack : slot) flat[stack.item] += stack.count;
    for (const auto &[item, count] : flat) result.consumption.push_back({item, count});
    return result;
}

bool goal_reached(const Inventory &inv, const ItemStack &goal) {
    return inv.count(goal.item) >= goal.count;
}

std::string Env::exec_line(std::string_view line) {
    auto parsed = parse_command(line);
    if (!parsed.ok()) return "Could not execute " + trim(line);
    return step(*parsed.command);
}

std::string Env::step(const Command &cmd) {
    struct Visitor {
        Env &env;

        std::string operator()(const GetCommand &g) {
            if (!is_gettable(env.task_, g.item.item))
                return "Could not find " + g.item.item;
            env.inv_.add(g.item.item, g.item.count);
            return "Got " + std::to_string(g.item.count) + " " + g.item.item;
        }

        std::string operator()(const CraftCommand &c) {
            MatchResult m = match_recipe(c, env.task_, env.inv_);
            if (!m.matched()) return m.message;
            for (const auto &stack : m.consumption) env.inv_.remove(stack.item, stack.count);
            env.inv_.add(m.recipe->output.item, m.recipe->output.count);
            return "Crafted " + std::to_string(c.target.count) + " " + c.target.item;
        }

        std::string operator()(const InventoryCommand &) {
            return render_inventory(env.inv_);
        }

        std::string operator()(const ThinkCommand &) { return "OK."; }
    };
    return std::visit(Visitor{*this}, cmd);
}

} // namespace rebact::craft
