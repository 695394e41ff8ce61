#pragma once

// Shared generators for the property suites: random small recipe books,
// inventories, and command streams (valid commands, near-misses, garbage).

#include "env.hpp"
#include "util.hpp"

#include <string>
#include <vector>

namespace propgen {

using rebact::DetRng;
using namespace rebact::craft;

inline const std::vector<std::string> &base_pool() {
    static const std::vector<std::string> bases = {"stone", "wood",  "sand",
                                                   "clay",  "bone",  "kelp"};
    return bases;
}

inline const std::vector<std::string> &spec_pool() {
    static const std::vector<std::string> specs = {"red metal", "blue metal", "green metal"};
    return specs;
}

/// Random 2..5-recipe task over a small alphabet with one generic family
/// ("metal"). Acyclic by construction; the goal is the last craftable.
inline CraftTask random_task(DetRng &rng) {
    CraftTask task;
    task.id = "prop";
    task.generics.add("metal", spec_pool());

    int n_craft = rng.range(2, 5);
    std::vector<std::string> craftables;
    for (int i = 0; i < n_craft; ++i) craftables.push_back("item" + std::to_string(i));

    for (int i = 0; i < n_craft; ++i) {
        Recipe r;
        r.output = {craftables[i], rng.range(1, 4)};
        std::vector<std::string> candidates = base_pool();
        candidates.push_back("metal");
        for (int j = 0; j < i; ++j) candidates.push_back(craftables[j]);
        rng.shuffle(candidates);
        int slots = rng.range(1, 3);
        for (int s = 0; s < slots && s < (int)candidates.size(); ++s)
            r.ingredients.push_back({candidates[s], rng.range(1, 4)});
        task.recipes.push_back(std::move(r));
    }
    task.goal = {craftables.back(), 1};

    for (const auto &b : base_pool())
        if (rng.chance(0.8)) task.gettable.insert(b);
    if (rng.chance(0.8)) task.gettable.insert("metal");
    if (task.gettable.empty()) task.gettable.insert(base_pool().front());
    validate_task(task);
    return task;
}

inline Inventory random_inventory(DetRng &rng, const CraftTask &task) {
    Inventory inv;
    auto maybe_add = [&](const std::string &item) {
        if (rng.chance(0.5)) inv.add(item, rng.range(1, 8));
    };
    for (const auto &b : base_pool()) maybe_add(b);
    for (const auto &s : spec_pool()) maybe_add(s);
    for (const auto &r : task.recipes)
        if (rng.chance(0.25)) inv.add(r.output.item, rng.range(1, 2));
    return inv;
}

/// A command line: often a valid recipe or get, sometimes mutated,
/// sometimes garbage.
inline std::string random_command_line(DetRng &rng, const CraftTask &task) {
    std::uint32_t roll = rng.below(100);
    if (roll < 45 && !task.recipes.empty()) {
        const Recipe &r = task.recipes[rng.below((std::uint32_t)task.recipes.size())];
        Recipe stated = r;
        if (rng.chance(0.2)) stated.output.count += rng.range(1, 2); // count mismatch
        if (rng.chance(0.3)) {
            // Name a generic slot by one of its specializations.
            for (auto &slot : stated.ingredients)
                if (slot.item == "metal" && rng.chance(0.8))
                    slot.item = spec_pool()[rng.below((std::uint32_t)spec_pool().size())];
        }
        if (rng.chance(0.15) && !stated.ingredients.empty())
            stated.ingredients[0].count += 1; // unmappable statement
        return recipe_command_text(stated);
    }
    if (roll < 75) {
        std::vector<std::string> items = base_pool();
        items.insert(items.end(), spec_pool().begin(), spec_pool().end());
        items.push_back("metal");
        items.push_back(task.goal.item);
        items.push_back("nothing");
        return "get " + std::to_string(rng.range(1, 6)) + " " +
               items[rng.below((std::uint32_t)items.size())];
    }
    if (roll < 85) return "inventory";
    if (roll < 92) return "think: weighing the options";
    const char *garbage[] = {"make 1 stick", "", "craft beehive", "get -3 wood",
                             "craft 1 x using", "USING using using", "get 0 stone"};
    return garbage[rng.below(7)];
}

} // namespace propgen
