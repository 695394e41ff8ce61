#include "taskgen.hpp"

#include "planner.hpp"
#include "util.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

namespace rebact::craft {

namespace {

const std::vector<std::pair<std::string, std::vector<std::string>>> kGenericFamilies = {
    {"planks",
     {"oak planks", "spruce planks", "birch planks", "jungle planks", "acacia planks",
      "dark oak planks"}},
    {"log", {"oak log", "spruce log", "birch log", "jungle log"}},
    {"ingot", {"iron ingot", "gold ingot", "copper ingot", "silver ingot"}},
    {"brick", {"clay brick", "stone brick", "mud brick", "nether brick"}},
    {"rod", {"blaze rod", "copper rod", "iron rod"}},
    {"fiber", {"hemp fiber", "flax fiber", "kelp fiber"}},
};

const std::vector<std::string> kBaseItems = {
    "honeycomb",    "string",           "flint",        "feather",     "leather",
    "clay ball",    "snowball",         "sugar",        "bone",        "charcoal",
    "coal",         "quartz",           "obsidian",     "sand",        "gravel",
    "kelp",         "cactus",           "pumpkin",      "wheat",       "carrot",
    "bamboo",       "vine",             "moss",         "mushroom",    "amethyst shard",
    "prismarine shard", "echo shard",   "resin",        "slime ball",  "glass",
};

const std::vector<std::string> kStandaloneCrafted = {
    "beehive",   "chest",      "ladder",     "fence",      "gate",       "door",
    "sign",      "bowl",       "bed",        "boat",       "shield",     "map",
    "compass",   "clock",      "rail",       "lever",      "button",     "hopper",
    "anvil",     "furnace",    "smoker",     "loom",       "barrel",     "lantern",
    "bookshelf", "painting",   "cauldron",   "grindstone", "stonecutter", "composter",
    "scaffolding", "beacon",   "conduit",    "candle",     "chain",      "bell",
    "fishing rod", "saddle",   "minecart",   "piston",     "observer",   "dropper",
    "dispenser", "repeater",   "comparator", "target",     "jukebox",    "campfire",
    "torch",     "table",      "stool",      "bench",      "crate",      "basket",
    "hook",      "pulley",     "winch",      "easel",      "trellis",    "planter",
    "kiln",      "forge",      "bellows",    "sled",
};

const std::vector<std::string> kComboMaterials = {
    "iron", "gold", "copper", "silver", "stone", "granite",
    "oak",  "spruce", "birch", "acacia", "crimson", "amber",
};

const std::vector<std::string> kComboNouns = {
    "gear",  "plate", "panel",  "beam", "casing", "lens",  "coil",  "handle",
    "blade", "shell", "cap",    "ring", "axle",   "strut", "hinge", "spool",
};

int draw_output_count(DetRng &rng) {
    std::uint32_t roll = rng.below(100);
    if (roll < 72) return 1;
    if (roll < 86) return 2;
    if (roll < 93) return 3;
    return 4;
}

/// Heuristic craft-depth estimate (one craft per craftable sub-ingredient);
/// the oracle has the final say.
std::map<std::string, int> estimate_depths(const std::vector<Recipe> &recipes) {
    std::map<std::string, const Recipe *> by_output;
    for (const auto &r : recipes) by_output.emplace(r.output.item, &r);
    std::map<std::string, int> depth;
    // Iterate to fixpoint; universes are shallow.
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto &r : recipes) {
            int d = 1;
            bool known = true;
            for (const auto &slot : r.ingredients) {
                auto sub = by_output.find(slot.item);
                if (sub == by_output.end()) continue;
                auto it = depth.find(slot.item);
                if (it == depth.end()) {
                    known = false;
                    break;
                }
                d += it->second;
            }
            if (known) {
                auto [it, inserted] = depth.emplace(r.output.item, d);
                if (inserted) {
                    changed = true;
                } else if (it->second != d) {
                    it->second = d;
                    changed = true;
                }
            }
        }
    }
    return depth;
}

} // namespace

const std::string &default_exemplar_block() {
    static const std::string block =
        "Goal: craft 1 wooden shelf.\n"
        "> get 4 oak planks\n"
        "Got 4 oak planks\n"
        "> craft 1 wooden shelf using 4 oak planks\n"
        "Crafted 1 wooden shelf\n"
        "> inventory\n"
        "Inventory: 1 wooden shelf\n"
        "\n"
        "Goal: craft 1 iron bracket.\n"
        "> get 2 iron nugget\n"
        "Got 2 iron nugget\n"
        "> craft 1 iron bracket using 2 iron nugget\n"
        "Crafted 1 iron bracket\n"
        "Here is an example of a complex goal.\n"
        "Goal: craft 1 display case.\n"
        "> think: I need a wooden shelf and 2 glass panes. The shelf is crafted from planks, "
        "so I will fetch planks first.\n"
        "OK.\n"
        "> get 4 spruce planks\n"
        "Got 4 spruce planks\n"
        "> craft 1 wooden shelf using 4 spruce planks\n"
        "Crafted 1 wooden shelf\n"
        "> get 2 glass pane\n"
        "Got 2 glass pane\n"
        "> craft 1 display case using 1 wooden shelf, 2 glass pane\n"
        "Crafted 1 display case";
    return block;
}

RecipeUniverse make_universe(std::uint64_t seed) {
    DetRng rng(mix_seed(seed, 0x7543'cafe'0001ull));
    RecipeUniverse u;

    std::set<std::string> reserved;
    for (const auto &[generic, specs] : kGenericFamilies) {
        u.generics.add(generic, specs);
        u.gettable.insert(generic);
        reserved.insert(generic);
        reserved.insert(specs.begin(), specs.end());
    }
    for (const auto &base : kBaseItems) {
        u.gettable.insert(base);
        reserved.insert(base);
    }

    std::vector<std::string> pool;
    for (const auto &name : kStandaloneCrafted)
        if (!reserved.count(name)) pool.push_back(name);
    for (const auto &mat : kComboMaterials)
        for (const auto &noun : kComboNouns) {
            std::string name = mat + " " + noun;
            if (!reserved.count(name)) pool.push_back(name);
        }
    rng.shuffle(pool);

    const std::vector<std::pair<int, int>> layers = {{1, 90}, {2, 75}, {3, 60}, {4, 25}};
    std::vector<std::vector<std::string>> by_depth(layers.size() + 1);
    std::size_t cursor = 0;
    auto draw_base_slot = [&](std::set<std::string> &taken) -> ItemStack {
        for (;;) {
            std::string item;
            if (rng.below(100) < 45) {
                item = kGenericFamilies[rng.below((std::uint32_t)kGenericFamilies.size())].first;
            } else {
                item = kBaseItems[rng.below((std::uint32_t)kBaseItems.size())];
            }
            if (taken.insert(item).second) return {item, rng.range(1, 6)};
        }
    };

    std::map<std::string, int> output_count;
    for (const auto &[depth, size] : layers) {
        for (int k = 0; k < size && cursor < pool.size(); ++k, ++cursor) {
            const std::string &name = pool[cursor];
            Recipe r;
            r.output = {name, draw_output_count(rng)};
            std::set<std::string> taken{name};
            if (depth == 1) {
                int slots = rng.range(1, 3);
                for (int s = 0; s < slots; ++s) r.ingredients.push_back(draw_base_slot(taken));
            } else {
                const auto &subs = by_depth[depth - 1];
                const std::string &sub = subs[rng.below((std::uint32_t)subs.size())];
                int sub_out = output_count.at(sub);
                int count = (sub_out > 1 && rng.below(100) < 30) ? sub_out : 1;
                r.ingredients.push_back({sub, count});
                taken.insert(sub);
                int extra = rng.range(1, 2);
                for (int s = 0; s < extra; ++s) r.ingredients.push_back(draw_base_slot(taken));
            }
            output_count[name] = r.output.count;
            by_depth[depth].push_back(name);
            u.recipes.push_back(std::move(r));
        }
    }
    return u;
}

std::vector<CraftTask> generate_tasks(const RecipeUniverse &universe, int depth, int n,
                                      std::uint64_t seed, const TaskGenOptions &opts) {
    if (depth < 1) throw std::invalid_argument("depth must be >= 1");
    if (n < 1) throw std::invalid_argument("task count must be >= 1");

    DetRng rng(mix_seed(seed, static_cast<std::uint64_t>(depth)));
    std::map<std::string, const Recipe *> by_output;
    for (const auto &r : universe.recipes) by_output.emplace(r.output.item, &r);
    auto estimates = estimate_depths(universe.recipes);

    std::vector<std::string> candidates, fallback;
    for (const auto &r : universe.recipes) {
        auto it = estimates.find(r.output.item);
        if (it != estimates.end() && it->second == depth)
            candidates.push_back(r.output.item);
        else
            fallback.push_back(r.output.item);
    }
    rng.shuffle(candidates);
    rng.shuffle(fallback);
    candidates.insert(candidates.end(), fallback.begin(), fallback.end());

    std::vector<CraftTask> tasks;
    for (const auto &goal : candidates) {
        if ((int)tasks.size() >= n) break;

        // Recipe closure of the goal chain.
        std::vector<const Recipe *> chain;
        std::set<std::string> chain_items;
        std::vector<std::string> queue{goal};
        chain_items.insert(goal);
        while (!queue.empty()) {
            std::string item = queue.back();
            queue.pop_back();
            auto it = by_output.find(item);
            if (it == by_output.end()) continue;
            chain.push_back(it->second);
            for (const auto &slot : it->second->ingredients)
                if (chain_items.insert(slot.item).second) queue.push_back(slot.item);
        }

        CraftTask task;
        task.goal = {goal, 1};
        for (const auto *r : chain) task.recipes.push_back(*r);

        int want_distractors = rng.range(0, opts.max_distractors);
        std::set<std::string> used_outputs = chain_items;
        for (int d = 0; d < want_distractors * 4 && want_distractors > 0; ++d) {
            const Recipe &r = universe.recipes[rng.below((std::uint32_t)universe.recipes.size())];
            if (!used_outputs.insert(r.output.item).second) continue;
            task.recipes.push_back(r);
            if (--want_distractors == 0) break;
        }

        for (const auto &r : task.recipes) {
            for (const auto &slot : r.ingredients) {
                if (universe.generics.is_generic(slot.item)) {
                    task.gettable.insert(slot.item);
                } else if (universe.gettable.count(slot.item)) {
                    task.gettable.insert(slot.item);
                }
            }
        }
        int extra = rng.range(0, opts.max_extra_gettable);
        std::vector<std::string> base_pool(universe.gettable.begin(), universe.gettable.end());
        for (int e = 0; e < extra && !base_pool.empty(); ++e)
            task.gettable.insert(base_pool[rng.below((std::uint32_t)base_pool.size())]);

        task.generics = universe.generics;
        task.exemplar_block = default_exemplar_block();
        rng.shuffle(task.recipes);
        char idbuf[32];
        std::snprintf(idbuf, sizeof(idbuf), "d%d_%03zu_", depth, tasks.size());
        std::string slug = goal;
        for (char &c : slug)
            if (c == ' ') c = '-';
        task.id = idbuf + slug;

        try {
            validate_task(task);
        } catch (const TaskError &) {
            continue;
        }
        auto plan = plan::bfs_plan(task);
        if (!plan.found() || plan.plan.craft_count() != depth) continue;
        tasks.push_back(std::move(task));
    }

    if ((int)tasks.size() < n)
        throw InsufficientUniverse("requested " + std::to_string(n) + " tasks at depth " +
                                   std::to_string(depth) + ", universe yields only " +
                                   std::to_string(tasks.size()));
    return tasks;
}

} // namespace rebact::craft
