#pragma once

#include "command.hpp"
#include "craft_types.hpp"

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace rebact::craft {

struct TaskError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One crafting task: goal, visible recipe book, gettable base items and
/// generic families. `gettable` may hold concrete items or generic names;
/// a gettable generic makes every specialization gettable (but not the
/// generic name itself, which is never a physical item).
struct CraftTask {
    std::string id;
    ItemStack goal;
    std::vector<Recipe> recipes;
    std::set<std::string> gettable;
    GenericMap generics;
    std::string exemplar_block;
};

/// Validates task invariants; throws TaskError with a description.
void validate_task(const CraftTask &task);

/// "Crafting commands:" block plus the goal line, shown on reset and
/// interpolated into prompts.
std::string task_description(const CraftTask &task);

bool is_gettable(const CraftTask &task, const std::string &item);

enum class MatchStatus { Matched, NoSuchRecipe, CountMismatch, MissingIngredients };

struct MatchResult {
    MatchStatus status = MatchStatus::NoSuchRecipe;
    const Recipe *recipe = nullptr;
    /// Consumption per recipe slot (concrete items, matched order).
    std::vector<std::vector<ItemStack>> slot_consumption;
    /// Flattened consumption, coalesced and sorted by item.
    std::vector<ItemStack> consumption;
    /// Per-slot shortfalls (generic slots reported under the generic name).
    std::vector<ItemStack> shortfalls;
    /// Rejection observation text; empty when matched.
    std::string message;

    bool matched() const { return status == MatchStatus::Matched; }
};

/// Recipe matching. A recipe matches iff output item and count equal the
/// command's target exactly, the command's stated inputs map one-to-one
/// onto the recipe's slots (a generic slot may be stated by its own name
/// or any specialization, with the slot's exact count), and the inventory
/// covers every slot — a generic slot by the sum over its specializations,
/// consumed in lexicographic item order.
MatchResult match_recipe(const CraftCommand &cmd, const CraftTask &task,
                         const Inventory &inv);

bool goal_reached(const Inventory &inv, const ItemStack &goal);

/// Single-episode crafting environment. Copyable; a copy is an independent
/// state snapshot.
class Env {
public:
    explicit Env(CraftTask task, Inventory start = {})
        : task_(std::move(task)), start_(start), inv_(std::move(start)) {}

    const CraftTask &task() const { return task_; }
    const Inventory &inventory() const { return inv_; }

    /// Parse and execute one command line. Unparseable lines observe
    /// "Could not execute [text]" and leave the state unchanged.
    std::string exec_line(std::string_view line);

    /// Execute a parsed command, returning the observation.
    std::string step(const Command &cmd);

    bool goal_reached() const { return craft::goal_reached(inv_, task_.goal); }

    std::string description() const { return task_description(task_); }

    void reset() { inv_ = start_; }

private:
    CraftTask task_;
    Inventory start_;
    Inventory inv_;
};

} // namespace rebact::craft
