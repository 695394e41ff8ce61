#pragma once

#include "env.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace rebact::plan {

/// Validated minimum-length action sequence from a start inventory to the
/// task goal.
struct Plan {
    std::vector<std::string> actions;
    craft::ItemStack goal;

    std::size_t cost() const { return actions.size(); }
    int craft_count() const;
};

enum class PlanStatus { Found, Unsolvable, StateSpaceExceeded };

struct PlanResult {
    PlanStatus status = PlanStatus::Unsolvable;
    Plan plan;
    std::string message;

    bool found() const { return status == PlanStatus::Found; }
};

struct PlannerLimits {
    int max_total_items = 64;
    std::size_t max_states = 200000;
};

/// Breadth-first (uniform-cost) search over inventory multisets. Actions
/// are `get` of a gettable item at an exactly-needed count and `craft` of
/// an applicable recipe. Minimum-length plans; each returned plan has been
/// replayed through the environment to the goal.
PlanResult bfs_plan(const craft::CraftTask &task, const craft::Inventory &start = {},
                    const PlannerLimits &limits = {});

} // namespace rebact::plan
