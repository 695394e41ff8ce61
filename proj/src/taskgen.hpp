#pragma once

#include "env.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rebact::craft {

struct InsufficientUniverse : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A pool of recipes tasks are drawn from. Every craftable item has exactly
/// one recipe; gettable holds base items and gettable generic families.
struct RecipeUniverse {
    std::vector<Recipe> recipes;
    GenericMap generics;
    std::set<std::string> gettable;
};

/// Synthetic layered universe (items crafted from bases, generics, and
/// lower-depth items). Deterministic in the seed.
RecipeUniverse make_universe(std::uint64_t seed);

struct TaskGenOptions {
    int max_distractors = 4;
    int max_extra_gettable = 2;
};

/// `n` distinct-goal tasks whose optimal plan contains exactly `depth`
/// craft commands, each verified against the planner oracle.
/// Throws InsufficientUniverse when the universe cannot supply n goals.
std::vector<CraftTask> generate_tasks(const RecipeUniverse &universe, int depth, int n,
                                      std::uint64_t seed, const TaskGenOptions &opts = {});

/// The demo transcript embedded in generated tasks' exemplar blocks.
const std::string &default_exemplar_block();

} // namespace rebact::craft
