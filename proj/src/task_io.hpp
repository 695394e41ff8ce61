#pragma once

#include "env.hpp"

#include <string>
#include <vector>

namespace rebact::craft {

/// Load tasks from a JSON file: an array of task objects or a single
/// object. Validates every task and rejects duplicate ids.
/// Throws TaskError on malformed input or std::runtime_error on IO failure.
std::vector<CraftTask> load_tasks(const std::string &path);

std::vector<CraftTask> tasks_from_json_text(const std::string &text);

std::string tasks_to_json_text(const std::vector<CraftTask> &tasks);

void save_tasks(const std::vector<CraftTask> &tasks, const std::string &path);

} // namespace rebact::craft
