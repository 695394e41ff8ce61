#pragma once

#include "craft_types.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace rebact::craft {

// Environment command grammar:
//   craft [count] [item] using [count] [item], [count] [item] and [count] [item]
//   get [count] [item]
//   inventory
//   think: [free text]

struct CraftCommand {
    ItemStack target;
    std::vector<ItemStack> inputs;
    bool operator==(const CraftCommand &) const = default;
};

struct GetCommand {
    ItemStack item;
    bool operator==(const GetCommand &) const = default;
};

struct InventoryCommand {
    bool operator==(const InventoryCommand &) const = default;
};

struct ThinkCommand {
    std::string text;
    bool operator==(const ThinkCommand &) const = default;
};

using Command = std::variant<CraftCommand, GetCommand, InventoryCommand, ThinkCommand>;

struct CommandParse {
    std::optional<Command> command;
    std::string error; // set when command is empty

    bool ok() const { return command.has_value(); }
};

/// Parse one command line. The "using" clause splits ingredients on commas
/// and the word "and"; counts are positive decimal integers.
CommandParse parse_command(std::string_view line);

/// Canonical single-line text for a command (inverse of parse_command).
std::string command_text(const Command &cmd);

} // namespace rebact::craft
