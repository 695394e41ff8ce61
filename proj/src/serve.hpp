#pragma once

#include "env.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rebact::serve {

/// Line-protocol session over the crafting environment, shared by the stdio
/// and TCP transports. The client sends "RESET <task-id>", then one command
/// per line; every reply is one or more lines terminated by a blank line.
/// Protocol errors reply "ERR <reason>" and keep the session; "QUIT" (or
/// EOF, handled by the transport) ends it.
class Session {
public:
    explicit Session(const std::vector<craft::CraftTask> &tasks) : tasks_(&tasks) {}

    struct Reply {
        std::string text; // includes the terminating blank line
        bool close = false;
    };

    Reply handle_line(std::string_view line);

    const craft::Env *env() const { return env_ ? &*env_ : nullptr; }

private:
    const std::vector<craft::CraftTask> *tasks_;
    std::optional<craft::Env> env_;
};

} // namespace rebact::serve
