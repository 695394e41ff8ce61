#include "serve.hpp"

#include "util.hpp"

namespace rebact::serve {

Session::Reply Session::handle_line(std::string_view raw) {
    std::string line(raw);
    if (!line.empty() && line.back() == '\r') line.pop_back();

    auto block = [](std::string text) { return Reply{std::move(text) + "\n\n", false}; };

    if (line == "QUIT") return {"BYE\n\n", true};

    if (line == "RESET" || line.rfind("RESET ", 0) == 0) {
        std::string id = trim(line.size() > 5 ? line.substr(6) : std::string{});
        if (id.empty()) return block("ERR missing task id");
        for (const auto &task : *tasks_) {
            if (task.id == id) {
                env_.emplace(task);
                return block(env_->description());
            }
        }
        return block("ERR unknown task '" + id + "'");
    }

    if (trim(line).empty()) return block("ERR empty line");
    if (!env_) return block("ERR no active task (RESET <task-id> first)");
    return block(env_->exec_line(line));
}

} // namespace rebact::serve
