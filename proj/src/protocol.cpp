#include "protocol.hpp"

#include "util.hpp"

#include <fstream>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace rebact::protocol {

std::string to_string(Format f) {
    switch (f) {
    case Format::Textcraft: return "textcraft";
    case Format::Webshop: return "webshop";
    case Format::Alfworld: return "alfworld";
    }
    return "textcraft";
}

std::optional<Format> parse_format(std::string_view name) {
    std::string n = to_lower(name);
    if (n == "textcraft") return Format::Textcraft;
    if (n == "webshop") return Format::Webshop;
    if (n == "alfworld") return Format::Alfworld;
    return std::nullopt;
}

int effective_window(Format f, int configured) {
    return f == Format::Webshop ? configured : 1;
}

namespace {

// Case-insensitive verdict fill-in; everything else is matched strictly.
const char *kVerdict = "([cC][oO][rR][rR][eE][cC][tT]|[wW][rR][oO][nN][gG])";

std::string stanza_pattern(Format f) {
    switch (f) {
    case Format::Textcraft:
        return std::string("Previous action '([^'\\n]*)' is\\s+") + kVerdict +
               "\\s*\\.\\s*It should be modified to:[ \\t]*(.*?)[ \\t]*\\.?[ \\t]*"
               "(?=\\n|The next action is:|$)";
    case Format::Alfworld:
        return std::string("Previous action '([^'\\n]*)' is\\s+") + kVerdict +
               "\\s*\\.\\s*To fix this mistake, I should execute:[ \\t]*(.*?)[ \\t]*\\.?[ \\t]*"
               "(?=\\n|The next action is:|$)";
    case Format::Webshop:
        return std::string("Previous action (.*?) is\\s+") + kVerdict +
               "\\s*\\.\\s*This action should be modified to:[ \\t]*"
               "((?:search|click)\\[[^\\]\\n]*\\])";
    }
    return {};
}

std::string next_pattern(Format f) {
    if (f == Format::Webshop)
        return "The next action is:[ \\t]*((?:search|click)\\[[^\\]\\n]*\\])";
    return "The next action is:[ \\t]*(.*?)[ \\t]*\\.?[ \\t]*(?=\\n|$)";
}

bool is_wrong(const std::string &verdict_text) {
    return to_lower(verdict_text) == "wrong";
}

} // namespace

std::variant<ReflectionDecision, FormatError> parse_reflection(const std::string &text,
                                                               Format format) {
    ReflectionDecision decision;
    decision.raw = text;

    std::regex stanza(stanza_pattern(format));
    for (auto it = std::sregex_iterator(text.begin(), text.end(), stanza),
              end = std::sregex_iterator();
         it != end; ++it) {
        const std::smatch &m = *it;
        std::string modified = trim(m[3].str());
        if (modified.empty()) return FormatError{"empty modified action"};
        decision.verdicts.push_back(is_wrong(m[2].str()) ? Verdict::Wrong : Verdict::Correct);
        decision.modified.push_back(std::move(modified));
    }
    if (format != Format::Webshop && decision.verdicts.size() > 1)
        return FormatError{"multiple reflection stanzas"};

    std::regex next(next_pattern(format));
    std::vector<std::string> next_matches;
    for (auto it = std::sregex_iterator(text.begin(), text.end(), next),
              end = std::sregex_iterator();
         it != end; ++it)
        next_matches.push_back(trim((*it)[1].str()));
    if (next_matches.empty()) return FormatError{"missing next action"};
    if (next_matches.size() > 1) return FormatError{"ambiguous: multiple next actions"};
    if (next_matches[0].empty()) return FormatError{"empty next action"};
    decision.next_action = next_matches[0];
    return decision;
}

std::string render_reflection(const ReflectionDecision &decision, Format format,
                              const std::vector<std::string> &previous_actions) {
    std::string out;
    for (std::size_t i = 0; i < decision.verdicts.size(); ++i) {
        const std::string &prev =
            i < previous_actions.size() ? previous_actions[i] : decision.modified[i];
        const char *verdict = decision.verdicts[i] == Verdict::Wrong ? "wrong" : "correct";
        switch (format) {
        case Format::Textcraft:
            out += "Previous action '" + prev + "' is " + verdict +
                   ". It should be modified to: " + decision.modified[i] + ".\n";
            break;
        case Format::Alfworld:
            out += "Previous action '" + prev + "' is " + verdict +
                   ". To fix this mistake, I should execute: " + decision.modified[i] + ".\n";
            break;
        case Format::Webshop:
            out += "Previous action " + prev + " is " + verdict +
                   ". This action should be modified to: " + decision.modified[i] + "\n";
            break;
        }
    }
    out += "The next action is: " + decision.next_action;
    if (format != Format::Webshop) out += ".";
    return out;
}

ExecChoice decide_executed_action(const ReflectionDecision &decision,
                                  const std::vector<std::string> &previous_actions) {
    ExecChoice choice;
    choice.source = ExecSource::Next;
    choice.action = decision.next_action;

    std::size_t n = std::min(decision.verdicts.size(), previous_actions.size());
    bool chosen = false;
    for (std::size_t i = 0; i < n; ++i) {
        bool differs = trim(decision.modified[i]) != trim(previous_actions[i]);
        if (decision.verdicts[i] == Verdict::Wrong) {
            if (differs) {
                if (!chosen) {
                    choice.source = ExecSource::Modified;
                    choice.action = decision.modified[i];
                    choice.slot = static_cast<int>(i);
                    chosen = true;
                }
            } else {
                choice.violations.push_back(Violation::ModifiedEqualsPrevious);
            }
        } else if (differs) {
            choice.violations.push_back(Violation::CorrectButDifferent);
        }
    }
    return choice;
}

// ---------------------------------------------------------------------------
// Prompt templates
// ---------------------------------------------------------------------------

namespace {

// Slot and block marker syntax.
constexpr const char *kReflectMarker = "<<reflect>>";
constexpr const char *kFirstMarker = "<<first>>";
constexpr const char *kEndMarker = "<<end>>";

void replace_all(std::string &line, std::string_view token, std::string_view value) {
    std::size_t pos = 0;
    while ((pos = line.find(token, pos)) != std::string::npos) {
        line.replace(pos, token.size(), value);
        pos += value.size();
    }
}

// The shipped REBACT prompt for the textcraft format. Note: several lines
// carry significant trailing spaces.
const char kTextcraftTemplate[] =
    "You can perform the following actions to interact with the environment: \n"
    "- craft [target count] [target item] using [count] [item]\n"
    "- get [count] [item]\n"
    "- inventory\n"
    "Here [count] is a place holder for number of object, and [item] is placeholder for name of "
    "object.\n"
    "\n"
    "<<reflect>>\n"
    "Please decide whether the previous action '{previous_action}' needs to be modified and "
    "decide the most appropriate next action. If the previous action needs to be modified, make "
    "sure the modified action is different from the previous action and it is executable. The "
    "next action should be different from the modified action. If the previous action does not "
    "need to be modified, repeat the previous action as the modified action.\n"
    "Please reply in this format: \"Previous action '{previous_action}' is [correct or wrong]. "
    "It should be modified to: [action].\n"
    "The next action is: [action].\" \n"
    "<<end>>\n"
    "<<first>>\n"
    "Please decide the most appropriate next action.\n"
    "Please reply in this format: \"The next action is: [action].\"\n"
    "<<end>>\n"
    "\n"
    "You are given few useful crafting recipes to craft items in Minecraft. Crafting commands "
    "are of the format \"craft [target object] using [input ingredients]\". You can either "
    "\"fetch\" an object (ingredients) from the inventory or the environment or \"craft\" "
    "(target) using any of the crafting commands. You can use ONLY these crafting commands "
    "provided, do not use your own crafting commands. However, if the crafting command uses a "
    "generic ingredient like \"planks\", you can use special types of the same ingredient e.g. "
    "\"dark oak planks\" in the command instead. For any other natural language or thoughts, "
    "use prefix 'think: '.\n"
    "\n"
    "Here is a demo of how to fetch and craft objects.\n"
    "\n"
    "{exemplars}\n"
    "Here is a different goal with different craft commands. You can take the help of crafting "
    "commands below to create new objects. Keep in mind that:\n"
    "- It is okay to generate more target objects than your goal.\n"
    "- Be very careful with the count of objects, SAME object counts mentioned in the input "
    "crafting command. \n"
    "- You cannot use a partial crafting command recipe, i.e. if the recipe generates 2 objects "
    "you CANNOT alter it to produce just 1. \n"
    "- Also, you can use ONLY 1 crafting command in your plan.\n"
    "{task}\n"
    "{history}\n";

const char kWebshopTemplate[] =
    "You are currently on the search results page. You will be given the current request of "
    "purchasing a product, the previous search action, and the most recent observation from the "
    "website.\n"
    "<<reflect>>\n"
    "Your task is to \n"
    "1. decide whether any of the previous {window} actions (see below) needs to be modified. \n"
    "2. decide the most appropriate next action. \n"
    "\n"
    "When you reply, you must follow these rules:\n"
    "1. If you think any previous actions is wrong and want to modify the previous action, you "
    "must provide the modified action that is different from the previous action. If the "
    "modified action is a click action, you can only click on options enclosed in square "
    "brackets [] from the closest observation before that previous action.\n"
    "2. When you determine the next action, you can only click on text enclosed in '[]' from "
    "the most recent observation after current request.\n"
    "3. The action could only be either 'click' or 'search'. You must replace the 'action' word "
    "in the following reply template with either 'click' or 'search'.\n"
    "\n"
    "You must reply in this format:\n"
    "\"Previous action {previous_action} is [correct or wrong]. This action should be modified "
    "to: action[...]\n"
    "The next action is: action[...]\"\n"
    "<<end>>\n"
    "<<first>>\n"
    "Your task is to decide the most appropriate next action.\n"
    "\n"
    "When you reply, you must follow these rules:\n"
    "1. When you determine the next action, you can only click on text enclosed in '[]' from "
    "the most recent observation after current request.\n"
    "2. The action could only be either 'click' or 'search'. You must replace the 'action' word "
    "in the following reply template with either 'click' or 'search'.\n"
    "\n"
    "You must reply in this format:\n"
    "\"The next action is: action[...]\"\n"
    "<<end>>\n"
    "\n"
    "{exemplars}\n"
    "{history}\n";

const char kAlfworldTemplate[] =
    "You are a helpful robot navigating through a household. Your task is related to some of "
    "the following tasks:\n"
    "- Put an item in/on a receptacle\n"
    "- Take an item from a receptacle\n"
    "- Heat an item with a receptacle\n"
    "- Cool an item with a receptacle\n"
    "- Clean an item with a receptacle\n"
    "- Use a desklamp to look at an item\n"
    "You can only hold one item in your hand. If you have previously taken an item and want to "
    "take another, you will need to put the previously held item down.\n"
    "The name of the item you take must exactly match the name given in the task description. "
    "To find the right item, you can look in any possible places. You can start your search "
    "where the item is most likely to be found.\n"
    "\n"
    "<<reflect>>\n"
    "Please decide whether the previous action '{previous_action}' needs to be corrected and "
    "decide the most appropriate next action. If the previous action needs to be corrected, "
    "make sure the corrected action is different from the previous action and it is executable. "
    "The next action should be different from the corrected action. If the previous action does "
    "not need to be corrected, repeat the previous action as the corrected action.\n"
    "Please reply in this format: \"Previous action '{previous_action}' is [correct or wrong]. "
    "To fix this mistake, I should execute: [action].\n"
    "The next action is: [action].\"\n"
    "<<end>>\n"
    "<<first>>\n"
    "Please decide the most appropriate next action.\n"
    "Please reply in this format: \"The next action is: [action].\"\n"
    "<<end>>\n"
    "\n"
    "Interact with a household to solve a task. Here are two examples.\n"
    "{exemplars}\n"
    "Here is the task\n"
    "{task}\n"
    "{history}\n";

const char kReactTemplate[] =
    "You can perform the following actions to interact with the environment: \n"
    "- craft [target count] [target item] using [count] [item]\n"
    "- get [count] [item]\n"
    "- inventory\n"
    "Here [count] is a place holder for number of object, and [item] is placeholder for name of "
    "object.\n"
    "\n"
    "You are given few useful crafting recipes to craft items in Minecraft. Crafting commands "
    "are of the format \"craft [target object] using [input ingredients]\". You can either "
    "\"fetch\" an object (ingredients) from the inventory or the environment or \"craft\" "
    "(target) using any of the crafting commands. You can use ONLY these crafting commands "
    "provided, do not use your own crafting commands. However, if the crafting command uses a "
    "generic ingredient like \"planks\", you can use special types of the same ingredient e.g. "
    "\"dark oak planks\" in the command instead. For any other natural language or thoughts, "
    "use prefix 'think: '.\n"
    "\n"
    "Here is a demo of how to fetch and craft objects.\n"
    "\n"
    "{exemplars}\n"
    "Here is a different goal with different craft commands. You can take the help of crafting "
    "commands below to create new objects. Keep in mind that:\n"
    "- It is okay to generate more target objects than your goal.\n"
    "- Be very careful with the count of objects, SAME object counts mentioned in the input "
    "crafting command. \n"
    "- You cannot use a partial crafting command recipe, i.e. if the recipe generates 2 objects "
    "you CANNOT alter it to produce just 1. \n"
    "- Also, you can use ONLY 1 crafting command in your plan.\n"
    "{task}\n"
    "{history}\n"
    "Reply with exactly one action on a single line.\n";

} // namespace

PromptTemplate PromptTemplate::from_text(std::string text) {
    PromptTemplate t;
    t.text_ = std::move(text);
    return t;
}

PromptTemplate PromptTemplate::load_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open template file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_text(buf.str());
}

const PromptTemplate &PromptTemplate::builtin(Format f) {
    static const PromptTemplate textcraft = from_text(kTextcraftTemplate);
    static const PromptTemplate webshop = from_text(kWebshopTemplate);
    static const PromptTemplate alfworld = from_text(kAlfworldTemplate);
    switch (f) {
    case Format::Webshop: return webshop;
    case Format::Alfworld: return alfworld;
    case Format::Textcraft: break;
    }
    return textcraft;
}

const PromptTemplate &PromptTemplate::builtin_react() {
    static const PromptTemplate react = from_text(kReactTemplate);
    return react;
}

std::string render_history(const std::vector<std::pair<std::string, std::string>> &history) {
    std::string out;
    for (std::size_t i = 0; i < history.size(); ++i) {
        if (i) out += "\n";
        out += "> " + history[i].first + "\n" + history[i].second;
    }
    return out;
}

PromptTemplate::Rendered PromptTemplate::render(
    const std::string &exemplars, const std::string &task,
    const std::vector<std::pair<std::string, std::string>> &history, int window) const {
    Rendered out;
    int available = static_cast<int>(history.size());
    out.window_used = std::min(std::max(window, 0), available);
    out.window_clamped = available > 0 && window > available;

    std::vector<std::string> window_actions;
    for (int i = available - out.window_used; i < available; ++i)
        window_actions.push_back(history[i].first);

    std::string history_text = render_history(history);
    std::string window_text = std::to_string(out.window_used);

    enum class Block { None, Reflect, First };
    Block block = Block::None;
    bool reflect_active = out.window_used > 0;

    std::size_t pos = 0;
    while (pos <= text_.size()) {
        std::size_t nl = text_.find('\n', pos);
        std::string line = text_.substr(pos, nl == std::string::npos ? nl : nl - pos);
        bool has_newline = nl != std::string::npos;
        pos = has_newline ? nl + 1 : text_.size() + 1;

        if (line == kReflectMarker) {
            block = Block::Reflect;
            continue;
        }
        if (line == kFirstMarker) {
            block = Block::First;
            continue;
        }
        if (line == kEndMarker) {
            block = Block::None;
            continue;
        }
        bool active = block == Block::None || (block == Block::Reflect && reflect_active) ||
                      (block == Block::First && !reflect_active);
        if (!active) continue;

        auto emit = [&](std::string content) {
            replace_all(content, "{window}", window_text);
            replace_all(content, "{exemplars}", exemplars);
            replace_all(content, "{task}", task);
            replace_all(content, "{history}", history_text);
            out.text += content;
            if (has_newline) out.text += '\n';
        };

        if (line.find("{previous_action}") != std::string::npos) {
            for (const auto &action : window_actions) {
                std::string expanded = line;
                replace_all(expanded, "{previous_action}", action);
                emit(std::move(expanded));
            }
        } else {
            emit(std::move(line));
        }

        if (!has_newline) break;
    }
    return out;
}

std::string format_reminder(Format format, bool has_window) {
    if (!has_window) {
        if (format == Format::Webshop)
            return "You must reply in this format: \"The next action is: action[...]\"";
        return "You must reply in this format: \"The next action is: [action].\"";
    }
    switch (format) {
    case Format::Textcraft:
        return "You must reply in this format: \"Previous action '[previous action]' is "
               "[correct or wrong]. It should be modified to: [action].\nThe next action is: "
               "[action].\"";
    case Format::Alfworld:
        return "You must reply in this format: \"Previous action '[previous action]' is "
               "[correct or wrong]. To fix this mistake, I should execute: [action].\nThe next "
               "action is: [action].\"";
    case Format::Webshop:
        return "You must reply in this format: \"Previous action [previous action] is [correct "
               "or wrong]. This action should be modified to: action[...]\nThe next action is: "
               "action[...]\"";
    }
    return {};
}

std::string react_format_reminder() {
    return "Reply with exactly one action on a single line.";
}

std::variant<std::string, FormatError> parse_action_line(const std::string &text) {
    for (const auto &raw : split(text, "\n")) {
        std::string line = trim(raw);
        if (line.empty()) continue;
        if (line.rfind("> ", 0) == 0) line = trim(line.substr(2));
        if (line.empty()) continue;
        return line;
    }
    return FormatError{"empty response"};
}

} // namespace rebact::protocol
