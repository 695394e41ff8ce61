#include "command.hpp"

#include "util.hpp"

#include <algorithm>

namespace rebact::craft {

namespace {

std::optional<int> parse_count(const std::string &tok) {
    if (tok.empty() || tok.size() > 9) return std::nullopt;
    for (char c : tok)
        if (c < '0' || c > '9') return std::nullopt;
    int v = std::stoi(tok);
    if (v <= 0) return std::nullopt;
    return v;
}

/// "<count> <item...>" -> ItemStack. Returns error text on failure.
std::string parse_stack(const std::vector<std::string> &toks, ItemStack &out) {
    if (toks.empty()) return "empty item name";
    auto count = parse_count(toks[0]);
    if (!count) return "missing or invalid count '" + toks[0] + "'";
    std::vector<std::string> rest(toks.begin() + 1, toks.end());
    std::string item = normalize_item(join(rest, " "));
    if (item.empty()) return "empty item name";
    out = {item, *count};
    return {};
}

std::string parse_stack_text(std::string_view text, ItemStack &out) {
    return parse_stack(split_ws(text), out);
}

/// Split an ingredient clause on commas and the standalone word "and".
std::vector<std::string> split_ingredients(const std::string &clause) {
    std::vector<std::string> pieces;
    for (const auto &comma_piece : split(clause, ",")) {
        std::string cur;
        auto toks = split_ws(comma_piece);
        std::vector<std::string> acc;
        for (const auto &tok : toks) {
            if (tok == "and") {
                pieces.push_back(join(acc, " "));
                acc.clear();
            } else {
                acc.push_back(tok);
            }
        }
        pieces.push_back(join(acc, " "));
    }
    return pieces;
}

} // namespace

CommandParse parse_command(std::string_view line) {
    std::string text = trim(line);
    if (text.empty()) return {std::nullopt, "empty command"};

    if (starts_with_ci(text, "think:")) {
        std::string body = trim(text.substr(6));
        if (body.empty()) return {std::nullopt, "empty think text"};
        return {ThinkCommand{body}, {}};
    }

    std::string lowered = to_lower(text);
    auto toks = split_ws(lowered);
    const std::string &verb = toks[0];

    if (verb == "inventory") {
        if (toks.size() != 1) return {std::nullopt, "trailing text after 'inventory'"};
        return {InventoryCommand{}, {}};
    }

    if (verb == "get") {
        ItemStack stack;
        std::string err = parse_stack({toks.begin() + 1, toks.end()}, stack);
        if (!err.empty()) return {std::nullopt, err};
        return {GetCommand{stack}, {}};
    }

    if (verb == "craft") {
        auto using_pos = std::find(toks.begin(), toks.end(), "using");
        if (using_pos == toks.end()) return {std::nullopt, "missing 'using' clause"};
        ItemStack target;
        std::string err = parse_stack({toks.begin() + 1, using_pos}, target);
        if (!err.empty()) return {std::nullopt, err};

        std::string clause = join({using_pos + 1, toks.end()}, " ");
        CraftCommand craft{target, {}};
        for (const auto &piece : split_ingredients(clause)) {
            ItemStack ing;
            err = parse_stack_text(piece, ing);
            if (!err.empty()) return {std::nullopt, err};
            craft.inputs.push_back(ing);
        }
        if (craft.inputs.empty()) return {std::nullopt, "empty ingredient list"};
        return {craft, {}};
    }

    return {std::nullopt, "unknown verb '" + verb + "'"};
}

std::string command_text(const Command &cmd) {
    struct Visitor {
        std::string operator()(const CraftCommand &c) const {
            std::string out = "craft " + std::to_string(c.target.count) + " " + c.target.item + " using ";
            for (std::size_t i = 0; i < c.inputs.size(); ++i) {
                if (i) out += ", ";
                out += std::to_string(c.inputs[i].count) + " " + c.inputs[i].item;
            }
            return out;
        }
        std::string operator()(const GetCommand &g) const {
            return "get " + std::to_string(g.item.count) + " " + g.item.item;
        }
        std::string operator()(const InventoryCommand &) const { return "inventory"; }
        std::string operator()(const ThinkCommand &t) const { return "think: " + t.text; }
    };
    return std::visit(Visitor{}, cmd);
}

} // namespace rebact::craft
