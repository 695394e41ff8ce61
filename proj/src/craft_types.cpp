#include "craft_types.hpp"

#include "util.hpp"

#include <algorithm>
#include <stdexcept>

namespace rebact::craft {

std::string normalize_item(std::string_view raw) {
    return join(split_ws(to_lower(raw)), " ");
}

void GenericMap::add(const std::string &generic, const std::vector<std::string> &specs) {
    std::string g = normalize_item(generic);
    if (g.empty()) throw std::invalid_argument("generic name is empty");
    if (spec_to_generic_.count(g))
        throw std::invalid_argument("generic '" + g + "' is already a specialization");
    auto &list = generic_to_specs_[g];
    for (const auto &raw : specs) {
        std::string s = normalize_item(raw);
        if (s.empty()) throw std::invalid_argument("specialization name is empty");
        if (generic_to_specs_.count(s))
            throw std::invalid_argument("specialization '" + s + "' is also a generic");
        auto [it, inserted] = spec_to_generic_.emplace(s, g);
        if (!inserted && it->second != g)
            throw std::invalid_argument("specialization '" + s + "' maps to two generics");
        if (inserted) list.push_back(s);
    }
    std::sort(list.begin(), list.end());
}

std::string recipe_command_text(const Recipe &r) {
    std::string out = "craft " + std::to_string(r.output.count) + " " + r.output.item + " using ";
    for (std::size_t i = 0; i < r.ingredients.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(r.ingredients[i].count) + " " + r.ingredients[i].item;
    }
    return out;
}

std::string render_inventory(const Inventory &inv) {
    if (inv.empty()) return "Inventory: empty";
    std::string out = "Inventory: ";
    bool first = true;
    for (const auto &[item, count] : inv.entries()) {
        if (!first) out += ", ";
        out += std::to_string(count) + " " + item;
        first = false;
    }
    return out;
}

} // namespace rebact::craft
