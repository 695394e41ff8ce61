#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace rebact::craft {

/// Canonical item name: lowercase, single-space separated tokens.
std::string normalize_item(std::string_view raw);

struct ItemStack {
    std::string item;
    int count = 0;

    bool operator==(const ItemStack &) const = default;
};

/// Multiset of owned items. Zero-count entries are never stored.
class Inventory {
public:
    int count(const std::string &item) const {
        auto it = items_.find(item);
        return it == items_.end() ? 0 : it->second;
    }

    int total() const {
        int n = 0;
        for (const auto &[_, c] : items_) n += c;
        return n;
    }

    void add(const std::string &item, int n) {
        if (n <= 0) return;
        items_[item] += n;
    }

    /// Remove exactly n; returns false (and leaves the entry unchanged)
    /// if fewer than n are held.
    bool remove(const std::string &item, int n) {
        auto it = items_.find(item);
        if (it == items_.end() || it->second < n) return false;
        it->second -= n;
        if (it->second == 0) items_.erase(it);
        return true;
    }

    bool empty() const { return items_.empty(); }

    const std::map<std::string, int> &entries() const { return items_; }

    bool operator==(const Inventory &) const = default;

private:
    std::map<std::string, int> items_;
};

/// Crafting rule: one output stack from a fixed list of ingredient slots.
/// A slot item may be a generic name covered by GenericMap.
struct Recipe {
    ItemStack output;
    std::vector<ItemStack> ingredients;

    bool operator==(const Recipe &) const = default;
};

/// Generic ingredient families, e.g. "planks" -> {"oak planks", ...}.
/// Specializations are disjoint from generic names and each specialization
/// belongs to exactly one generic.
class GenericMap {
public:
    /// Throws std::invalid_argument on an invariant violation.
    void add(const std::string &generic, const std::vector<std::string> &specs);

    bool is_generic(const std::string &name) const {
        return generic_to_specs_.count(name) > 0;
    }

    /// Sorted specializations of a generic, or nullptr.
    const std::vector<std::string> *specializations(const std::string &generic) const {
        auto it = generic_to_specs_.find(generic);
        return it == generic_to_specs_.end() ? nullptr : &it->second;
    }

    /// Generic a specialization belongs to, or nullptr.
    const std::string *generic_of(const std::string &spec) const {
        auto it = spec_to_generic_.find(spec);
        return it == spec_to_generic_.end() ? nullptr : &it->second;
    }

    const std::map<std::string, std::vector<std::string>> &families() const {
        return generic_to_specs_;
    }

    bool operator==(const GenericMap &) const = default;

private:
    std::map<std::string, std::vector<std::string>> generic_to_specs_;
    std::map<std::string, std::string> spec_to_generic_;
};

/// "craft 1 beehive using 6 planks, 3 honeycomb" with slots as written.
std::string recipe_command_text(const Recipe &r);

/// "Inventory: 3 honeycomb, 6 oak planks" (lexicographic) or "Inventory: empty".
std::string render_inventory(const Inventory &inv);

} // namespace rebact::craft
