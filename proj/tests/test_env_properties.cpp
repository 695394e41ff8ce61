#include "doctest.h"

#include "prop_support.hpp"

#include <map>

using namespace rebact;
using namespace rebact::craft;

namespace {

std::map<std::string, int> entries(const Inventory &inv) {
    return inv.entries();
}

bool coverable_brute_force(const std::vector<std::string> &specs, const Inventory &inv,
                           int need, std::size_t i = 0) {
    if (need <= 0) return true;
    if (i >= specs.size()) return false;
    for (int take = 0; take <= inv.count(specs[i]); ++take)
        if (coverable_brute_force(specs, inv, need - take, i + 1)) return true;
    return false;
}

} // namespace

TEST_CASE("conservation, purity, monotonicity and determinism over random step sequences") {
    DetRng rng(20240811);
    for (int round = 0; round < 400; ++round) {
        auto task = propgen::random_task(rng);
        Env env(task, propgen::random_inventory(rng, task));
        for (int s = 0; s < 25; ++s) {
            std::string line = propgen::random_command_line(rng, task);
            auto before = entries(env.inventory());

            Env replay = env; // determinism probe
            std::string obs = env.exec_line(line);
            CHECK(replay.exec_line(line) == obs);
            CHECK(entries(replay.inventory()) == entries(env.inventory()));

            auto after = entries(env.inventory());
            if (obs.rfind("Got ", 0) == 0) {
                auto parsed = parse_command(line);
                REQUIRE(parsed.ok());
                auto get = std::get<GetCommand>(*parsed.command);
                // Monotonic: exactly one count grew, by the fetched amount.
                for (const auto &[item, count] : before)
                    CHECK(after[item] >= count);
                CHECK(after[get.item.item] ==
                      (before.count(get.item.item) ? before[get.item.item] : 0) +
                          get.item.count);
            } else if (obs.rfind("Crafted ", 0) == 0) {
                auto parsed = parse_command(line);
                REQUIRE(parsed.ok());
                auto craft = std::get<CraftCommand>(*parsed.command);
                Inventory pre;
                for (const auto &[item, count] : before) pre.add(item, count);
                auto m = match_recipe(craft, task, pre);
                REQUIRE(m.matched());
                std::map<std::string, int> expected = before;
                for (const auto &stack : m.consumption) expected[stack.item] -= stack.count;
                expected[m.recipe->output.item] += m.recipe->output.count;
                std::erase_if(expected, [](const auto &kv) { return kv.second == 0; });
                CHECK(after == expected);
            } else {
                // Rejections, observations and thinks leave the state untouched.
                CHECK(after == before);
            }
        }
    }
}

TEST_CASE("exact-count matching: any count differing from the output rejects") {
    DetRng rng(77001);
    for (int round = 0; round < 200; ++round) {
        auto task = propgen::random_task(rng);
        auto inv = propgen::random_inventory(rng, task);
        for (const auto &r : task.recipes) {
            for (int delta : {-2, -1, 1, 2, 5}) {
                int count = r.output.count + delta;
                if (count < 1) continue;
                CraftCommand cmd{{r.output.item, count}, r.ingredients};
                auto m = match_recipe(cmd, task, inv);
                CHECK_FALSE(m.matched());
                CHECK(m.status == MatchStatus::CountMismatch);
            }
        }
    }
}

TEST_CASE("generic coverage equals brute-force subset-sum on small inventories") {
    DetRng rng(5150);
    CraftTask task;
    task.id = "coverage";
    task.goal = {"widget", 1};
    task.generics.add("metal", propgen::spec_pool());
    task.gettable = {"stone"};

    for (int round = 0; round < 2000; ++round) {
        int need = rng.range(1, 9);
        task.recipes = {Recipe{{"widget", 1}, {{"metal", need}}}};
        validate_task(task);

        Inventory inv;
        for (const auto &spec : propgen::spec_pool())
            if (rng.chance(0.7)) inv.add(spec, rng.range(0, 4));

        CraftCommand cmd{{"widget", 1}, {{"metal", need}}};
        auto m = match_recipe(cmd, task, inv);
        bool coverable = coverable_brute_force(propgen::spec_pool(), inv, need);
        CHECK(m.matched() == coverable);
        if (m.matched()) {
            int consumed = 0;
            for (const auto &stack : m.consumption) consumed += stack.count;
            CHECK(consumed == need);
        }
    }
}
