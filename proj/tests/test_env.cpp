#include "doctest.h"

#include "env.hpp"
#include "task_io.hpp"

using namespace rebact::craft;

namespace {

/// beehive <- 6 planks (generic) + 3 honeycomb; planks gettable via its
/// specializations, honeycomb gettable directly.
CraftTask beehive_task() {
    CraftTask task;
    task.id = "beehive";
    task.goal = {"beehive", 1};
    task.recipes.push_back(
        Recipe{{"beehive", 1}, {{"planks", 6}, {"honeycomb", 3}}});
    task.gettable = {"planks", "honeycomb"};
    task.generics.add("planks", {"oak planks", "dark oak planks"});
    validate_task(task);
    return task;
}

CraftCommand craft_cmd(const std::string &line) {
    auto p = parse_command(line);
    REQUIRE(p.ok());
    return std::get<CraftCommand>(*p.command);
}

} // namespace

TEST_CASE("generic slot satisfied by one specialization") {
    auto task = beehive_task();
    Inventory inv;
    inv.add("dark oak planks", 6);
    inv.add("honeycomb", 3);
    auto m = match_recipe(craft_cmd("craft 1 beehive using 6 dark oak planks, 3 honeycomb"),
                          task, inv);
    REQUIRE(m.matched());
    REQUIRE(m.consumption.size() == 2);
    CHECK(m.consumption[0] == ItemStack{"dark oak planks", 6});
    CHECK(m.consumption[1] == ItemStack{"honeycomb", 3});
}

TEST_CASE("generic slot mixes specializations in lexicographic order") {
    auto task = beehive_task();
    Inventory inv;
    inv.add("oak planks", 4);
    inv.add("dark oak planks", 4);
    inv.add("honeycomb", 3);
    auto m = match_recipe(craft_cmd("craft 1 beehive using 6 planks, 3 honeycomb"), task, inv);
    REQUIRE(m.matched());
    // "dark oak planks" < "oak planks": 4 dark oak drawn first, then 2 oak.
    REQUIRE(m.consumption.size() == 3);
    CHECK(m.consumption[0] == ItemStack{"dark oak planks", 4});
    CHECK(m.consumption[1] == ItemStack{"honeycomb", 3});
    CHECK(m.consumption[2] == ItemStack{"oak planks", 2});
}

TEST_CASE("partial output counts reject as a count mismatch") {
    CraftTask task;
    task.id = "sticks";
    task.goal = {"stick", 4};
    task.recipes.push_back(Recipe{{"stick", 4}, {{"planks", 2}}});
    task.gettable = {"planks"};
    task.generics.add("planks", {"oak planks"});
    validate_task(task);

    Inventory inv;
    inv.add("oak planks", 2);
    auto m = match_recipe(craft_cmd("craft 2 stick using 2 planks"), task, inv);
    CHECK(m.status == MatchStatus::CountMismatch);
    CHECK(m.message == "Could not craft 2 stick: the recipe yields 4 stick");
}

TEST_CASE("missing ingredients list the shortfalls") {
    auto task = beehive_task();
    Inventory inv;
    auto m = match_recipe(craft_cmd("craft 1 beehive using 6 planks, 3 honeycomb"), task, inv);
    CHECK(m.status == MatchStatus::MissingIngredients);
    REQUIRE(m.shortfalls.size() == 2);
    CHECK(m.shortfalls[0] == ItemStack{"planks", 6});
    CHECK(m.shortfalls[1] == ItemStack{"honeycomb", 3});
    CHECK(m.message == "Missing ingredients: 6 planks, 3 honeycomb");
}

TEST_CASE("unknown outputs and unmappable inputs reject") {
    auto task = beehive_task();
    Inventory inv;
    inv.add("oak planks", 6);
    inv.add("honeycomb", 3);
    auto none = match_recipe(craft_cmd("craft 1 chest using 8 planks"), task, inv);
    CHECK(none.status == MatchStatus::NoSuchRecipe);
    CHECK(none.message == "Could not find a recipe for chest");

    // Right output, wrong ingredient statement.
    auto wrong = match_recipe(craft_cmd("craft 1 beehive using 5 planks, 3 honeycomb"),
                              task, inv);
    CHECK(wrong.status == MatchStatus::NoSuchRecipe);

    auto extra = match_recipe(
        craft_cmd("craft 1 beehive using 6 planks, 3 honeycomb, 1 string"), task, inv);
    CHECK(extra.status == MatchStatus::NoSuchRecipe);

    auto missing_slot = match_recipe(craft_cmd("craft 1 beehive using 6 planks"), task, inv);
    CHECK(missing_slot.status == MatchStatus::NoSuchRecipe);
}

TEST_CASE("step: get adds only gettable items") {
    Env env(beehive_task());
    CHECK(env.exec_line("get 3 honeycomb") == "Got 3 honeycomb");
    CHECK(env.inventory().count("honeycomb") == 3);

    SUBCASE("craft-only items cannot be fetched") {
        CHECK(env.exec_line("get 1 beehive") == "Could not find beehive");
        CHECK(env.inventory().count("beehive") == 0);
    }
    SUBCASE("generic names are abstract, not fetchable") {
        CHECK(env.exec_line("get 6 planks") == "Could not find planks");
    }
    SUBCASE("specializations of a gettable generic are fetchable") {
        CHECK(env.exec_line("get 6 oak planks") == "Got 6 oak planks");
    }
}

TEST_CASE("step: full craft episode") {
    Env env(beehive_task());
    CHECK_FALSE(env.goal_reached());
    env.exec_line("get 6 dark oak planks");
    env.exec_line("get 3 honeycomb");
    CHECK(env.exec_line("craft 1 beehive using 6 dark oak planks, 3 honeycomb") ==
          "Crafted 1 beehive");
    CHECK(env.goal_reached());
    CHECK(env.inventory().count("dark oak planks") == 0);
    CHECK(env.inventory().count("honeycomb") == 0);
    CHECK(env.inventory().count("beehive") == 1);
}

TEST_CASE("step: think and inventory observations") {
    Env env(beehive_task());
    CHECK(env.exec_line("think: I need planks") == "OK.");
    CHECK(env.exec_line("inventory") == "Inventory: empty");
    env.exec_line("get 3 honeycomb");
    env.exec_line("get 6 oak planks");
    CHECK(env.exec_line("inventory") == "Inventory: 3 honeycomb, 6 oak planks");
}

TEST_CASE("step: unparseable lines observe and leave state unchanged") {
    Env env(beehive_task());
    auto before = env.inventory();
    CHECK(env.exec_line("make 1 stick") == "Could not execute make 1 stick");
    CHECK(env.inventory() == before);
}

TEST_CASE("goal_reached allows overshoot") {
    Inventory inv;
    CHECK_FALSE(goal_reached(inv, {"beehive", 1}));
    inv.add("beehive", 1);
    CHECK(goal_reached(inv, {"beehive", 1}));
    inv.add("beehive", 1);
    CHECK(goal_reached(inv, {"beehive", 1}));
}

TEST_CASE("render_inventory is sorted and stable") {
    Inventory inv;
    CHECK(render_inventory(inv) == "Inventory: empty");
    inv.add("oak planks", 6);
    inv.add("honeycomb", 3);
    CHECK(render_inventory(inv) == "Inventory: 3 honeycomb, 6 oak planks");
    Inventory sticks;
    sticks.add("stick", 4);
    CHECK(render_inventory(sticks) == "Inventory: 4 stick");
}

TEST_CASE("repeated crafts multiply output; one command never scales") {
    auto task = beehive_task();
    Env env(task);
    env.exec_line("get 12 oak planks");
    env.exec_line("get 6 honeycomb");
    CHECK(env.exec_line("craft 2 beehive using 12 planks, 6 honeycomb") ==
          "Could not craft 2 beehive: the recipe yields 1 beehive");
    CHECK(env.exec_line("craft 1 beehive using 6 planks, 3 honeycomb") == "Crafted 1 beehive");
    CHECK(env.exec_line("craft 1 beehive using 6 planks, 3 honeycomb") == "Crafted 1 beehive");
    CHECK(env.inventory().count("beehive") == 2);
}

TEST_CASE("task validation rejects invariant violations") {
    CraftTask task = beehive_task();
    task.gettable.insert("beehive"); // gettable ∩ outputs must be empty
    CHECK_THROWS_AS(validate_task(task), TaskError);

    CraftTask cyclic;
    cyclic.id = "cyclic";
    cyclic.goal = {"a", 1};
    cyclic.recipes.push_back(Recipe{{"a", 1}, {{"b", 1}}});
    cyclic.recipes.push_back(Recipe{{"b", 1}, {{"a", 1}}});
    CHECK_THROWS_AS(validate_task(cyclic), TaskError);

    CraftTask orphan;
    orphan.id = "orphan";
    orphan.goal = {"x", 1};
    CHECK_THROWS_AS(validate_task(orphan), TaskError);
}

TEST_CASE("task json round-trips") {
    auto tasks = std::vector<CraftTask>{beehive_task()};
    auto text = tasks_to_json_text(tasks);
    auto loaded = tasks_from_json_text(text);
    REQUIRE(loaded.size() == 1);
    CHECK(loaded[0].id == "beehive");
    CHECK(loaded[0].goal == ItemStack{"beehive", 1});
    CHECK(loaded[0].recipes == tasks[0].recipes);
    CHECK(loaded[0].gettable == tasks[0].gettable);
    CHECK(tasks_to_json_text(loaded) == text);
}

TEST_CASE("task description block") {
    CHECK(task_description(beehive_task()) ==
          "Crafting commands:\n"
          "craft 1 beehive using 6 planks, 3 honeycomb\n"
          "Goal: craft 1 beehive.");
}
