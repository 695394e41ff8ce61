#include "doctest.h"

#include "command.hpp"

using namespace rebact::craft;

TEST_CASE("craft command with comma-separated ingredients") {
    auto p = parse_command("craft 1 beehive using 6 oak planks, 3 honeycomb");
    REQUIRE(p.ok());
    auto craft = std::get<CraftCommand>(*p.command);
    CHECK(craft.target == ItemStack{"beehive", 1});
    REQUIRE(craft.inputs.size() == 2);
    CHECK(craft.inputs[0] == ItemStack{"oak planks", 6});
    CHECK(craft.inputs[1] == ItemStack{"honeycomb", 3});
}

TEST_CASE("ingredients split on 'and' as well as commas") {
    auto p = parse_command("craft 1 cake using 3 wheat, 2 sugar and 1 egg");
    REQUIRE(p.ok());
    auto craft = std::get<CraftCommand>(*p.command);
    REQUIRE(craft.inputs.size() == 3);
    CHECK(craft.inputs[0] == ItemStack{"wheat", 3});
    CHECK(craft.inputs[1] == ItemStack{"sugar", 2});
    CHECK(craft.inputs[2] == ItemStack{"egg", 1});
}

TEST_CASE("inventory keyword") {
    auto p = parse_command("inventory");
    REQUIRE(p.ok());
    CHECK(std::holds_alternative<InventoryCommand>(*p.command));
    CHECK(parse_command("Inventory").ok()); // verb case-insensitive
    CHECK_FALSE(parse_command("inventory now").ok());
}

TEST_CASE("get command") {
    auto p = parse_command("get 3 honeycomb");
    REQUIRE(p.ok());
    CHECK(std::get<GetCommand>(*p.command).item == ItemStack{"honeycomb", 3});
}

TEST_CASE("think prefix keeps the text") {
    auto p = parse_command("think: I need planks first");
    REQUIRE(p.ok());
    CHECK(std::get<ThinkCommand>(*p.command).text == "I need planks first");
    CHECK_FALSE(parse_command("think:").ok());
    CHECK_FALSE(parse_command("think:   ").ok());
}

TEST_CASE("unknown verbs and malformed counts reject") {
    CHECK_FALSE(parse_command("make 1 stick").ok());
    CHECK_FALSE(parse_command("").ok());
    CHECK_FALSE(parse_command("get honeycomb").ok());      // missing count
    CHECK_FALSE(parse_command("get 0 honeycomb").ok());    // count must be positive
    CHECK_FALSE(parse_command("get -2 honeycomb").ok());
    CHECK_FALSE(parse_command("get 3").ok());              // empty item name
    CHECK_FALSE(parse_command("craft 1 beehive").ok());    // missing using clause
    CHECK_FALSE(parse_command("craft 1 x using 1 y,").ok());
    CHECK_FALSE(parse_command("craft 1 x using").ok());
}

TEST_CASE("item names normalize to lowercase single spaces") {
    auto p = parse_command("get 6  Dark   OAK planks");
    REQUIRE(p.ok());
    CHECK(std::get<GetCommand>(*p.command).item == ItemStack{"dark oak planks", 6});
}

TEST_CASE("command_text inverts parse_command") {
    const char *lines[] = {
        "craft 1 beehive using 6 oak planks, 3 honeycomb",
        "get 3 honeycomb",
        "inventory",
        "think: trying the other recipe",
    };
    for (const char *line : lines) {
        auto p = parse_command(line);
        REQUIRE(p.ok());
        CHECK(command_text(*p.command) == line);
    }
}
