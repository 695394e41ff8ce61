#include "task_io.hpp"

#include "json.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace rebact::craft {

using nlohmann::ordered_json;

namespace {

ItemStack stack_from_json(const ordered_json &j, const char *what) {
    if (!j.is_object() || !j.contains("item") || !j.contains("count"))
        throw TaskError(std::string(what) + ": expected {item, count}");
    ItemStack s{normalize_item(j.at("item").get<std::string>()), j.at("count").get<int>()};
    if (s.item.empty() || s.count < 1)
        throw TaskError(std::string(what) + ": invalid item or count");
    return s;
}

CraftTask task_from_json(const ordered_json &j) {
    if (!j.is_object()) throw TaskError("task entry is not an object");
    CraftTask task;
    task.id = j.value("id", std::string{});
    task.goal = stack_from_json(j.at("goal"), "goal");
    for (const auto &rj : j.value("recipes", ordered_json::array())) {
        Recipe r;
        r.output = stack_from_json(rj.at("output"), "recipe output");
        for (const auto &ij : rj.value("ingredients", ordered_json::array()))
            r.ingredients.push_back(stack_from_json(ij, "recipe ingredient"));
        task.recipes.push_back(std::move(r));
    }
    for (const auto &g : j.value("gettable", ordered_json::array()))
        task.gettable.insert(normalize_item(g.get<std::string>()));
    if (j.contains("generics")) {
        for (const auto &[generic, specs] : j.at("generics").items()) {
            std::vector<std::string> list;
            for (const auto &s : specs) list.push_back(s.get<std::string>());
            try {
                task.generics.add(generic, list);
            } catch (const std::invalid_argument &e) {
                throw TaskError("task '" + task.id + "': " + e.what());
            }
        }
    }
    task.exemplar_block = j.value("exemplar_block", std::string{});
    validate_task(task);
    return task;
}

ordered_json stack_to_json(const ItemStack &s) {
    return ordered_json{{"item", s.item}, {"count", s.count}};
}

ordered_json task_to_json(const CraftTask &task) {
    ordered_json j;
    j["id"] = task.id;
    j["goal"] = stack_to_json(task.goal);
    auto recipes = ordered_json::array();
    for (const auto &r : task.recipes) {
        ordered_json rj;
        rj["output"] = stack_to_json(r.output);
        auto ings = ordered_json::array();
        for (const auto &ing : r.ingredients) ings.push_back(stack_to_json(ing));
        rj["ingredients"] = std::move(ings);
        recipes.push_back(std::move(rj));
    }
    j["recipes"] = std::move(recipes);
    j["gettable"] = ordered_json(task.gettable);
    ordered_json generics = ordered_json::object();
    for (const auto &[g, specs] : task.generics.families()) generics[g] = specs;
    j["generics"] = std::move(generics);
    j["exemplar_block"] = task.exemplar_block;
    return j;
}

} // namespace

std::vector<CraftTask> tasks_from_json_text(const std::string &text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw TaskError(std::string("task file is not valid JSON: ") + e.what());
    }
    std::vector<CraftTask> tasks;
    if (doc.is_array()) {
        for (const auto &j : doc) tasks.push_back(task_from_json(j));
    } else {
        tasks.push_back(task_from_json(doc));
    }
    std::set<std::string> ids;
    for (const auto &t : tasks)
        if (!ids.insert(t.id).second) throw TaskError("duplicate task id '" + t.id + "'");
    return tasks;
}

std::vector<CraftTask> load_tasks(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open task file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return tasks_from_json_text(buf.str());
}

std::string tasks_to_json_text(const std::vector<CraftTask> &tasks) {
    auto arr = ordered_json::array();
    for (const auto &t : tasks) arr.push_back(task_to_json(t));
    return arr.dump(2) + "\n";
}

void save_tasks(const std::vector<CraftTask> &tasks, const std::string &path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write task file '" + path + "'");
    out << tasks_to_json_text(tasks);
}

} // namespace rebact::craft
