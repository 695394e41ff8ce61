#include "logging.hpp"

#include "json.hpp"

#include <cmath>
#include <fstream>

namespace rebact::agent {

using nlohmann::ordered_json;
using protocol::ExecSource;
using protocol::Verdict;
using protocol::Violation;

std::string to_string(ExecSource source) {
    return source == ExecSource::Modified ? "modified" : "next";
}

std::string to_string(Violation violation) {
    switch (violation) {
    case Violation::ModifiedEqualsPrevious: return "modified_equals_previous";
    case Violation::CorrectButDifferent: return "correct_but_different";
    }
    return "unknown";
}

std::string to_string(Verdict verdict) {
    return verdict == Verdict::Wrong ? "wrong" : "correct";
}

namespace {

Verdict verdict_from_string(const std::string &s, std::size_t line_number) {
    if (s == "wrong") return Verdict::Wrong;
    if (s == "correct") return Verdict::Correct;
    throw CorruptLog("line " + std::to_string(line_number) + ": unknown verdict '" + s + "'");
}

double round3(double x) {
    return std::round(x * 1000.0) / 1000.0;
}

} // namespace

std::string call_record_to_jsonl(const CallRecord &r) {
    ordered_json j;
    j["episode_id"] = r.episode_id;
    j["step"] = r.step;
    j["call_index"] = r.call_index;
    j["prompt_sha256"] = r.prompt_sha256;
    j["response"] = r.response;
    if (r.parse_ok) {
        ordered_json parsed;
        auto verdicts = ordered_json::array();
        for (auto v : r.verdicts) verdicts.push_back(to_string(v));
        parsed["verdicts"] = std::move(verdicts);
        parsed["modified"] = r.modified;
        parsed["next"] = r.next_action;
        j["parsed"] = std::move(parsed);
    } else {
        j["parsed"] = nullptr;
    }
    if (r.executed) {
        ordered_json exec;
        exec["action"] = r.action;
        exec["source"] = to_string(r.source);
        auto violations = ordered_json::array();
        for (auto v : r.violations) violations.push_back(to_string(v));
        exec["violations"] = std::move(violations);
        j["exec"] = std::move(exec);
        j["observation"] = r.observation;
    } else {
        j["exec"] = nullptr;
        j["observation"] = nullptr;
    }
    j["duration_ms"] = round3(r.duration_ms);
    return j.dump();
}

CallRecord call_record_from_jsonl(const std::string &line, std::size_t line_number) {
    ordered_json j;
    try {
        j = ordered_json::parse(line);
    } catch (const nlohmann::json::parse_error &e) {
        throw CorruptLog("line " + std::to_string(line_number) + ": " + e.what());
    }
    if (!j.is_object()) throw CorruptLog("line " + std::to_string(line_number) + ": not an object");
    CallRecord r;
    try {
        r.episode_id = j.at("episode_id").get<std::string>();
        r.step = j.at("step").get<int>();
        r.call_index = j.at("call_index").get<int>();
        r.prompt_sha256 = j.at("prompt_sha256").get<std::string>();
        r.response = j.at("response").get<std::string>();
        const auto &parsed = j.at("parsed");
        if (!parsed.is_null()) {
            r.parse_ok = true;
            for (const auto &v : parsed.at("verdicts"))
                r.verdicts.push_back(verdict_from_string(v.get<std::string>(), line_number));
            for (const auto &m : parsed.at("modified"))
                r.modified.push_back(m.get<std::string>());
            r.next_action = parsed.at("next").get<std::string>();
        }
        const auto &exec = j.at("exec");
        if (!exec.is_null()) {
            r.executed = true;
            r.action = exec.at("action").get<std::string>();
            std::string source = exec.at("source").get<std::string>();
            if (source != "next" && source != "modified")
                throw CorruptLog("line " + std::to_string(line_number) + ": unknown source '" +
                                 source + "'");
            r.source = source == "modified" ? ExecSource::Modified : ExecSource::Next;
            for (const auto &v : exec.at("violations")) {
                std::string name = v.get<std::string>();
                if (name == "modified_equals_previous")
                    r.violations.push_back(Violation::ModifiedEqualsPrevious);
                else if (name == "correct_but_different")
                    r.violations.push_back(Violation::CorrectButDifferent);
                else
                    throw CorruptLog("line " + std::to_string(line_number) +
                                     ": unknown violation '" + name + "'");
            }
            r.observation = j.at("observation").get<std::string>();
        }
        r.duration_ms = j.at("duration_ms").get<double>();
    } catch (const nlohmann::json::exception &e) {
        throw CorruptLog("line " + std::to_string(line_number) + ": " + e.what());
    }
    return r;
}

void write_trajectory_log(const std::vector<CallRecord> &records, const std::string &path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write log file '" + path + "'");
    for (const auto &r : records) out << call_record_to_jsonl(r) << "\n";
}

std::vector<CallRecord> read_trajectory_log(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open log file '" + path + "'");
    std::vector<CallRecord> records;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) continue;
        records.push_back(call_record_from_jsonl(line, line_number));
    }
    return records;
}

} // namespace rebact::agent
