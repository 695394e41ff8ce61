#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"

#include "http_backend.hpp"

#include "backends.hpp"
#include "util.hpp"

#include "json.hpp"

#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <mutex>
#include <thread>

namespace rebact::backend {

namespace {

using nlohmann::json;

struct ParsedUrl {
    std::string origin; // scheme://host[:port]
    std::string path;
};

ParsedUrl parse_url(const std::string &url) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw ConfigError("http backend url needs a scheme: " + url);
    auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

const json *walk_path(const json &doc, const std::string &path, json &err) {
    const json *cur = &doc;
    for (const auto &part : split(path, ".")) {
        if (cur->is_array()) {
            char *end = nullptr;
            long idx = std::strtol(part.c_str(), &end, 10);
            if (!end || *end != '\0' || idx < 0 || idx >= (long)cur->size()) {
                err = "array index '" + part + "' out of range";
                return nullptr;
            }
            cur = &(*cur)[idx];
        } else if (cur->is_object() && cur->contains(part)) {
            cur = &cur->at(part);
        } else {
            err = "missing field '" + part + "'";
            return nullptr;
        }
    }
    return cur;
}

/// Simple counting gate; excess callers block until a slot frees.
class InFlightGate {
public:
    explicit InFlightGate(int cap) : cap_(cap > 0 ? cap : 1) {}

    void acquire() {
        std::unique_lock lock(mu_);
        cv_.wait(lock, [&] { return active_ < cap_; });
        ++active_;
    }

    void release() {
        {
            std::lock_guard lock(mu_);
            --active_;
        }
        cv_.notify_one();
    }

private:
    std::mutex mu_;
    std::condition_variable cv_;
    int cap_;
    int active_ = 0;
};

class HttpBackend : public Backend {
public:
    explicit HttpBackend(const BackendSpec &spec)
        : url_(parse_url(spec.url)), model_(spec.model), timeout_ms_(spec.timeout_ms),
          max_retries_(spec.max_retries), response_path_(spec.response_path),
          gate_(spec.max_in_flight) {
        if (!spec.token_env.empty()) {
            const char *token = std::getenv(spec.token_env.c_str());
            if (!token || !*token)
                throw AuthError("environment variable '" + spec.token_env + "' is not set");
            token_ = token;
        }
    }

    std::string complete(const CompletionRequest &req) override {
        gate_.acquire();
        struct Release {
            InFlightGate &g;
            ~Release() { g.release(); }
        } release{gate_};

        json body = {{"model", model_},
                     {"messages", json::array({{{"role", "user"}, {"content", req.prompt}}})}};
        std::string payload = body.dump();

        httplib::Headers headers;
        if (!token_.empty()) headers.emplace("Authorization", "Bearer " + token_);

        std::string last_error;
        for (int attempt = 0; attempt <= max_retries_; ++attempt) {
            if (attempt > 0)
                std::this_thread::sleep_for(
                    std::chrono::milliseconds(backoff_base_ms_ << (attempt - 1)));

            httplib::Client client(url_.origin);
            client.set_connection_timeout(0, timeout_ms_ * 1000);
            client.set_read_timeout(timeout_ms_ / 1000, (timeout_ms_ % 1000) * 1000);
            client.set_write_timeout(timeout_ms_ / 1000, (timeout_ms_ % 1000) * 1000);

            auto res = client.Post(url_.path, headers, payload, "application/json");
            if (!res) {
                auto err = res.error();
                if (err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read ||
                    err == httplib::Error::Write)
                    last_error = "timeout talking to " + url_.origin;
                else
                    last_error = "transport error: " + httplib::to_string(err);
                continue;
            }
            if (res->status == 401 || res->status == 403)
                throw AuthError("http backend: status " + std::to_string(res->status));
            if (res->status >= 500 || res->status == 429) {
                last_error = "status " + std::to_string(res->status);
                continue;
            }
            if (res->status != 200)
                throw BackendError("http backend: status " + std::to_string(res->status));
            return extract(res->body);
        }
        if (last_error.find("timeout") == 0)
            throw DeadlineExceeded("http backend: " + last_error + " after " +
                                   std::to_string(max_retries_ + 1) + " attempts");
        throw BackendError("http backend: " + last_error + " after " +
                           std::to_string(max_retries_ + 1) + " attempts");
    }

    std::string kind() const override { return "http"; }

private:
    std::string extract(const std::string &body) const {
        json doc;
        try {
            doc = json::parse(body);
        } catch (const json::parse_error &e) {
            throw BackendError(std::string("http backend: response is not JSON: ") + e.what());
        }
        json err;
        const json *node = walk_path(doc, response_path_, err);
        if (!node)
            throw BackendError("http backend: response path '" + response_path_ +
                               "': " + err.get<std::string>());
        if (!node->is_string())
            throw BackendError("http backend: response path '" + response_path_ +
                               "' is not a string");
        return node->get<std::string>();
    }

    ParsedUrl url_;
    std::string model_;
    std::string token_;
    int timeout_ms_;
    int max_retries_;
    std::string response_path_;
    int backoff_base_ms_ = 100;
    InFlightGate gate_;
};

} // namespace

BackendPtr make_http_backend(const BackendSpec &spec) {
    return std::make_unique<HttpBackend>(spec);
}

} // namespace rebact::backend
