#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "bforge/backends.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <thread>

#include "bforge/errors.hpp"

namespace bforge {

using nlohmann::json;

std::vector<CassetteEntry> load_cassette(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(Errc::Io, "cannot open cassette " + path);
    std::vector<CassetteEntry> entries;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json doc;
        try {
            doc = json::parse(line);
        } catch (const json::exception& ex) {
            raise(Errc::Malformed, path + ":" + std::to_string(lineno) + ": " + ex.what());
        }
        CassetteEntry entry;
        entry.fingerprint = doc.at("fingerprint").get<std::string>();
        entry.request_digest = doc.value("request_digest", "");
        entry.content = doc.at("content").get<std::string>();
        entry.latency_ms = doc.at("latency_ms").get<double>();
        entries.push_back(std::move(entry));
    }
    return entries;
}

ScriptedBackend::ScriptedBackend(std::vector<std::string> replies)
    : ScriptedBackend(std::move(replies), {}) {}

ScriptedBackend::ScriptedBackend(std::vector<std::string> replies, std::vector<double> latencies_ms)
    : replies_(std::move(replies)), latencies_(std::move(latencies_ms)) {}

ChatResponse ScriptedBackend::complete(const ChatRequest& request) {
    request.validate();
    std::lock_guard lock(mu_);
    log_.push_back(request);
    if (next_ >= replies_.size())
        raise(Errc::ScriptExhausted, "scripted mock ran out after " +
                                         std::to_string(replies_.size()) + " replies");
    ChatResponse response;
    response.content = replies_[next_];
    response.latency_ms = next_ < latencies_.size() ? latencies_[next_] : 0.0;
    ++next_;
    return response;
}

std::vector<ChatRequest> ScriptedBackend::requests() const {
    std::lock_guard lock(mu_);
    return log_;
}

HttpBackend::HttpBackend(HttpBackendOptions options) : options_(std::move(options)) {
    if (options_.base_url.empty())
        raise(Errc::Malformed, "live backend needs a base URL (BEHAVIOR_FORGE_BASE_URL)");
}

HttpBackendOptions HttpBackend::from_env() {
    HttpBackendOptions opts;
    if (const char* v = std::getenv("BEHAVIOR_FORGE_BASE_URL")) opts.base_url = v;
    if (const char* v = std::getenv("BEHAVIOR_FORGE_API_KEY")) opts.api_key = v;
    if (const char* v = std::getenv("BEHAVIOR_FORGE_MODEL")) opts.model = v;
    return opts;
}

namespace {

// Splits "https://host:port/v1" into origin and path prefix.
std::pair<std::string, std::string> split_base_url(const std::string& base_url) {
    const auto scheme_end = base_url.find("://");
    const std::size_t host_begin = scheme_end == std::string::npos ? 0 : scheme_end + 3;
    const auto path_begin = base_url.find('/', host_begin);
    if (path_begin == std::string::npos) return {base_url, ""};
    std::string prefix = base_url.substr(path_begin);
    while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
    return {base_url.substr(0, path_begin), prefix};
}

}  // namespace

ChatResponse HttpBackend::complete(const ChatRequest& request) {
    request.validate();

    json body;
    body["model"] = request.model.empty() ? options_.model : request.model;
    body["temperature"] = request.temperature;
    json msgs = json::array();
    for (const auto& m : request.messages)
        msgs.push_back({{"role", role_name(m.role)}, {"content", m.content}});
    body["messages"] = msgs;
    const std::string payload = body.dump();

    const auto [origin, prefix] = split_base_url(options_.base_url);
    const std::string path = prefix + "/chat/completions";

    httplib::Headers headers;
    if (!options_.api_key.empty())
        headers.emplace("Authorization", "Bearer " + options_.api_key);

    std::string last_error;
    int backoff_ms = options_.backoff_initial_ms;
    for (int attempt = 1; attempt <= options_.max_attempts; ++attempt) {
        if (attempt > 1) {
            std::this_thread::sleep_for(std::chrono::milliseconds(backoff_ms));
            backoff_ms *= 2;
        }

        httplib::Client client(origin);
        client.set_connection_timeout(options_.connect_timeout_s, 0);
        client.set_read_timeout(options_.read_timeout_s, 0);

        const auto start = std::chrono::steady_clock::now();
        auto result = client.Post(path, headers, payload, "application/json");
        const auto elapsed = std::chrono::duration<double, std::milli>(
                                 std::chrono::steady_clock::now() - start)
                                 .count();

        if (!result) {
            last_error = "transport: " + httplib::to_string(result.error());
            continue;
        }
        if (result->status == 429 || result->status >= 500) {
            last_error = "HTTP " + std::to_string(result->status);
            continue;
        }
        if (result->status != 200)
            raise(Errc::Protocol, "HTTP " + std::to_string(result->status) + ": " + result->body);

        try {
            const json doc = json::parse(result->body);
            ChatResponse response;
            response.content = doc.at("choices").at(0).at("message").at("content").get<std::string>();
            response.latency_ms = elapsed;
            return response;
        } catch (const json::exception& ex) {
            raise(Errc::Protocol, std::string("malformed provider response: ") + ex.what());
        }
    }
    raise(Errc::Transport, "gave up after " + std::to_string(options_.max_attempts) +
                               " attempts; last error: " + last_error);
}

RecordingBackend::RecordingBackend(std::shared_ptr<Backend> inner, std::string cassette_path)
    : inner_(std::move(inner)), path_(std::move(cassette_path)) {}

ChatResponse RecordingBackend::complete(const ChatRequest& request) {
    request.validate();
    const ChatResponse response = inner_->complete(request);

    json doc;
    doc["fingerprint"] = fingerprint(request);
    doc["request_digest"] = request_digest(request);
    doc["content"] = response.content;
    doc["latency_ms"] = response.latency_ms;

    std::lock_guard lock(mu_);
    std::ofstream out(path_, std::ios::app);
    if (!out) raise(Errc::Io, "cannot append to cassette " + path_);
    out << doc.dump() << '\n';
    return response;
}

ReplayBackend::ReplayBackend(const std::string& cassette_path) {
    for (auto& entry : load_cassette(cassette_path))
        entries_[entry.fingerprint].push_back(std::move(entry));
}

ChatResponse ReplayBackend::complete(const ChatRequest& request) {
    request.validate();
    const std::string fp = fingerprint(request);
    std::lock_guard lock(mu_);
    auto it = entries_.find(fp);
    if (it == entries_.end() || it->second.empty())
        raise(Errc::CassetteMiss, "no recorded reply for " + request_digest(request));
    CassetteEntry entry = std::move(it->second.front());
    it->second.pop_front();
    return {entry.content, entry.latency_ms};
}

}  // namespace bforge
