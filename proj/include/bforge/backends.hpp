#pragma once

#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "bforge/chat.hpp"

namespace bforge {

// One recorded exchange; cassette files are JSON Lines of these, append-only.
struct CassetteEntry {
    std::string fingerprint;
    std::string request_digest;
    std::string content;
    double latency_ms = 0.0;
};

std::vector<CassetteEntry> load_cassette(const std::string& path);

// Fixed reply script, returned in order. Latencies default to 0.
class ScriptedBackend : public Backend {
  public:
    explicit ScriptedBackend(std::vector<std::string> replies);
    ScriptedBackend(std::vector<std::string> replies, std::vector<double> latencies_ms);

    ChatResponse complete(const ChatRequest& request) override;

    // Requests seen so far, for prompt-assembly assertions.
    std::vector<ChatRequest> requests() const;

  private:
    std::vector<std::string> replies_;
    std::vector<double> latencies_;
    std::size_t next_ = 0;
    std::vector<ChatRequest> log_;
    mutable std::mutex mu_;
};

// Computes replies from the request; the workhorse for simulated models.
class FnBackend : public Backend {
  public:
    using Fn = std::function<ChatResponse(const ChatRequest&)>;
    explicit FnBackend(Fn fn) : fn_(std::move(fn)) {}

    ChatResponse complete(const ChatRequest& request) override {
        request.validate();
        return fn_(request);
    }

  private:
    Fn fn_;
};

struct HttpBackendOptions {
    std::string base_url;  // e.g. http://localhost:8000/v1
    std::string api_key;
    std::string model;
    int max_attempts = 3;
    int backoff_initial_ms = 500;
    int connect_timeout_s = 10;
    int read_timeout_s = 120;
};

// OpenAI-compatible POST {base_url}/chat/completions. Retries transport
// errors and HTTP 429/5xx with exponential backoff; never rewrites message
// content. Reads BEHAVIOR_FORGE_BASE_URL / _API_KEY / _MODEL when built
// via from_env().
class HttpBackend : public Backend {
  public:
    explicit HttpBackend(HttpBackendOptions options);
    static HttpBackendOptions from_env();

    ChatResponse complete(const ChatRequest& request) override;

  private:
    HttpBackendOptions options_;
};

// Passes requests to an inner backend and appends every exchange to the
// cassette file. Writes are serialized internally.
class RecordingBackend : public Backend {
  public:
    RecordingBackend(std::shared_ptr<Backend> inner, std::string cassette_path);

    ChatResponse complete(const ChatRequest& request) override;

  private:
    std::shared_ptr<Backend> inner_;
    std::string path_;
    std::mutex mu_;
};

// Replays a cassette: entries with the same fingerprint are served in
// recorded order. Unknown or exhausted fingerprints raise CassetteMiss.
class ReplayBackend : public Backend {
  public:
    explicit ReplayBackend(const std::string& cassette_path);

    ChatResponse complete(const ChatRequest& request) override;

  private:
    std::unordered_map<std::string, std::deque<CassetteEntry>> entries_;
    std::mutex mu_;
};

}  // namespace bforge
