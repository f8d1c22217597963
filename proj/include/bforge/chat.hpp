#pragma once

#include <string>
#include <vector>

namespace bforge {

enum class Role { System, User, Assistant };

const char* role_name(Role role);
Role role_from_name(const std::string& name);

struct ChatMessage {
    Role role = Role::User;
    std::string content;

    bool operator==(const ChatMessage&) const = default;
};

struct ChatRequest {
    std::vector<ChatMessage> messages;
    double temperature = 0.0;
    std::string model;

    // >=1 message; at most one system message, first if present.
    void validate() const;
};

struct ChatResponse {
    std::string content;
    double latency_ms = 0.0;
};

// Chat-completion provider: live HTTP, scripted mock, or cassette replay.
class Backend {
  public:
    virtual ~Backend() = default;
    virtual ChatResponse complete(const ChatRequest& request) = 0;
};

// SHA-256 hex of the request's canonical JSON. Canonical form: one object
// {"messages":[{"content":..,"role":..},..],"model":..,"temperature":..}
// with lexicographically sorted keys, compact separators, and shortest
// round-trip number rendering. Equal requests hash equal; any change to a
// message, the order, the model, or the temperature changes the hash.
std::string fingerprint(const ChatRequest& request);

// One-line human summary used in cassette files and miss diagnostics.
std::string request_digest(const ChatRequest& request);

}  // namespace bforge
