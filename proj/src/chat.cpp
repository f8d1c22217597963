#include "bforge/chat.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <json.hpp>

#include "bforge/errors.hpp"

namespace bforge {

const char* role_name(Role role) {
    switch (role) {
        case Role::System: return "system";
        case Role::User: return "user";
        case Role::Assistant: return "assistant";
    }
    return "user";
}

Role role_from_name(const std::string& name) {
    if (name == "system") return Role::System;
    if (name == "user") return Role::User;
    if (name == "assistant") return Role::Assistant;
    raise(Errc::Malformed, "unknown chat role \"" + name + "\"");
}

void ChatRequest::validate() const {
    if (messages.empty()) raise(Errc::Malformed, "chat request has no messages");
    if (temperature < 0.0) raise(Errc::Malformed, "temperature must be >= 0");
    for (std::size_t i = 0; i < messages.size(); ++i) {
        if (messages[i].content.empty())
            raise(Errc::Malformed, "message " + std::to_string(i) + " has empty content");
        if (messages[i].role == Role::System && i != 0)
            raise(Errc::Malformed, "system message must be first");
    }
}

namespace {

std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xF]);
    }
    return out;
}

// nlohmann::json sorts object keys, which is exactly the canonical ordering.
std::string canonical_json(const ChatRequest& request) {
    nlohmann::json doc;
    doc["model"] = request.model;
    doc["temperature"] = request.temperature;
    nlohmann::json msgs = nlohmann::json::array();
    for (const auto& m : request.messages)
        msgs.push_back({{"role", role_name(m.role)}, {"content", m.content}});
    doc["messages"] = msgs;
    return doc.dump();
}

}  // namespace

std::string fingerprint(const ChatRequest& request) { return sha256_hex(canonical_json(request)); }

std::string request_digest(const ChatRequest& request) {
    std::string last_user;
    for (const auto& m : request.messages)
        if (m.role == Role::User) last_user = m.content;
    if (last_user.size() > 80) last_user = last_user.substr(0, 77) + "...";
    for (auto& c : last_user)
        if (c == '\n' || c == '\r') c = ' ';
    char temp[32];
    std::snprintf(temp, sizeof(temp), "%g", request.temperature);
    return "model=" + request.model + " temp=" + temp +
           " msgs=" + std::to_string(request.messages.size()) + " last_user=\"" + last_user + "\"";
}

}  // namespace bforge
