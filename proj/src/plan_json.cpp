#include "bforge/plan_json.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include <json.hpp>

#include "bforge/errors.hpp"

namespace bforge {

namespace {

std::string quote(const std::string& s) { return nlohmann::json(s).dump(); }

std::string trim(std::string_view s) {
    const auto* ws = " \t\r\n";
    const auto begin = s.find_first_not_of(ws);
    if (begin == std::string_view::npos) return {};
    const auto end = s.find_last_not_of(ws);
    return std::string(s.substr(begin, end - begin + 1));
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

// SAX handler accepting exactly one flat object of string values.
struct FlatObjectSax {
    std::vector<Step> steps;
    std::string pending_key;
    int depth = 0;
    bool have_key = false;
    std::string error;
    std::unordered_set<std::string> seen;

    bool fail(const std::string& msg) {
        if (error.empty()) error = msg;
        return false;
    }

    bool null() { return fail("null value for key '" + pending_key + "'"); }
    bool boolean(bool) { return fail("boolean value for key '" + pending_key + "'"); }
    bool number_integer(std::int64_t) { return fail("numeric value for key '" + pending_key + "'"); }
    bool number_unsigned(std::uint64_t) { return fail("numeric value for key '" + pending_key + "'"); }
    bool number_float(double, const std::string&) {
        return fail("numeric value for key '" + pending_key + "'");
    }
    bool string(std::string& val) {
        if (!have_key) return fail("unexpected string outside object");
        steps.push_back({pending_key, val});
        have_key = false;
        return true;
    }
    bool binary(nlohmann::json::binary_t&) { return fail("binary value"); }
    bool start_object(std::size_t) {
        ++depth;
        if (depth > 1) return fail("nested object under key '" + pending_key + "'");
        return true;
    }
    bool key(std::string& k) {
        if (seen.count(k)) {
            error = "__duplicate__:" + k;
            return false;
        }
        seen.insert(k);
        pending_key = k;
        have_key = true;
        return true;
    }
    bool end_object() { return true; }
    bool start_array(std::size_t) { return fail("array value for key '" + pending_key + "'"); }
    bool end_array() { return true; }
    bool parse_error(std::size_t pos, const std::string&, const nlohmann::json::exception& ex) {
        return fail("invalid JSON at offset " + std::to_string(pos) + ": " + ex.what());
    }
};

}  // namespace

std::string serialize_steps(const std::vector<Step>& steps) {
    std::string out = "{";
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (i > 0) out += ", ";
        out += quote(steps[i].key);
        out += ": ";
        out += quote(steps[i].value);
    }
    out += "}";
    return out;
}

std::string serialize_plan(const KeyStepPlan& plan) { return serialize_steps(plan.steps); }

std::string pretty_steps(const std::vector<Step>& steps) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (const auto& step : steps) obj[step.key] = step.value;
    return obj.dump(4);
}

std::optional<std::string> extract_json_payload(const std::string& text) {
    // Collect every fenced block whose info string is "json" or empty.
    std::optional<std::string> last;
    std::size_t pos = 0;
    while (true) {
        const std::size_t open = text.find("```", pos);
        if (open == std::string::npos) break;
        std::size_t body = text.find('\n', open + 3);
        if (body == std::string::npos) break;
        const std::string info = lower(trim(text.substr(open + 3, body - open - 3)));
        ++body;
        const std::size_t close = text.find("```", body);
        if (close == std::string::npos) break;
        if (info.empty() || info == "json") last = text.substr(body, close - body);
        pos = close + 3;
    }
    if (last) return last;
    const std::string bare = trim(text);
    if (!bare.empty() && bare.front() == '{') return bare;
    return std::nullopt;
}

std::vector<Step> parse_steps(const std::string& text) {
    const auto payload = extract_json_payload(text);
    if (!payload) raise(Errc::NoJsonBlock, "reply contains no JSON object or fenced ```json block");

    FlatObjectSax sax;
    const bool ok = nlohmann::json::sax_parse(*payload, &sax);
    if (!ok) {
        if (sax.error.rfind("__duplicate__:", 0) == 0)
            raise(Errc::DuplicateKey, "duplicate step key \"" + sax.error.substr(14) + "\"");
        if (sax.error.rfind("invalid JSON", 0) == 0) raise(Errc::NoJsonBlock, sax.error);
        raise(Errc::Malformed, sax.error);
    }
    return sax.steps;
}

KeyStepPlan parse_plan(const std::string& text) {
    KeyStepPlan plan{parse_steps(text)};
    validate_step_keys(plan.steps);
    return plan;
}

void validate_step_keys(const std::vector<Step>& steps) {
    if (steps.empty()) raise(Errc::MissingFinalAnswerKey, "plan has no steps");
    std::unordered_set<std::string> seen;
    for (const auto& step : steps)
        if (!seen.insert(step.key).second)
            raise(Errc::DuplicateKey, "duplicate step key \"" + step.key + "\"");
    if (steps.back().key != kFinalAnswerKey)
        raise(Errc::MissingFinalAnswerKey,
              "last key is \"" + steps.back().key + "\", expected \"" + kFinalAnswerKey + "\"");
}

void validate_plan(const KeyStepPlan& plan) {
    validate_step_keys(plan.steps);
    for (const auto& step : plan.steps)
        if (!step.value.empty())
            raise(Errc::Malformed, "plan-form step \"" + step.key + "\" has a non-empty value");
}

}  // namespace bforge
