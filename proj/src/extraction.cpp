#include "bforge/extraction.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>

#include "bforge/errors.hpp"

namespace bforge {

namespace {

bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

std::string collapse_whitespace(const std::string& text) {
    std::string out;
    bool in_space = true;  // drops leading whitespace
    for (const char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            in_space = true;
        } else {
            if (in_space && !out.empty()) out.push_back(' ');
            in_space = false;
            out.push_back(c);
        }
    }
    return out;
}

bool equals_nocase(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::toupper(static_cast<unsigned char>(a[i])) !=
            std::toupper(static_cast<unsigned char>(b[i])))
            return false;
    return true;
}

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return s;
}

// First parenthesized "(B)" or standalone bare label, scanning left to right.
std::optional<Prediction> match_option(const std::string& text,
                                       const std::vector<std::string>& labels) {
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '(') {
            for (const auto& label : labels) {
                const std::size_t end = i + 1 + label.size();
                if (end < text.size() && text[end] == ')' &&
                    equals_nocase({text.data() + i + 1, label.size()}, label))
                    return Prediction{text.substr(i, label.size() + 2), upper(label)};
            }
        }
        const bool at_word_start = is_word_char(text[i]) && (i == 0 || !is_word_char(text[i - 1]));
        if (at_word_start) {
            for (const auto& label : labels) {
                const std::size_t end = i + label.size();
                if (equals_nocase({text.data() + i, std::min(label.size(), text.size() - i)},
                                  label) &&
                    (end >= text.size() || !is_word_char(text[end])))
                    return Prediction{text.substr(i, label.size()), upper(label)};
            }
        }
    }
    return std::nullopt;
}

// First M/D/YYYY-shaped match, zero-padded to MM/DD/YYYY.
std::optional<Prediction> match_date(const std::string& text) {
    const auto digits_at = [&](std::size_t pos, std::size_t max_len) -> std::size_t {
        std::size_t n = 0;
        while (pos + n < text.size() && n < max_len &&
               std::isdigit(static_cast<unsigned char>(text[pos + n])))
            ++n;
        return n;
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        const std::size_t m = digits_at(i, 2);
        if (m == 0 || (i > 0 && std::isdigit(static_cast<unsigned char>(text[i - 1])))) continue;
        std::size_t pos = i + m;
        if (pos >= text.size() || text[pos] != '/') continue;
        const std::size_t d = digits_at(++pos, 2);
        if (d == 0) continue;
        pos += d;
        if (pos >= text.size() || text[pos] != '/') continue;
        const std::size_t y = digits_at(++pos, 4);
        if (y != 4) continue;
        if (pos + 4 < text.size() && std::isdigit(static_cast<unsigned char>(text[pos + 4])))
            continue;
        const int month = std::stoi(text.substr(i, m));
        const int day = std::stoi(text.substr(i + m + 1, d));
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%02d/%02d/%s", month, day,
                      text.substr(pos, 4).c_str());
        return Prediction{text.substr(i, pos + 4 - i), buf};
    }
    return std::nullopt;
}

std::optional<Prediction> apply_task_rules(const std::string& text, const TaskSpec& task) {
    switch (task.answer_kind) {
        case AnswerKind::OptionLetter:
            return match_option(text, task.option_labels);
        case AnswerKind::Date:
            return match_date(text);
        case AnswerKind::FreeText: {
            const std::string collapsed = collapse_whitespace(text);
            if (collapsed.empty()) return std::nullopt;
            return Prediction{collapsed, collapsed};
        }
    }
    return std::nullopt;
}

// Text after the last (case-insensitive) "the answer is", with leading
// separators and one trailing period stripped.
std::optional<std::string> answer_phrase_tail(const std::string& text) {
    static const std::string phrase = "the answer is";
    std::optional<std::size_t> found;
    for (std::size_t i = 0; i + phrase.size() <= text.size(); ++i)
        if (equals_nocase({text.data() + i, phrase.size()}, phrase)) found = i + phrase.size();
    if (!found) return std::nullopt;
    std::string tail = text.substr(*found);
    const auto begin = tail.find_first_not_of(" \t\r\n:");
    if (begin == std::string::npos) return std::nullopt;
    tail = tail.substr(begin);
    const auto end = tail.find_last_not_of(" \t\r\n");
    tail = tail.substr(0, end + 1);
    if (!tail.empty() && tail.back() == '.') tail.pop_back();
    return tail.empty() ? std::nullopt : std::optional<std::string>(tail);
}

std::optional<Prediction> scan_phrase(const std::string& text, const TaskSpec& task) {
    const auto tail = answer_phrase_tail(text);
    if (!tail) return std::nullopt;
    return apply_task_rules(*tail, task);
}

}  // namespace

Prediction extract_from_steps(const std::vector<Step>& steps, const TaskSpec& task) {
    const Step* final_step = nullptr;
    for (const auto& step : steps)
        if (step.key == kFinalAnswerKey) final_step = &step;
    if (final_step == nullptr)
        raise(Errc::NoAnswerFound, "execution has no \"" + std::string(kFinalAnswerKey) + "\" step");

    if (auto hit = apply_task_rules(final_step->value, task)) return *hit;
    if (auto hit = scan_phrase(steps.back().value, task)) return *hit;
    raise(Errc::NoAnswerFound, "no rule matched the final answer value");
}

Prediction extract(const Execution& execution, const TaskSpec& task) {
    return extract_from_steps(execution.steps, task);
}

Prediction scan_answer_text(const std::string& text, const TaskSpec& task) {
    if (auto hit = scan_phrase(text, task)) return *hit;
    if (auto hit = apply_task_rules(text, task)) return *hit;
    raise(Errc::NoAnswerFound, "no rule matched the reply text");
}

std::string normalize_reference(const std::string& target, const TaskSpec& task) {
    if (auto hit = apply_task_rules(target, task)) return hit->normalized;
    return collapse_whitespace(target);
}

bool is_correct(const Prediction& prediction, const std::string& target, const TaskSpec& task) {
    return prediction.normalized == normalize_reference(target, task);
}

double quantify(const std::vector<std::pair<std::optional<Execution>, std::string>>& plan_results,
                const TaskSpec& task) {
    if (plan_results.empty()) raise(Errc::EmptyDevSet, "quantify needs at least one result");
    std::size_t correct = 0;
    for (const auto& [execution, target] : plan_results) {
        if (!execution) continue;
        try {
            if (is_correct(extract(*execution, task), target, task)) ++correct;
        } catch (const Error&) {
            // NoAnswerFound scores as incorrect; the denominator stays N.
        }
    }
    return static_cast<double>(correct) / static_cast<double>(plan_results.size());
}

}  // namespace bforge
