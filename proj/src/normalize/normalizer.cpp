// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The todolens Authors

#include "todolens/normalizer.hpp"

#include <array>
#include <cctype>

namespace todolens::text {
namespace {

constexpr std::array<std::string_view, 3> kPlaceholders = {kInfoTag, kCommitId, kLinkId};

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_word(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
// Only ASCII punctuation separates tokens; UTF-8 continuation bytes never do.
bool is_separator(char c) { return is_space(c) || std::ispunct(static_cast<unsigned char>(c)); }
char lower(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

bool starts_with(std::string_view s, std::string_view p) { return s.substr(0, p.size()) == p; }

std::string_view placeholder_at(std::string_view s, std::size_t i) {
    for (auto p : kPlaceholders) {
        if (s.substr(i, p.size()) == p) return p;
    }
    return {};
}

std::string_view strip_comment_markers(std::string_view line) {
    line = trim(line);
    for (;;) {
        if (starts_with(line, "/*")) {
            line.remove_prefix(2);
            while (!line.empty() && line.front() == '*') line.remove_prefix(1);
        } else if (starts_with(line, "//")) {
            while (!line.empty() && line.front() == '/') line.remove_prefix(1);
        } else if (!line.empty() && line.front() == '*' && !starts_with(line, "*/")) {
            while (!line.empty() && line.front() == '*') line.remove_prefix(1);
        } else {
            break;
        }
        line = trim(line);
    }
    if (line.size() >= 2 && line.substr(line.size() - 2) == "*/") {
        line.remove_suffix(2);
        while (!line.empty() && line.back() == '*') line.remove_suffix(1);
    }
    if (line == "*/") line = {};
    return trim(line);
}

bool todo_keyword_at(std::string_view s, std::size_t i) {
    if (i + 4 > s.size()) return false;
    for (std::size_t k = 0; k < 4; ++k) {
        if (std::toupper(static_cast<unsigned char>(s[i + k])) != "TODO"[k]) return false;
    }
    if (i > 0 && is_word(s[i - 1])) return false;
    return true;
}

// "TODO(alice):" / "TODO (b/123)" -> "TODO <info_tag> :"
std::string replace_info_tags(std::string_view s) {
    std::string out;
    std::size_t i = 0;
    while (i < s.size()) {
        if (!todo_keyword_at(s, i)) {
            out += s[i++];
            continue;
        }
        out.append(s.substr(i, 4));
        i += 4;
        std::size_t j = i;
        while (j < s.size() && (s[j] == ' ' || s[j] == '\t')) ++j;
        if (j >= s.size() || s[j] != '(') continue;
        int depth = 0;
        std::size_t k = j;
        for (; k < s.size(); ++k) {
            if (s[k] == '(') ++depth;
            if (s[k] == ')' && --depth == 0) break;
        }
        if (k >= s.size()) continue; // unbalanced: leave as is
        out += ' ';
        out += kInfoTag;
        out += ' ';
        i = k + 1;
    }
    return out;
}

bool url_at(std::string_view s, std::size_t i) {
    if (i > 0 && is_word(s[i - 1])) return false;
    auto rest = s.substr(i);
    for (std::string_view scheme : {"http://", "https://", "ftp://", "www."}) {
        if (rest.size() <= scheme.size()) continue;
        bool ok = true;
        for (std::size_t k = 0; k < scheme.size(); ++k) {
            if (lower(rest[k]) != scheme[k]) {
                ok = false;
                break;
            }
        }
        if (ok && !is_space(rest[scheme.size()])) return true;
    }
    return false;
}

// URLs and "#123" issue references -> <link_id>.
std::string replace_links(std::string_view s) {
    std::string out;
    std::size_t i = 0;
    while (i < s.size()) {
        if (url_at(s, i)) {
            std::size_t j = i;
            while (j < s.size() && !is_space(s[j])) ++j;
            // Trailing punctuation belongs to the sentence, not the URL.
            while (j > i && std::string_view(".,;:!?)]}>'\"").find(s[j - 1]) != std::string_view::npos) --j;
            out += ' ';
            out += kLinkId;
            out += ' ';
            i = j;
            continue;
        }
        if (s[i] == '#' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1]))) {
            std::size_t j = i + 1;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            if (j >= s.size() || !is_word(s[j])) {
                out += ' ';
                out += kLinkId;
                out += ' ';
                i = j;
                continue;
            }
        }
        out += s[i++];
    }
    return out;
}

} // namespace

bool is_placeholder(std::string_view token) {
    for (auto p : kPlaceholders) {
        if (token == p) return true;
    }
    return false;
}

bool is_hex_run(std::string_view token) {
    if (token.size() < 7 || token.size() > 40) return false;
    for (char c : token) {
        if (!std::isxdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    auto flush = [&] {
        if (current.empty()) return;
        if (is_hex_run(current)) current = kCommitId;
        tokens.push_back(std::move(current));
        current.clear();
    };
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] == '<') {
            if (auto p = placeholder_at(text, i); !p.empty()) {
                flush();
                tokens.emplace_back(p);
                i += p.size();
                continue;
            }
        }
        char c = text[i++];
        if (is_separator(c)) {
            flush();
        } else {
            current += lower(c);
        }
    }
    flush();
    return tokens;
}

NormalizedTodo normalize_todo(std::string_view raw_comment) {
    std::string joined;
    std::size_t pos = 0;
    while (pos <= raw_comment.size()) {
        auto nl = raw_comment.find('\n', pos);
        auto line = raw_comment.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        auto body = strip_comment_markers(line);
        if (!body.empty()) {
            if (!joined.empty()) joined += ' ';
            joined += body;
        }
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }

    NormalizedTodo out;
    auto linked = replace_links(replace_info_tags(joined));
    out.question = linked.find('?') != std::string::npos;
    out.tokens = tokenize(linked);
    for (const auto& t : out.tokens) {
        if (is_placeholder(t)) ++out.placeholder_counts[t];
    }
    return out;
}

NormalizedDiff normalize_diff(std::string_view diff_text) {
    static constexpr std::array<std::string_view, 17> kHeaders = {
        "diff ",           "index ",          "--- ",         "+++ ",        "@@",        "new file mode",
        "deleted file mode", "old mode",      "new mode",     "similarity index", "dissimilarity index",
        "rename from ",    "rename to ",      "copy from ",   "copy to ",    "Binary files ", "\\ No newline"};

    NormalizedDiff out;
    std::string body;
    bool in_hunk = false;
    std::size_t pos = 0;
    while (pos < diff_text.size()) {
        auto nl = diff_text.find('\n', pos);
        auto line = diff_text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? diff_text.size() : nl + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        bool header = false;
        for (auto h : kHeaders) {
            if (starts_with(line, h)) {
                header = true;
                break;
            }
        }
        if (header) {
            if (starts_with(line, "@@")) in_hunk = true;
            if (starts_with(line, "diff ")) in_hunk = false;
            continue;
        }
        if (line.empty()) continue;
        char m = line.front();
        if (!in_hunk || (m != ' ' && m != '+' && m != '-')) out.malformed = true;
        if (m == ' ' || m == '+' || m == '-') line.remove_prefix(1);
        body.append(line);
        body += '\n';
    }
    out.tokens = tokenize(body);
    return out;
}

std::string join_tokens(const std::vector<std::string>& tokens) {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) out += ' ';
        out += tokens[i];
    }
    return out;
}

} // namespace todolens::text
