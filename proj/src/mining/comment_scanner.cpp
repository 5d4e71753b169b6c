// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The todolens Authors

#include "todolens/comment_scanner.hpp"

#include <cctype>

namespace todolens::mining {
namespace {

bool is_word(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool blank(std::string_view s) {
    for (char c : s) {
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

// Index just past the closing quote of a string or char literal that opens at
// `i`, or line.size() when unterminated.
std::size_t skip_quoted(std::string_view line, std::size_t i, char quote) {
    for (std::size_t j = i + 1; j < line.size(); ++j) {
        if (line[j] == '\\') {
            ++j;
        } else if (line[j] == quote) {
            return j + 1;
        }
    }
    return line.size();
}

} // namespace

LineScan JavaCommentScanner::scan(std::string_view line) {
    LineScan out;
    std::size_t i = 0;
    std::size_t code_from = 0;
    auto note_code = [&](std::size_t from, std::size_t to) {
        if (to > from && !blank(line.substr(from, to - from))) out.has_code = true;
    };

    if (!in_block_ && !in_text_block_) {
        auto first = line.find_first_not_of(" \t");
        if (first != std::string_view::npos && line[first] == '*' &&
            !(first + 1 < line.size() && line[first + 1] == '=')) {
            in_block_ = true;
        }
    }

    if (in_text_block_) {
        auto close = line.find("\"\"\"");
        if (close == std::string_view::npos) {
            note_code(0, line.size());
            return out;
        }
        in_text_block_ = false;
        i = close + 3;
        out.has_code = true;
        code_from = i;
    } else if (in_block_) {
        auto close = line.find("*/");
        if (close == std::string_view::npos) {
            out.comments.push_back({0, line.size(), true, true, true});
            return out;
        }
        out.comments.push_back({0, close + 2, true, false, true});
        in_block_ = false;
        i = close + 2;
        code_from = i;
    }

    while (i < line.size()) {
        char c = line[i];
        if (c == '"') {
            if (line.substr(i, 3) == "\"\"\"") {
                auto close = line.find("\"\"\"", i + 3);
                if (close == std::string_view::npos) {
                    in_text_block_ = true;
                    out.has_code = true;
                    return out;
                }
                i = close + 3;
            } else {
                i = skip_quoted(line, i, '"');
            }
            out.has_code = true;
            continue;
        }
        if (c == '\'') {
            i = skip_quoted(line, i, '\'');
            out.has_code = true;
            continue;
        }
        if (c == '/' && i + 1 < line.size() && line[i + 1] == '/') {
            note_code(code_from, i);
            out.comments.push_back({i, line.size(), false, false, false});
            return out;
        }
        if (c == '/' && i + 1 < line.size() && line[i + 1] == '*') {
            note_code(code_from, i);
            auto close = line.find("*/", i + 2);
            if (close == std::string_view::npos) {
                out.comments.push_back({i, line.size(), true, true, false});
                in_block_ = true;
                return out;
            }
            out.comments.push_back({i, close + 2, true, false, false});
            i = close + 2;
            code_from = i;
            continue;
        }
        ++i;
    }
    note_code(code_from, line.size());
    return out;
}

bool contains_todo(std::string_view text, bool case_sensitive, std::size_t* at) {
    for (std::size_t i = 0; i + 4 <= text.size(); ++i) {
        bool match = true;
        for (std::size_t k = 0; k < 4; ++k) {
            char want = "TODO"[k];
            char got = text[i + k];
            if (case_sensitive ? got != want
                               : std::toupper(static_cast<unsigned char>(got)) != want) {
                match = false;
                break;
            }
        }
        if (!match) continue;
        if (i > 0 && is_word(text[i - 1])) continue;
        if (at) *at = i;
        return true;
    }
    return false;
}

} // namespace todolens::mining
