// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The todolens Authors

#include "todolens/diff.hpp"

#include <charconv>
#include <optional>

namespace todolens::mining {
namespace {

bool starts_with(std::string_view s, std::string_view prefix) { return s.substr(0, prefix.size()) == prefix; }

std::optional<int> parse_int(std::string_view s) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size() || value < 0) return std::nullopt;
    return value;
}

// "-12,3" / "+7" -> start, count (count defaults to 1).
bool parse_range(std::string_view s, char sign, int& start, int& count) {
    if (s.empty() || s.front() != sign) return false;
    s.remove_prefix(1);
    auto comma = s.find(',');
    auto first = parse_int(s.substr(0, comma));
    if (!first) return false;
    start = *first;
    if (comma == std::string_view::npos) {
        count = 1;
        return true;
    }
    auto second = parse_int(s.substr(comma + 1));
    if (!second) return false;
    count = *second;
    return true;
}

// Path on a ---/+++ line, without the trailing tab-separated timestamp some
// diff producers append.
std::string header_path(std::string_view rest) {
    if (!rest.empty() && rest.front() != '"') {
        auto tab = rest.find('\t');
        if (tab != std::string_view::npos) rest = rest.substr(0, tab);
    }
    if (rest == kDevNull) return std::string(kDevNull);
    return unquote_git_path(rest, true);
}

// Best effort split of "a/<old> b/<new>" from a `diff --git` line.
void paths_from_git_header(std::string_view rest, FileDiff& file) {
    if (!rest.empty() && rest.front() == '"') {
        auto close = rest.find('"', 1);
        while (close != std::string_view::npos && rest[close - 1] == '\\') close = rest.find('"', close + 1);
        if (close == std::string_view::npos) return;
        file.old_path = unquote_git_path(rest.substr(0, close + 1), true);
        auto tail = rest.substr(close + 1);
        if (!tail.empty() && tail.front() == ' ') tail.remove_prefix(1);
        file.new_path = unquote_git_path(tail, true);
        return;
    }
    // Unambiguous when both sides name the same path: "a/P b/P".
    if (rest.size() >= 5 && (rest.size() - 5) % 2 == 0) {
        std::size_t p = (rest.size() - 5) / 2;
        auto left = rest.substr(0, 2 + p);
        auto right = rest.substr(2 + p + 1);
        if (starts_with(left, "a/") && starts_with(right, "b/") && left.substr(2) == right.substr(2)) {
            file.old_path = file.new_path = std::string(left.substr(2));
            return;
        }
    }
    auto split = rest.rfind(" b/");
    if (split == std::string_view::npos) return;
    file.old_path = unquote_git_path(rest.substr(0, split), true);
    file.new_path = unquote_git_path(rest.substr(split + 1), true);
}

} // namespace

std::string unquote_git_path(std::string_view raw, bool strip_prefix) {
    std::string out;
    if (raw.size() >= 2 && raw.front() == '"' && raw.back() == '"') {
        raw = raw.substr(1, raw.size() - 2);
        for (std::size_t i = 0; i < raw.size(); ++i) {
            char c = raw[i];
            if (c != '\\' || i + 1 >= raw.size()) {
                out += c;
                continue;
            }
            char e = raw[++i];
            switch (e) {
            case 'n': out += '\n'; break;
            case 't': out += '\t'; break;
            case 'a': out += '\a'; break;
            case 'b': out += '\b'; break;
            case 'f': out += '\f'; break;
            case 'r': out += '\r'; break;
            case 'v': out += '\v'; break;
            case '"': out += '"'; break;
            case '\\': out += '\\'; break;
            default:
                if (e >= '0' && e <= '7') {
                    int value = 0;
                    int digits = 0;
                    while (digits < 3 && i < raw.size() && raw[i] >= '0' && raw[i] <= '7') {
                        value = value * 8 + (raw[i] - '0');
                        ++i;
                        ++digits;
                    }
                    --i;
                    out += static_cast<char>(value);
                } else {
                    out += e;
                }
            }
        }
    } else {
        out = std::string(raw);
    }
    if (strip_prefix && out.size() > 2 && (starts_with(out, "a/") || starts_with(out, "b/"))) {
        out.erase(0, 2);
    }
    return out;
}

bool parse_hunk_header(std::string_view line, Hunk& hunk) {
    if (!starts_with(line, "@@ ")) return false;
    line.remove_prefix(3);
    auto end = line.find(" @@");
    if (end == std::string_view::npos) return false;
    line = line.substr(0, end);
    auto space = line.find(' ');
    if (space == std::string_view::npos) return false;
    Hunk h;
    if (!parse_range(line.substr(0, space), '-', h.old_start, h.old_count)) return false;
    if (!parse_range(line.substr(space + 1), '+', h.new_start, h.new_count)) return false;
    hunk = std::move(h);
    return true;
}

std::vector<FileDiff> parse_unified_diff(std::string_view text, DiffDiagnostics* diag) {
    DiffDiagnostics local;
    DiffDiagnostics& d = diag ? *diag : local;

    std::vector<FileDiff> files;
    FileDiff* file = nullptr;
    Hunk* hunk = nullptr;
    int old_left = 0;
    int new_left = 0;
    int old_line = 0;
    int new_line = 0;

    auto close_hunk = [&] {
        if (hunk && (old_left != 0 || new_left != 0)) ++d.hunk_count_mismatches;
        hunk = nullptr;
        old_left = new_left = 0;
    };

    std::size_t pos = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() : nl + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        if (hunk && (old_left > 0 || new_left > 0)) {
            char m = line.empty() ? ' ' : line.front();
            std::string_view body = line.empty() ? line : line.substr(1);
            if (m == ' ' && old_left > 0 && new_left > 0) {
                hunk->lines.push_back({LineMarker::Context, std::string(body), old_line++, new_line++});
                --old_left;
                --new_left;
                continue;
            }
            if (m == '+' && new_left > 0) {
                hunk->lines.push_back({LineMarker::Added, std::string(body), 0, new_line++});
                --new_left;
                continue;
            }
            if (m == '-' && old_left > 0) {
                hunk->lines.push_back({LineMarker::Removed, std::string(body), old_line++, 0});
                --old_left;
                continue;
            }
            if (m == '\\') continue; // "\ No newline at end of file"
            // Structure broken: fall through and treat as a header line.
            close_hunk();
        } else if (hunk && !line.empty() && line.front() == '\\') {
            continue;
        }

        if (starts_with(line, "diff --git ")) {
            close_hunk();
            files.emplace_back();
            file = &files.back();
            paths_from_git_header(line.substr(11), *file);
        } else if (starts_with(line, "--- ") && file) {
            file->old_path = header_path(line.substr(4));
        } else if (starts_with(line, "+++ ") && file) {
            file->new_path = header_path(line.substr(4));
        } else if (starts_with(line, "@@ ")) {
            close_hunk();
            Hunk h;
            if (!file || !parse_hunk_header(line, h)) {
                ++d.malformed_lines;
                continue;
            }
            file->hunks.push_back(std::move(h));
            hunk = &file->hunks.back();
            old_left = hunk->old_count;
            new_left = hunk->new_count;
            old_line = hunk->old_start;
            new_line = hunk->new_start;
        } else if (file && starts_with(line, "rename from ")) {
            file->old_path = unquote_git_path(line.substr(12), false);
        } else if (file && starts_with(line, "rename to ")) {
            file->new_path = unquote_git_path(line.substr(10), false);
        } else if (file && starts_with(line, "copy from ")) {
            file->old_path = unquote_git_path(line.substr(10), false);
        } else if (file && starts_with(line, "copy to ")) {
            file->new_path = unquote_git_path(line.substr(8), false);
        } else if (file && starts_with(line, "new file mode")) {
            file->old_path = std::string(kDevNull);
        } else if (file && starts_with(line, "deleted file mode")) {
            file->new_path = std::string(kDevNull);
        } else if (file && (starts_with(line, "Binary files ") || starts_with(line, "GIT binary patch"))) {
            file->binary = true;
        } else if (starts_with(line, "index ") || starts_with(line, "old mode") || starts_with(line, "new mode") ||
                   starts_with(line, "similarity index") || starts_with(line, "dissimilarity index")) {
            // Extended header lines carry nothing we need.
        } else if (line.empty()) {
            // Separators between commits in `git log -p` output.
        } else if (file && file->binary) {
            // Payload of a binary patch.
        } else {
            ++d.malformed_lines;
        }
    }
    close_hunk();
    return files;
}

} // namespace todolens::mining
