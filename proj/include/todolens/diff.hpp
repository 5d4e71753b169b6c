// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The todolens Authors

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace todolens::mining {

enum class LineMarker : std::uint8_t { Context, Added, Removed };

struct DiffLine {
    LineMarker marker = LineMarker::Context;
    std::string text; // without the leading marker character
    int old_line = 0; // 1-based; 0 for added lines
    int new_line = 0; // 1-based; 0 for removed lines
};

struct Hunk {
    int old_start = 0;
    int old_count = 0;
    int new_start = 0;
    int new_count = 0;
    std::vector<DiffLine> lines;
};

inline constexpr std::string_view kDevNull = "/dev/null";

// One file section of a git patch. Added files have old_path == /dev/null and
// deleted files new_path == /dev/null.
struct FileDiff {
    std::string old_path;
    std::string new_path;
    bool binary = false;
    std::vector<Hunk> hunks;

    bool is_rename() const { return old_path != new_path && !is_added() && !is_deleted(); }
    bool is_added() const { return old_path == kDevNull; }
    bool is_deleted() const { return new_path == kDevNull; }
    // Path a reader would use to refer to the file: new path unless deleted.
    const std::string& path() const { return is_deleted() ? old_path : new_path; }
};

struct DiffDiagnostics {
    std::size_t malformed_lines = 0;
    std::size_t hunk_count_mismatches = 0;

    DiffDiagnostics& operator+=(const DiffDiagnostics& o) {
        malformed_lines += o.malformed_lines;
        hunk_count_mismatches += o.hunk_count_mismatches;
        return *this;
    }
};

// Parses the `git diff` / `git log -p` patch text of one commit. Unknown lines
// outside a hunk and lines that break hunk structure are skipped and counted.
std::vector<FileDiff> parse_unified_diff(std::string_view text, DiffDiagnostics* diag = nullptr);

// Parses "@@ -a[,b] +c[,d] @@". Returns false when the header is malformed.
bool parse_hunk_header(std::string_view line, Hunk& hunk);

// Undoes git's C-style quoting of paths ("a/\303\244.java") and strips the
// a/ or b/ prefix when `strip_prefix` is set.
std::string unquote_git_path(std::string_view raw, bool strip_prefix);

} // namespace todolens::mining
