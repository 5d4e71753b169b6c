// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The todolens Authors

#pragma once

#include "todolens/diff.hpp"
#include "todolens/io.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

namespace todolens::mining {

struct CommitRecord {
    std::string commit_id; // 40 lowercase hex
    std::vector<std::string> parent_ids;
    std::int64_t author_time = 0; // UTC seconds
    std::string message;
    std::vector<FileDiff> file_diffs;

    bool is_merge() const { return parent_ids.size() >= 2; }
};

enum class EventKind : std::uint8_t { Introduced, Eliminated };

struct TodoEvent {
    EventKind kind = EventKind::Introduced;
    std::string repo_id;
    std::string commit_id;
    std::string file_path; // new path when introduced, old path when eliminated
    std::string raw_comment;
    int line_no = 1;
    std::int64_t author_time = 0;

    friend bool operator==(const TodoEvent&, const TodoEvent&) = default;
};

struct MiningConfig {
    bool drop_merge_commits = true;
    bool drop_non_english = true;
    double english_ascii_ratio_threshold = 0.9;
    bool dedup = true;
    bool todo_case_sensitive = true;
    // File suffixes to mine; empty mines every text file.
    std::vector<std::string> extensions = {".java"};

    void validate() const;
};

struct MiningDiagnostics {
    DiffDiagnostics diff;
    std::size_t binary_files = 0;
    std::size_t skipped_files = 0; // filtered by extension
    std::size_t dropped_merge = 0;
    std::size_t dropped_non_english = 0;
    std::size_t dropped_duplicate = 0;
};

// Walks every commit reachable from HEAD of the repository at `repo_path`, in
// topological order (parents first, ties broken by ascending commit id).
// Throws NotARepositoryError / GitError. An unborn HEAD yields no commits.
std::vector<CommitRecord> walk_history(const std::filesystem::path& repo_path, const MiningConfig& config,
                                       MiningDiagnostics* diag = nullptr);

// Commit id at HEAD, empty for an unborn branch.
std::string head_commit(const std::filesystem::path& repo_path);

// Orders commits parents-first with ascending commit id among ready commits.
void topological_order(std::vector<CommitRecord>& commits);

std::vector<TodoEvent> extract_todo_events(const CommitRecord& commit, const std::string& repo_id,
                                           const MiningConfig& config, MiningDiagnostics* diag = nullptr);

// Drops merge-commit and non-English events and collapses duplicates of
// (kind, normalized comment, commit). Stable and idempotent.
std::vector<TodoEvent> filter_events(const std::vector<TodoEvent>& events,
                                     const std::unordered_set<std::string>& merge_commit_ids,
                                     const MiningConfig& config, MiningDiagnostics* diag = nullptr);

// Fraction of ASCII letters among all alphabetic code points of UTF-8 text.
// Returns 1.0 when the text holds no alphabetic characters.
double ascii_letter_ratio(std::string_view utf8);

// Hunk-level summary of a commit, persisted next to the event stream so the
// lifecycle stage can rebuild the commit graph and judge removals.
struct HunkSummary {
    int old_start = 0;
    int old_count = 0;
    int new_start = 0;
    int new_count = 0;
    int added_code = 0; // added lines carrying code outside comments
};

struct FileSummary {
    std::string old_path;
    std::string new_path;
    std::vector<HunkSummary> hunks;
};

struct CommitSummary {
    std::string commit_id;
    std::vector<std::string> parent_ids;
    std::int64_t author_time = 0;
    std::string message;
    std::vector<FileSummary> files;
    std::optional<std::vector<std::string>> diff_tokens;

    bool is_merge() const { return parent_ids.size() >= 2; }
};

CommitSummary summarize(const CommitRecord& commit, bool with_diff_tokens);

// Patch text of the commit rebuilt from its parsed hunks.
std::string render_patch(const CommitRecord& commit);

std::string_view to_string(EventKind kind);
EventKind event_kind_from_string(std::string_view s);

ordered_json to_json(const TodoEvent& e);
TodoEvent event_from_json(const json& j);
ordered_json to_json(const CommitSummary& c);
CommitSummary commit_summary_from_json(const json& j);

} // namespace todolens::mining
