// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The todolens Authors

#pragma once

#include "todolens/classifier.hpp"
#include "todolens/miner.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace todolens::lifecycle {

using mining::CommitSummary;
using mining::TodoEvent;

struct CommitNode {
    std::int64_t author_time = 0;
    std::vector<std::string> parent_ids;
};

// Commit DAG keyed by commit id. Construction rejects dangling parents and
// cycles with DataError.
class CommitGraph {
public:
    CommitGraph() = default;
    explicit CommitGraph(const std::vector<CommitSummary>& commits);

    void add(const std::string& id, CommitNode node);
    // Checks parent references and acyclicity; called by the constructor.
    void validate() const;

    bool contains(const std::string& id) const { return nodes_.count(id) > 0; }
    const CommitNode& node(const std::string& id) const;
    std::size_t size() const { return nodes_.size(); }
    const std::map<std::string, CommitNode>& nodes() const { return nodes_; }

    // True when `ancestor` is reachable from `descendant` through parent
    // edges in at least one step.
    bool is_proper_ancestor(const std::string& ancestor, const std::string& descendant) const;

    // Fewest parent edges from `descendant` back to `ancestor`, or nullopt.
    std::optional<int> shortest_distance(const std::string& descendant, const std::string& ancestor) const;

private:
    std::map<std::string, CommitNode> nodes_;
};

enum class Status : std::uint8_t { Open, Resolved, RemovedUnresolved };
std::string_view to_string(Status s);
Status status_from_string(std::string_view s);

struct TodoRecord {
    TodoEvent intro;
    std::optional<TodoEvent> elim;
    Status status = Status::Open;
    classify::Verdict verdict;
    std::optional<double> time_interval_days;
    std::optional<int> commits_between;
    bool low_confidence = false;
    std::string removal_rule; // which rule decided the status; empty when open
};

// Ordering: strictly earlier author time, or equal time with the
// introduction a proper ancestor. The introduction must in any case be an
// ancestor of the elimination.
bool introduced_before(const TodoEvent& intro, const TodoEvent& elim, const CommitGraph& graph);

// Same normalized comment, repository and file path.
bool same_todo(const TodoEvent& intro, const TodoEvent& elim);

// Greedy injective matching. Introductions are visited by (author_time,
// commit_id, file_path, line_no); each takes the earliest unconsumed
// eligible elimination by (author_time, commit_id, line_no). Records come
// back in input order of `introduced`, matched ones with status Resolved
// pending classify_removal. Throws DataError for commits missing from graph.
std::vector<TodoRecord> match_pairs(const std::vector<TodoEvent>& introduced, const std::vector<TodoEvent>& eliminated,
                                    const CommitGraph& graph);

// Shortest parent-path length from elim back to intro; DataError when intro
// is not an ancestor.
int commits_between(const CommitGraph& graph, const std::string& intro_id, const std::string& elim_id);

// Manual judgments keyed by the introduction's (commit_id, file_path, line_no).
using OverrideKey = std::tuple<std::string, std::string, int>;
using Overrides = std::map<OverrideKey, Status>;
Overrides parse_overrides(std::string_view csv_text);
Overrides load_overrides(const std::filesystem::path& path);

struct RemovalDecision {
    Status status = Status::Resolved;
    bool low_confidence = false;
    std::string rule; // override, cleanup, code-added, message-reference, default
};

// Message markers that signal a clean-up removal.
bool has_cleanup_marker(std::string_view message);
// Distinct TODO words (stem-matched) that also appear in the message.
int message_overlap(std::string_view message, const std::vector<std::string>& todo_tokens);

RemovalDecision classify_removal(const TodoRecord& record, const CommitSummary& elim_commit,
                                 const Overrides& overrides);

// Sets times, path lengths and statuses on matched records.
void finalize_records(std::vector<TodoRecord>& records, const CommitGraph& graph,
                      const std::unordered_map<std::string, const CommitSummary*>& commits, const Overrides& overrides);

struct LifecycleMetrics {
    std::string category;
    std::size_t total = 0;
    std::size_t removed = 0;
    std::size_t resolved = 0;
    std::size_t unresolved = 0;
    std::optional<double> resolved_pct;   // undefined when total = 0
    std::optional<double> unresolved_pct; // undefined when removed = 0
    std::optional<double> mean_time_interval_days; // over resolved records
    std::optional<double> mean_commits;
};

enum class GroupBy : std::uint8_t { Category, Form, Subcategory };

// Category rows come in the order TaskGood, TaskBad, NoticeGood, NoticeBad,
// followed by High-quality, Low-quality and Overall.
std::vector<LifecycleMetrics> compute_metrics(const std::vector<TodoRecord>& records,
                                              GroupBy group_by = GroupBy::Category);

ordered_json to_json(const TodoRecord& r);
TodoRecord record_from_json(const json& j);
ordered_json to_json(const LifecycleMetrics& m);

inline constexpr std::string_view kMetricsHeader =
    "category,total,removed,resolved,unresolved,resolved_pct,unresolved_pct,mean_time_interval_days,mean_commits";
// One newline-terminated CSV row; percentages as "14.50", means with two decimals, undefined as "".
std::string metrics_csv_row(const LifecycleMetrics& m);

} // namespace todolens::lifecycle
