// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The todolens Authors

#include "todolens/lifecycle.hpp"

#include "todolens/error.hpp"
#include "todolens/normalizer.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <set>

namespace todolens::lifecycle {
namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::string todo_key(const TodoEvent& e) { return text::join_tokens(text::normalize_todo(e.raw_comment).tokens); }

void require_commit(const CommitGraph& graph, const TodoEvent& e) {
    if (!graph.contains(e.commit_id)) {
        throw DataError("event references commit " + e.commit_id + " which is missing from the commit graph");
    }
}

// Crude stem: drops common inflection suffixes so "realms" meets "realm"
// and "removing" meets "remove".
std::string stem(std::string w) {
    for (std::string_view suf : {"ing", "ed", "es", "s", "e"}) {
        if (w.size() > suf.size() + 2 && w.ends_with(suf)) {
            w.erase(w.size() - suf.size());
            break;
        }
    }
    return w;
}

bool stop_word(std::string_view w) {
    static const std::set<std::string_view> words = {"the", "and", "for", "with", "this", "that", "when", "from",
                                                     "into", "are", "was", "were", "has", "have", "not", "but",
                                                     "todo", "fixme", "its", "our", "can", "will", "should"};
    return w.size() < 3 || words.count(w) > 0;
}

std::optional<double> ratio(std::size_t num, std::size_t den) {
    if (den == 0) return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den);
}

LifecycleMetrics summarize(std::string category, const std::vector<const TodoRecord*>& group) {
    LifecycleMetrics m;
    m.category = std::move(category);
    m.total = group.size();
    double interval_sum = 0.0;
    double commits_sum = 0.0;
    std::size_t with_interval = 0;
    std::size_t with_commits = 0;
    for (const auto* r : group) {
        if (r->status == Status::Open) continue;
        ++m.removed;
        if (r->status == Status::RemovedUnresolved) {
            ++m.unresolved;
            continue;
        }
        ++m.resolved;
        if (r->time_interval_days) {
            interval_sum += *r->time_interval_days;
            ++with_interval;
        }
        if (r->commits_between) {
            commits_sum += *r->commits_between;
            ++with_commits;
        }
    }
    m.resolved_pct = ratio(m.resolved, m.total);
    m.unresolved_pct = ratio(m.unresolved, m.removed);
    if (with_interval) m.mean_time_interval_days = interval_sum / static_cast<double>(with_interval);
    if (with_commits) m.mean_commits = commits_sum / static_cast<double>(with_commits);
    return m;
}

ordered_json optional_number(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

std::string optional_fixed(const std::optional<double>& v, double scale) {
    return v ? format_fixed(*v * scale, 2) : std::string{};
}

} // namespace

CommitGraph::CommitGraph(const std::vector<CommitSummary>& commits) {
    for (const auto& c : commits) add(c.commit_id, {c.author_time, c.parent_ids});
    validate();
}

void CommitGraph::add(const std::string& id, CommitNode node) {
    if (!nodes_.emplace(id, std::move(node)).second) throw DataError("duplicate commit " + id + " in commit graph");
}

void CommitGraph::validate() const {
    std::map<std::string_view, int> pending;
    std::map<std::string_view, std::vector<std::string_view>> children;
    for (const auto& [id, n] : nodes_) {
        pending[id];
        for (const auto& p : n.parent_ids) {
            if (!nodes_.count(p)) throw DataError("commit " + id + " has parent " + p + " missing from the history");
            ++pending[id];
            children[p].push_back(id);
        }
    }
    std::deque<std::string_view> ready;
    for (const auto& [id, count] : pending) {
        if (count == 0) ready.push_back(id);
    }
    std::size_t seen = 0;
    while (!ready.empty()) {
        auto id = ready.front();
        ready.pop_front();
        ++seen;
        for (auto c : children[id]) {
            if (--pending[c] == 0) ready.push_back(c);
        }
    }
    if (seen != nodes_.size()) throw DataError("commit graph contains a cycle");
}

const CommitNode& CommitGraph::node(const std::string& id) const {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) throw DataError("commit " + id + " is missing from the commit graph");
    return it->second;
}

std::optional<int> CommitGraph::shortest_distance(const std::string& descendant, const std::string& ancestor) const {
    if (!contains(descendant) || !contains(ancestor)) return std::nullopt;
    if (descendant == ancestor) return 0;
    std::map<std::string_view, int> dist{{descendant, 0}};
    std::deque<std::string_view> queue{descendant};
    while (!queue.empty()) {
        auto id = queue.front();
        queue.pop_front();
        int d = dist[id];
        auto parents = nodes_.at(std::string(id)).parent_ids;
        std::sort(parents.begin(), parents.end());
        for (const auto& p : parents) {
            auto it = nodes_.find(p);
            std::string_view key = it->first;
            if (dist.count(key)) continue;
            if (p == ancestor) return d + 1;
            dist.emplace(key, d + 1);
            queue.push_back(key);
        }
    }
    return std::nullopt;
}

bool CommitGraph::is_proper_ancestor(const std::string& ancestor, const std::string& descendant) const {
    auto d = shortest_distance(descendant, ancestor);
    return d && *d > 0;
}

std::string_view to_string(Status s) {
    switch (s) {
    case Status::Open: return "Open";
    case Status::Resolved: return "Resolved";
    case Status::RemovedUnresolved: return "RemovedUnresolved";
    }
    return "Open";
}

Status status_from_string(std::string_view s) {
    for (auto st : {Status::Open, Status::Resolved, Status::RemovedUnresolved}) {
        if (to_string(st) == s) return st;
    }
    throw DataError("unknown status '" + std::string(s) + "'");
}

bool same_todo(const TodoEvent& intro, const TodoEvent& elim) {
    return intro.repo_id == elim.repo_id && intro.file_path == elim.file_path && todo_key(intro) == todo_key(elim);
}

bool introduced_before(const TodoEvent& intro, const TodoEvent& elim, const CommitGraph& graph) {
    if (intro.author_time > elim.author_time) return false;
    return graph.is_proper_ancestor(intro.commit_id, elim.commit_id);
}

std::vector<TodoRecord> match_pairs(const std::vector<TodoEvent>& introduced, const std::vector<TodoEvent>& eliminated,
                                    const CommitGraph& graph) {
    for (const auto& e : introduced) require_commit(graph, e);
    for (const auto& e : eliminated) require_commit(graph, e);

    using Key = std::tuple<std::string, std::string, std::string>;
    std::map<Key, std::vector<std::size_t>> candidates;
    for (std::size_t j = 0; j < eliminated.size(); ++j) {
        const auto& e = eliminated[j];
        candidates[{e.repo_id, e.file_path, todo_key(e)}].push_back(j);
    }
    for (auto& [key, list] : candidates) {
        std::sort(list.begin(), list.end(), [&](std::size_t a, std::size_t b) {
            const auto& x = eliminated[a];
            const auto& y = eliminated[b];
            return std::tie(x.author_time, x.commit_id, x.line_no, a) < std::tie(y.author_time, y.commit_id, y.line_no, b);
        });
    }

    std::vector<std::size_t> order(introduced.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& x = introduced[a];
        const auto& y = introduced[b];
        return std::tie(x.author_time, x.commit_id, x.file_path, x.line_no, a) <
               std::tie(y.author_time, y.commit_id, y.file_path, y.line_no, b);
    });

    std::vector<TodoRecord> records(introduced.size());
    std::vector<bool> consumed(eliminated.size(), false);
    for (auto i : order) {
        auto& r = records[i];
        r.intro = introduced[i];
        auto it = candidates.find({r.intro.repo_id, r.intro.file_path, todo_key(r.intro)});
        if (it == candidates.end()) continue;
        for (auto j : it->second) {
            if (consumed[j] || !introduced_before(r.intro, eliminated[j], graph)) continue;
            consumed[j] = true;
            r.elim = eliminated[j];
            r.status = Status::Resolved;
            break;
        }
    }
    return records;
}

int commits_between(const CommitGraph& graph, const std::string& intro_id, const std::string& elim_id) {
    auto d = graph.shortest_distance(elim_id, intro_id);
    if (!d || *d < 1) throw DataError("commit " + intro_id + " is not an ancestor of " + elim_id);
    return *d;
}

Overrides parse_overrides(std::string_view csv_text) {
    Overrides out;
    auto rows = parse_csv(csv_text);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (row.size() == 1 && row[0].empty()) continue;
        if (i == 0 && !row.empty() && row[0] == "commit_id") continue;
        auto where = "override line " + std::to_string(i + 1) + ": ";
        if (row.size() != 4) throw DataError(where + "expected commit_id,file_path,line_no,status");
        int line = 0;
        try {
            std::size_t used = 0;
            line = std::stoi(row[2], &used);
            if (used != row[2].size() || line < 1) throw std::invalid_argument("line");
        } catch (const std::exception&) {
            throw DataError(where + "line_no must be a positive integer");
        }
        auto status = status_from_string(row[3]);
        if (status == Status::Open) throw DataError(where + "status must be Resolved or RemovedUnresolved");
        out[{row[0], row[1], line}] = status;
    }
    return out;
}

Overrides load_overrides(const std::filesystem::path& path) { return parse_overrides(read_file(path)); }

bool has_cleanup_marker(std::string_view message) {
    auto m = lower(message);
    for (std::string_view marker : {"cleanup", "clean up", "clean-up", "remove dead", "removed dead", "removing dead",
                                    "dead code", "drop obsolete", "remove obsolete", "remove unused"}) {
        if (m.find(marker) != std::string::npos) return true;
    }
    return false;
}

int message_overlap(std::string_view message, const std::vector<std::string>& todo_tokens) {
    std::set<std::string> msg;
    for (const auto& t : text::tokenize(message)) {
        if (!stop_word(t) && !text::is_placeholder(t)) msg.insert(stem(t));
    }
    std::set<std::string> hits;
    for (const auto& t : todo_tokens) {
        if (stop_word(t) || text::is_placeholder(t)) continue;
        if (msg.count(stem(t))) hits.insert(stem(t));
    }
    return static_cast<int>(hits.size());
}

RemovalDecision classify_removal(const TodoRecord& record, const CommitSummary& elim_commit,
                                 const Overrides& overrides) {
    if (!record.elim) throw InvalidArgument("classify_removal needs a record with an elimination");
    const auto& intro = record.intro;
    if (auto it = overrides.find({intro.commit_id, intro.file_path, intro.line_no}); it != overrides.end()) {
        return {it->second, false, "override"};
    }

    const auto& elim = *record.elim;
    int added = 0;
    for (const auto& f : elim_commit.files) {
        if (f.old_path != elim.file_path || f.new_path == mining::kDevNull) continue;
        for (const auto& h : f.hunks) {
            if (elim.line_no >= h.old_start && elim.line_no < h.old_start + h.old_count) added += h.added_code;
        }
    }
    if (has_cleanup_marker(elim_commit.message) && added == 0) return {Status::RemovedUnresolved, false, "cleanup"};
    if (added > 0) return {Status::Resolved, false, "code-added"};
    if (message_overlap(elim_commit.message, text::normalize_todo(intro.raw_comment).tokens) >= 2) {
        return {Status::Resolved, false, "message-reference"};
    }
    return {Status::Resolved, true, "default"};
}

void finalize_records(std::vector<TodoRecord>& records, const CommitGraph& graph,
                      const std::unordered_map<std::string, const CommitSummary*>& commits, const Overrides& overrides) {
    for (auto& r : records) {
        if (!r.elim) {
            r.status = Status::Open;
            r.time_interval_days.reset();
            r.commits_between.reset();
            r.low_confidence = false;
            r.removal_rule.clear();
            continue;
        }
        r.time_interval_days = static_cast<double>(r.elim->author_time - r.intro.author_time) / 86400.0;
        r.commits_between = commits_between(graph, r.intro.commit_id, r.elim->commit_id);
        auto it = commits.find(r.elim->commit_id);
        if (it == commits.end()) throw DataError("no commit summary for " + r.elim->commit_id);
        auto d = classify_removal(r, *it->second, overrides);
        r.status = d.status;
        r.low_confidence = d.low_confidence;
        r.removal_rule = d.rule;
    }
}

std::vector<LifecycleMetrics> compute_metrics(const std::vector<TodoRecord>& records, GroupBy group_by) {
    if (records.empty()) return {};
    std::vector<const TodoRecord*> all;
    for (const auto& r : records) all.push_back(&r);
    auto select = [&](auto pred) {
        std::vector<const TodoRecord*> out;
        for (const auto* r : all) {
            if (pred(*r)) out.push_back(r);
        }
        return out;
    };

    std::vector<LifecycleMetrics> rows;
    switch (group_by) {
    case GroupBy::Category:
        for (auto cat : classify::kCategories) {
            rows.push_back(
                summarize(std::string(cat), select([&](const TodoRecord& r) { return classify::category_of(r.verdict) == cat; })));
        }
        rows.push_back(summarize("High-quality",
                                 select([](const TodoRecord& r) { return r.verdict.quality == classify::Quality::Good; })));
        rows.push_back(summarize("Low-quality",
                                 select([](const TodoRecord& r) { return r.verdict.quality == classify::Quality::Bad; })));
        break;
    case GroupBy::Form:
        rows.push_back(summarize("Task", select([](const TodoRecord& r) { return r.verdict.form == classify::Form::Task; })));
        rows.push_back(
            summarize("Notice", select([](const TodoRecord& r) { return r.verdict.form == classify::Form::Notice; })));
        break;
    case GroupBy::Subcategory: {
        std::set<std::string> names;
        for (const auto* r : all) names.insert(r->verdict.subcategory.value_or("(none)"));
        for (const auto& n : names) {
            rows.push_back(summarize(n, select([&](const TodoRecord& r) { return r.verdict.subcategory.value_or("(none)") == n; })));
        }
        break;
    }
    }
    rows.push_back(summarize("Overall", all));
    return rows;
}

ordered_json to_json(const TodoRecord& r) {
    ordered_json j;
    j["intro"] = mining::to_json(r.intro);
    j["elim"] = r.elim ? mining::to_json(*r.elim) : ordered_json(nullptr);
    j["status"] = to_string(r.status);
    j["verdict"] = classify::to_json(r.verdict);
    j["time_interval_days"] = optional_number(r.time_interval_days);
    j["commits_between"] = r.commits_between ? ordered_json(*r.commits_between) : ordered_json(nullptr);
    j["low_confidence"] = r.low_confidence;
    j["removal_rule"] = r.removal_rule;
    return j;
}

TodoRecord record_from_json(const json& j) {
    if (!j.is_object()) throw DataError("record must be a JSON object");
    TodoRecord r;
    r.intro = mining::event_from_json(j.at("intro"));
    if (auto it = j.find("elim"); it != j.end() && !it->is_null()) r.elim = mining::event_from_json(*it);
    r.status = status_from_string(j.at("status").get<std::string>());
    r.verdict = classify::verdict_from_json(j.at("verdict"));
    if (auto it = j.find("time_interval_days"); it != j.end() && !it->is_null()) r.time_interval_days = it->get<double>();
    if (auto it = j.find("commits_between"); it != j.end() && !it->is_null()) r.commits_between = it->get<int>();
    r.low_confidence = j.value("low_confidence", false);
    r.removal_rule = j.value("removal_rule", std::string{});
    if ((r.status == Status::Open) != !r.elim) throw DataError("status Open must coincide with a missing elimination");
    if (r.elim && (!r.time_interval_days || !r.commits_between)) {
        throw DataError("matched record lacks time_interval_days or commits_between");
    }
    if (r.time_interval_days && *r.time_interval_days < 0) throw DataError("negative time_interval_days");
    if (r.commits_between && *r.commits_between < 1) throw DataError("commits_between must be positive");
    return r;
}

ordered_json to_json(const LifecycleMetrics& m) {
    ordered_json j;
    j["category"] = m.category;
    j["total"] = m.total;
    j["removed"] = m.removed;
    j["resolved"] = m.resolved;
    j["unresolved"] = m.unresolved;
    j["resolved_pct"] = optional_number(m.resolved_pct);
    j["unresolved_pct"] = optional_number(m.unresolved_pct);
    j["mean_time_interval_days"] = optional_number(m.mean_time_interval_days);
    j["mean_commits"] = optional_number(m.mean_commits);
    return j;
}

std::string metrics_csv_row(const LifecycleMetrics& m) {
    return csv_row({m.category, std::to_string(m.total), std::to_string(m.removed), std::to_string(m.resolved),
                    std::to_string(m.unresolved), optional_fixed(m.resolved_pct, 100.0),
                    optional_fixed(m.unresolved_pct, 100.0), optional_fixed(m.mean_time_interval_days, 1.0),
                    optional_fixed(m.mean_commits, 1.0)});
}

} // namespace todolens::lifecycle
