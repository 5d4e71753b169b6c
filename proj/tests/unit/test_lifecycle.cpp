// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The todolens Authors

#include "oracles.hpp"
#include "test_support.hpp"

#include "todolens/error.hpp"
#include "todolens/lifecycle.hpp"

#include <catch_amalgamated.hpp>

#include <random>
#include <set>

using namespace todolens;
using namespace todolens::lifecycle;
using mining::EventKind;
using testing::Dag;

namespace {

struct Split {
    std::vector<TodoEvent> intro;
    std::vector<TodoEvent> elim;
};

Split split(const std::vector<TodoEvent>& events) {
    Split s;
    for (const auto& e : events) (e.kind == EventKind::Introduced ? s.intro : s.elim).push_back(e);
    return s;
}

std::string commit_by_message(const std::vector<CommitSummary>& commits, std::string_view prefix) {
    for (const auto& c : commits) {
        if (c.message.starts_with(prefix)) return c.commit_id;
    }
    FAIL("no commit with message " << prefix);
    return {};
}

CommitGraph graph_of(const Dag& dag, std::int64_t time = 0) {
    CommitGraph g;
    for (const auto& [id, parents] : dag) g.add(id, {time, parents});
    g.validate();
    return g;
}

TodoEvent ev(EventKind kind, std::string commit, std::string comment, std::int64_t time, int line = 1,
             std::string file = "A.java") {
    TodoEvent e;
    e.kind = kind;
    e.repo_id = "r";
    e.commit_id = std::move(commit);
    e.file_path = std::move(file);
    e.raw_comment = std::move(comment);
    e.line_no = line;
    e.author_time = time;
    return e;
}

classify::Verdict verdict_for(std::string_view category) {
    bool task = category.starts_with("Task");
    bool good = category.ends_with("Good");
    return classify::make_verdict(task ? classify::ProbPair{1.0, 0.0} : classify::ProbPair{0.0, 1.0},
                                  good ? classify::ProbPair{1.0, 0.0} : classify::ProbPair{0.0, 1.0},
                                  classify::Source::Rules);
}

TodoRecord record(std::string_view category, Status status, std::optional<double> days = {},
                  std::optional<int> commits = {}) {
    TodoRecord r;
    r.intro = ev(EventKind::Introduced, "c", "// TODO x", 0);
    r.status = status;
    r.verdict = verdict_for(category);
    r.time_interval_days = days;
    r.commits_between = commits;
    return r;
}

const LifecycleMetrics& row(const std::vector<LifecycleMetrics>& rows, std::string_view name) {
    for (const auto& m : rows) {
        if (m.category == name) return m;
    }
    FAIL("missing row " << name);
    return rows.front();
}

// Small DAGs for path counting; parents listed per child.
std::vector<Dag> small_dags() {
    return {
        {{"a", {}}, {"b", {"a"}}, {"c", {"b"}}},
        {{"a", {}}, {"b", {"a"}}},
        {{"a", {}}, {"b", {"a"}}, {"c", {"a"}}, {"d", {"b", "c"}}},
        {{"a", {}}, {"b", {"a"}}, {"c", {"b"}}, {"d", {"a"}}, {"e", {"c", "d"}}},
        {{"a", {}}, {"b", {"a"}}, {"c", {"a"}}, {"d", {"b", "c"}}, {"e", {"d"}}, {"f", {"d", "a"}}, {"g", {"e", "f"}}},
    };
}

Dag random_dag(std::mt19937_64& rng, int n) {
    Dag d;
    for (int i = 0; i < n; ++i) {
        std::vector<std::string> parents;
        for (int j = 0; j < i; ++j) {
            if (rng() % 3 == 0 && parents.size() < 2) parents.push_back("n" + std::to_string(j));
        }
        if (parents.empty() && i > 0) parents.push_back("n" + std::to_string(rng() % static_cast<unsigned>(i)));
        d["n" + std::to_string(i)] = parents;
    }
    return d;
}

} // namespace

TEST_CASE("fixture matching equals the brute-force oracle") {
    auto mined = testing::mine_repo(testing::fixture_repo());
    auto [intro, elim] = split(mined.events);
    CommitGraph graph(mined.commits);
    auto records = match_pairs(intro, elim, graph);
    auto oracle = testing::brute_match(intro, elim, testing::dag_of(mined.commits));
    REQUIRE(records.size() == intro.size());
    std::size_t matched = 0;
    for (std::size_t i = 0; i < intro.size(); ++i) {
        INFO(intro[i].file_path << " " << intro[i].raw_comment);
        CHECK(records[i].intro == intro[i]);
        CHECK(records[i].elim.has_value() == oracle[i].has_value());
        if (records[i].elim && oracle[i]) CHECK(*records[i].elim == elim[*oracle[i]]);
        matched += records[i].elim ? 1 : 0;
    }
    CHECK(matched == 5);
}

TEST_CASE("fixture rename and revert produce no match") {
    auto mined = testing::mine_repo(testing::fixture_repo());
    auto [intro, elim] = split(mined.events);
    auto records = match_pairs(intro, elim, CommitGraph(mined.commits));
    auto revert = commit_by_message(mined.commits, "Revert");

    bool saw_rename = false;
    bool saw_revert = false;
    for (const auto& r : records) {
        if (r.intro.file_path == "src/Old.java") {
            saw_rename = true;
            CHECK_FALSE(r.elim);
        }
        if (r.intro.commit_id == revert) {
            saw_revert = true;
            CHECK_FALSE(r.elim);
        }
    }
    CHECK(saw_rename);
    CHECK(saw_revert);

    // The rename's elimination is on the new path and stays unconsumed.
    std::size_t on_new_path = 0;
    for (const auto& e : elim) on_new_path += e.file_path == "src/New.java" ? 1 : 0;
    CHECK(on_new_path == 1);
    for (const auto& r : records) CHECK((!r.elim || r.elim->file_path != "src/New.java"));
}

TEST_CASE("elimination before the introduction never matches") {
    Dag dag{{"a", {}}, {"b", {"a"}}, {"c", {"b"}}};
    auto g = graph_of(dag);
    auto intro = ev(EventKind::Introduced, "c", "// TODO x", 300);
    auto elim = ev(EventKind::Eliminated, "b", "// TODO x", 200);
    auto r = match_pairs({intro}, {elim}, g);
    CHECK_FALSE(r[0].elim);
    CHECK(r[0].status == Status::Open);
}

TEST_CASE("comment equality ignores markers and whitespace") {
    Dag dag{{"a", {}}, {"b", {"a"}}};
    auto r = match_pairs({ev(EventKind::Introduced, "a", "//   TODO:  fix   this", 1)},
                         {ev(EventKind::Eliminated, "b", "/* TODO fix this */", 2)}, graph_of(dag));
    CHECK(r[0].elim);
}

TEST_CASE("equal timestamps need ancestry; incomparable commits do not match") {
    Dag dag{{"a", {}}, {"b", {"a"}}, {"c", {"a"}}};
    auto g = graph_of(dag);
    auto same_time = match_pairs({ev(EventKind::Introduced, "a", "// TODO x", 5)},
                                 {ev(EventKind::Eliminated, "b", "// TODO x", 5)}, g);
    CHECK(same_time[0].elim);
    auto sideways = match_pairs({ev(EventKind::Introduced, "b", "// TODO x", 5)},
                                {ev(EventKind::Eliminated, "c", "// TODO x", 9)}, g);
    CHECK_FALSE(sideways[0].elim);
}

TEST_CASE("events referencing unknown commits are rejected") {
    auto g = graph_of({{"a", {}}});
    CHECK_THROWS_AS(match_pairs({ev(EventKind::Introduced, "zz", "// TODO x", 1)}, {}, g), DataError);
}

TEST_CASE("matching is injective and agrees with the oracle on random histories") {
    std::mt19937_64 rng(2024);
    const std::vector<std::string> comments = {"// TODO a", "// TODO b", "// TODO a  "};
    for (int round = 0; round < 200; ++round) {
        auto dag = random_dag(rng, 2 + static_cast<int>(rng() % 7));
        std::map<std::string, std::int64_t> times;
        for (const auto& [id, parents] : dag) {
            std::int64_t t = 0;
            for (const auto& p : parents) t = std::max(t, times.at(p));
            times[id] = t + static_cast<std::int64_t>(rng() % 2);
        }
        CommitGraph g;
        for (const auto& [id, parents] : dag) g.add(id, {times[id], parents});
        g.validate();

        std::vector<std::string> ids;
        for (const auto& [id, parents] : dag) ids.push_back(id);
        std::vector<TodoEvent> intro;
        std::vector<TodoEvent> elim;
        auto n_events = 1 + rng() % 6;
        for (std::size_t k = 0; k < n_events; ++k) {
            const auto& c = ids[rng() % ids.size()];
            auto& list = rng() % 2 ? intro : elim;
            list.push_back(ev(rng() % 2 ? EventKind::Introduced : EventKind::Eliminated, c,
                              comments[rng() % comments.size()], times[c], 1 + static_cast<int>(rng() % 3),
                              rng() % 4 ? "A.java" : "B.java"));
        }
        auto records = match_pairs(intro, elim, g);
        auto oracle = testing::brute_match(intro, elim, dag);
        std::set<std::size_t> consumed;
        for (std::size_t i = 0; i < intro.size(); ++i) {
            REQUIRE(records[i].elim.has_value() == oracle[i].has_value());
            if (!oracle[i]) continue;
            CHECK(*records[i].elim == elim[*oracle[i]]);
            CHECK(consumed.insert(*oracle[i]).second);
            CHECK(testing::brute_eligible(intro[i], *records[i].elim, dag));
        }
    }
}

TEST_CASE("commits_between: chain, direct parent and diamond") {
    auto chain = graph_of({{"a", {}}, {"b", {"a"}}, {"c", {"b"}}});
    CHECK(commits_between(chain, "a", "c") == 2);
    CHECK(commits_between(chain, "b", "c") == 1);
    auto diamond = graph_of({{"a", {}}, {"b", {"a"}}, {"c", {"a"}}, {"d", {"b", "c"}}});
    CHECK(commits_between(diamond, "a", "d") == 2);
    CHECK_THROWS_AS(commits_between(diamond, "b", "c"), DataError);
    CHECK_THROWS_AS(commits_between(diamond, "a", "a"), DataError);
}

TEST_CASE("commits_between equals brute-force path enumeration on every fixture DAG") {
    auto dags = small_dags();
    dags.push_back(testing::dag_of(testing::mine_repo(testing::fixture_repo()).commits));
    std::mt19937_64 rng(5);
    for (int i = 0; i < 50; ++i) dags.push_back(random_dag(rng, 9));
    for (const auto& dag : dags) {
        auto g = graph_of(dag);
        for (const auto& [x, px] : dag) {
            for (const auto& [y, py] : dag) {
                auto want = testing::brute_commits_between(dag, x, y);
                CHECK(g.is_proper_ancestor(x, y) == want.has_value());
                if (want) {
                    CHECK(commits_between(g, x, y) == *want);
                } else {
                    CHECK_THROWS_AS(commits_between(g, x, y), DataError);
                }
            }
        }
    }
}

TEST_CASE("graph construction rejects dangling parents and cycles") {
    CommitGraph dangling;
    dangling.add("a", {0, {"missing"}});
    CHECK_THROWS_AS(dangling.validate(), DataError);
    CommitGraph cycle;
    cycle.add("a", {0, {"b"}});
    cycle.add("b", {0, {"a"}});
    CHECK_THROWS_AS(cycle.validate(), DataError);
    CommitGraph dup;
    dup.add("a", {});
    CHECK_THROWS_AS(dup.add("a", {}), DataError);
}

TEST_CASE("removal judged resolved when the message restates the TODO") {
    TodoRecord r;
    r.intro = ev(EventKind::Introduced, "a", "// TODO: remove try/catch block when compacting encrypted Realms is supported",
                 1);
    r.elim = ev(EventKind::Eliminated, "b", r.intro.raw_comment, 2);
    CommitSummary c;
    c.commit_id = "b";
    c.message = "Removing the restriction of compacting encrypted Realm files.";
    c.files = {{"A.java", "A.java", {{1, 1, 0, 0, 0}}}};
    auto d = classify_removal(r, c, {});
    CHECK(d.status == Status::Resolved);
    CHECK(d.rule == "message-reference");
    CHECK_FALSE(d.low_confidence);
}

TEST_CASE("whole-file deletion in a cleanup commit is unresolved") {
    TodoRecord r;
    r.intro = ev(EventKind::Introduced, "a", "// TODO handle timeouts", 1, 3);
    r.elim = ev(EventKind::Eliminated, "b", r.intro.raw_comment, 2, 3);
    CommitSummary c;
    c.message = "cleanup dead code";
    c.files = {{"A.java", std::string(mining::kDevNull), {{1, 10, 0, 0, 0}}}};
    CHECK(classify_removal(r, c, {}).status == Status::RemovedUnresolved);
}

TEST_CASE("overrides win over the heuristic") {
    TodoRecord r;
    r.intro = ev(EventKind::Introduced, "a", "// TODO add retries", 1, 7);
    r.elim = ev(EventKind::Eliminated, "b", r.intro.raw_comment, 2, 7);
    CommitSummary c;
    c.message = "Add retries";
    c.files = {{"A.java", "A.java", {{7, 1, 7, 5, 5}}}};
    CHECK(classify_removal(r, c, {}).status == Status::Resolved);
    auto o = parse_overrides("commit_id,file_path,line_no,status\na,A.java,7,RemovedUnresolved\n");
    auto d = classify_removal(r, c, o);
    CHECK(d.status == Status::RemovedUnresolved);
    CHECK(d.rule == "override");
    CHECK_THROWS_AS(classify_removal(record("TaskGood", Status::Open), c, {}), InvalidArgument);
}

TEST_CASE("override file validation") {
    CHECK(parse_overrides("").empty());
    CHECK(parse_overrides("a,B.java,3,Resolved\n").size() == 1);
    CHECK_THROWS_AS(parse_overrides("a,B.java,3\n"), DataError);
    CHECK_THROWS_AS(parse_overrides("a,B.java,zero,Resolved\n"), DataError);
    CHECK_THROWS_AS(parse_overrides("a,B.java,0,Resolved\n"), DataError);
    CHECK_THROWS_AS(parse_overrides("a,B.java,3,Open\n"), DataError);
    CHECK_THROWS_AS(parse_overrides("a,B.java,3,Done\n"), DataError);
}

TEST_CASE("removal heuristic agrees with 20 hand-labeled removals") {
    struct Case {
        const char* todo;
        const char* message;
        int added_code;
        Status label;
    };
    const std::vector<Case> cases = {
        {"TODO handle timeouts", "cleanup dead code", 0, Status::RemovedUnresolved},
        {"TODO: is this still needed", "Remove unused helpers", 0, Status::RemovedUnresolved},
        {"TODO implement retry", "Implement retry with backoff", 5, Status::Resolved},
        {"TODO guard against null input", "Fix NPE in parser", 2, Status::Resolved},
        {"TODO tidy", "Clean up imports and comments", 0, Status::RemovedUnresolved},
        {"TODO cache results of lookups", "Add caching layer", 10, Status::Resolved},
        {"TODO support compressed uploads", "Support compressed uploads", 0, Status::Resolved},
        {"TODO remove once java 8 is gone", "Drop obsolete compatibility shims", 0, Status::RemovedUnresolved},
        {"TODO split this class", "Refactor storage", 4, Status::Resolved},
        {"TODO validate config keys", "Bump version", 0, Status::Resolved},
        {"TODO rewrite the scheduler", "Merge cleanup branch: rewrite scheduler", 30, Status::Resolved},
        {"TODO handle legacy format", "Remove dead code paths", 0, Status::RemovedUnresolved},
        {"TODO validate config keys", "Validate config keys on load", 0, Status::Resolved},
        {"TODO drop this", "Clean-up: remove stale comments", 0, Status::RemovedUnresolved},
        {"TODO what if the response is empty?", "Handle empty responses", 3, Status::Resolved},
        {"TODO remove after 2.0", "Delete deprecated API", 0, Status::Resolved},
        {"TODO optimize the loop", "cleanup", 0, Status::RemovedUnresolved},
        {"TODO stream large files", "Use streaming parser for large files", 12, Status::Resolved},
        {"TODO check bounds", "Removed dead code", 0, Status::RemovedUnresolved},
        {"TODO fix indentation", "Tidy up formatting", 0, Status::Resolved},
    };
    REQUIRE(cases.size() == 20);
    for (const auto& k : cases) {
        INFO(k.todo << " / " << k.message);
        TodoRecord r;
        r.intro = ev(EventKind::Introduced, "a", std::string("// ") + k.todo, 1, 4);
        r.elim = ev(EventKind::Eliminated, "b", r.intro.raw_comment, 2, 4);
        CommitSummary c;
        c.message = k.message;
        c.files = {{"A.java", "A.java", {{3, 3, 3, 2 + k.added_code, k.added_code}}}};
        CHECK(classify_removal(r, c, {}).status == k.label);
    }
}

TEST_CASE("code added outside the removed TODO's hunk does not count") {
    TodoRecord r;
    r.intro = ev(EventKind::Introduced, "a", "// TODO handle timeouts", 1, 4);
    r.elim = ev(EventKind::Eliminated, "b", r.intro.raw_comment, 2, 4);
    CommitSummary c;
    c.message = "cleanup";
    c.files = {{"A.java", "A.java", {{3, 2, 3, 1, 0}, {40, 0, 39, 6, 6}}}, {"B.java", "B.java", {{4, 1, 4, 9, 9}}}};
    CHECK(classify_removal(r, c, {}).status == Status::RemovedUnresolved);
}

TEST_CASE("metrics on the 20-record fixture") {
    std::vector<TodoRecord> rs;
    // TaskGood: two resolved, one unresolved, two open.
    rs.push_back(record("TaskGood", Status::Resolved, 1.0, 1));
    rs.push_back(record("TaskGood", Status::Resolved, 2.5, 2));
    rs.push_back(record("TaskGood", Status::RemovedUnresolved));
    for (int i = 0; i < 2; ++i) rs.push_back(record("TaskGood", Status::Open));
    // TaskBad: one resolved, four open.
    rs.push_back(record("TaskBad", Status::Resolved, 10.0, 3));
    for (int i = 0; i < 4; ++i) rs.push_back(record("TaskBad", Status::Open));
    // NoticeGood: one resolved, one unresolved, three open.
    rs.push_back(record("NoticeGood", Status::Resolved, 0.5, 6));
    rs.push_back(record("NoticeGood", Status::RemovedUnresolved));
    for (int i = 0; i < 3; ++i) rs.push_back(record("NoticeGood", Status::Open));
    // NoticeBad: five open.
    for (int i = 0; i < 5; ++i) rs.push_back(record("NoticeBad", Status::Open));
    REQUIRE(rs.size() == 20);

    auto rows = compute_metrics(rs);
    REQUIRE(rows.size() == 7);
    std::vector<std::string> names;
    for (const auto& m : rows) names.push_back(m.category);
    CHECK(names == std::vector<std::string>{"TaskGood", "TaskBad", "NoticeGood", "NoticeBad", "High-quality",
                                            "Low-quality", "Overall"});

    const auto& all = row(rows, "Overall");
    CHECK(all.total == 20);
    CHECK(all.removed == 6);
    CHECK(all.resolved == 4);
    CHECK(all.unresolved == 2);
    CHECK(*all.resolved_pct == Catch::Approx(4.0 / 20.0).margin(1e-12));
    CHECK(*all.unresolved_pct == Catch::Approx(2.0 / 6.0).margin(1e-12));
    CHECK(*all.mean_time_interval_days == Catch::Approx(3.5).margin(1e-9));
    CHECK(*all.mean_commits == Catch::Approx(3.0).margin(1e-9));

    const auto& tg = row(rows, "TaskGood");
    CHECK(tg.total == 5);
    CHECK(tg.removed == 3);
    CHECK(*tg.resolved_pct == Catch::Approx(0.4).margin(1e-12));
    CHECK(*tg.unresolved_pct == Catch::Approx(1.0 / 3.0).margin(1e-12));
    CHECK(*tg.mean_time_interval_days == Catch::Approx(1.75).margin(1e-9));
    CHECK(*tg.mean_commits == Catch::Approx(1.5).margin(1e-9));

    const auto& tb = row(rows, "TaskBad");
    CHECK(*tb.unresolved_pct == 0.0);
    CHECK(*tb.mean_time_interval_days == Catch::Approx(10.0).margin(1e-9));

    const auto& nb = row(rows, "NoticeBad");
    CHECK(nb.total == 5);
    CHECK(*nb.resolved_pct == 0.0);
    CHECK_FALSE(nb.unresolved_pct);
    CHECK_FALSE(nb.mean_time_interval_days);
    CHECK_FALSE(nb.mean_commits);

    const auto& high = row(rows, "High-quality");
    CHECK(high.total == 10);
    CHECK(high.resolved == 3);
    CHECK(*high.unresolved_pct == Catch::Approx(2.0 / 5.0).margin(1e-12));
    CHECK(*high.mean_time_interval_days == Catch::Approx(4.0 / 3.0).margin(1e-9));
    CHECK(*high.mean_commits == Catch::Approx(3.0).margin(1e-9));

    const auto& low = row(rows, "Low-quality");
    CHECK(low.total == 10);
    CHECK(*low.resolved_pct == Catch::Approx(0.1).margin(1e-12));

    CHECK(metrics_csv_row(all) == "Overall,20,6,4,2,20.00,33.33,3.50,3.00\n");
    CHECK(metrics_csv_row(nb) == "NoticeBad,5,0,0,0,0.00,,,\n");
}

TEST_CASE("count invariants hold for every group") {
    std::mt19937_64 rng(17);
    for (int round = 0; round < 100; ++round) {
        std::vector<TodoRecord> rs;
        auto n = 1 + rng() % 30;
        for (std::size_t i = 0; i < n; ++i) {
            auto cat = classify::kCategories[rng() % 4];
            auto st = static_cast<Status>(rng() % 3);
            rs.push_back(st == Status::Resolved ? record(cat, st, static_cast<double>(rng() % 100), 1 + rng() % 9)
                                                : record(cat, st));
        }
        for (auto by : {GroupBy::Category, GroupBy::Form}) {
            auto rows = compute_metrics(rs, by);
            std::size_t sum_total = 0;
            std::size_t sum_removed = 0;
            for (const auto& m : rows) {
                CHECK(m.resolved + m.unresolved == m.removed);
                CHECK(m.removed <= m.total);
                CHECK(m.unresolved_pct.has_value() == (m.removed > 0));
            }
            std::size_t groups = by == GroupBy::Category ? 4 : 2;
            for (std::size_t g = 0; g < groups; ++g) {
                sum_total += rows[g].total;
                sum_removed += rows[g].removed;
            }
            CHECK(sum_total == rows.back().total);
            CHECK(sum_removed == rows.back().removed);
            if (by == GroupBy::Category) {
                CHECK(rows[4].total + rows[5].total == rows.back().total);
                CHECK(rows[4].resolved + rows[5].resolved == rows.back().resolved);
            }
        }
    }
    CHECK(compute_metrics({}).empty());
}

TEST_CASE("finalize: one day apart is an interval of 1.0") {
    std::vector<CommitSummary> commits(2);
    commits[0].commit_id = "a";
    commits[0].author_time = 1000;
    commits[1].commit_id = "b";
    commits[1].parent_ids = {"a"};
    commits[1].author_time = 1000 + 86400;
    commits[1].message = "Add retries";
    commits[1].files = {{"A.java", "A.java", {{1, 1, 1, 3, 3}}}};
    CommitGraph g(commits);
    auto rs = match_pairs({ev(EventKind::Introduced, "a", "// TODO add retries", 1000)},
                          {ev(EventKind::Eliminated, "b", "// TODO add retries", 1000 + 86400)}, g);
    std::unordered_map<std::string, const CommitSummary*> by_id{{"a", &commits[0]}, {"b", &commits[1]}};
    finalize_records(rs, g, by_id, {});
    REQUIRE(rs[0].status == Status::Resolved);
    CHECK(*rs[0].time_interval_days == 1.0);
    CHECK(*rs[0].commits_between == 1);
    rs[0].verdict = verdict_for("TaskGood");
    CHECK(*row(compute_metrics(rs), "Overall").mean_time_interval_days == 1.0);
}

TEST_CASE("fixture lifecycle: statuses and positive path lengths") {
    auto mined = testing::mine_repo(testing::fixture_repo());
    auto [intro, elim] = split(mined.events);
    CommitGraph g(mined.commits);
    auto rs = match_pairs(intro, elim, g);
    std::unordered_map<std::string, const CommitSummary*> by_id;
    for (const auto& c : mined.commits) by_id[c.commit_id] = &c;
    finalize_records(rs, g, by_id, {});
    std::map<std::string, int> statuses;
    for (const auto& r : rs) {
        ++statuses[std::string(to_string(r.status))];
        if (r.elim) CHECK(*r.commits_between >= 1);
        if (r.intro.file_path == "src/Util.java" && r.elim) CHECK(r.status == Status::RemovedUnresolved);
    }
    CHECK(statuses["Resolved"] == 4);
    CHECK(statuses["RemovedUnresolved"] == 1);
    CHECK(statuses["Open"] == 4);
}

TEST_CASE("record JSON round-trip") {
    auto r = record("NoticeGood", Status::Resolved, 2.0, 3);
    r.elim = ev(EventKind::Eliminated, "d", "// TODO x", 9);
    r.removal_rule = "default";
    r.low_confidence = true;
    auto back = record_from_json(json::parse(to_json(r).dump()));
    CHECK(back.intro == r.intro);
    CHECK(back.elim == r.elim);
    CHECK(back.status == r.status);
    CHECK(back.time_interval_days == r.time_interval_days);
    CHECK(back.commits_between == r.commits_between);
    CHECK(back.low_confidence);
    CHECK(classify::category_of(back.verdict) == "NoticeGood");
    CHECK_THROWS_AS(status_from_string("Closed"), DataError);
}
