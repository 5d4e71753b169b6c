// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The todolens Authors

#include "todolens/miner.hpp"

#include "todolens/comment_scanner.hpp"
#include "todolens/error.hpp"
#include "todolens/normalizer.hpp"
#include "todolens/subprocess.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <tuple>
#include <unordered_map>

namespace todolens::mining {
namespace {

constexpr char kRecordSep = '\x1e';
constexpr char kFieldSep = '\x1f';
constexpr char kHeaderEnd = '\x1d';

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n')) s.remove_suffix(1);
    return s;
}

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

// Comment text with markers removed, for deciding where a fold stops.
std::string_view comment_body(std::string_view text) {
    text = trim(text);
    while (!text.empty() && (text.front() == '/' || text.front() == '*')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == '/' || text.back() == '*')) text.remove_suffix(1);
    return trim(text);
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    for (;;) {
        auto next = s.find(sep, pos);
        out.emplace_back(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return out;
}

std::vector<std::string> git_base(const std::filesystem::path& repo) {
    return {"git",
            "-C",
            repo.string(),
            "-c",
            "core.quotepath=off",
            "-c",
            "diff.noprefix=false",
            "-c",
            "diff.mnemonicPrefix=false",
            "-c",
            "log.showSignature=false"};
}

SpawnOptions git_env(const std::filesystem::path& repo) {
    SpawnOptions opts;
    // Keep git from discovering an enclosing repository.
    opts.env.emplace_back("GIT_CEILING_DIRECTORIES", repo.parent_path().string());
    opts.env.emplace_back("LC_ALL", "C");
    opts.env.emplace_back("GIT_PAGER", "cat");
    return opts;
}

CaptureResult run_git(const std::filesystem::path& repo, std::initializer_list<std::string> args) {
    auto argv = git_base(repo);
    argv.insert(argv.end(), args.begin(), args.end());
    return run_capture(argv, git_env(repo));
}

bool wanted_path(const std::string& path, const MiningConfig& config) {
    if (config.extensions.empty()) return true;
    return std::any_of(config.extensions.begin(), config.extensions.end(),
                       [&](const std::string& ext) { return ends_with(path, ext); });
}

struct SideLine {
    const DiffLine* line;
    LineScan scan;
};

struct Located {
    std::size_t hunk;
    std::size_t line;
    TodoEvent event;
};

// Finds TODO comments on lines carrying `marker` within one side of a hunk.
void scan_side(const Hunk& hunk, std::size_t hunk_index, LineMarker marker, const FileDiff& file,
               const CommitRecord& commit, const std::string& repo_id, const MiningConfig& config,
               std::vector<Located>& out) {
    JavaCommentScanner scanner;
    std::vector<SideLine> side;
    std::vector<std::size_t> position; // index in hunk.lines
    for (std::size_t i = 0; i < hunk.lines.size(); ++i) {
        const auto& l = hunk.lines[i];
        if (l.marker != LineMarker::Context && l.marker != marker) continue;
        side.push_back({&l, scanner.scan(l.text)});
        position.push_back(i);
    }

    for (std::size_t i = 0; i < side.size(); ++i) {
        const auto& sl = side[i];
        if (sl.line->marker != marker) continue;
        const CommentSpan* hit = nullptr;
        for (const auto& span : sl.scan.comments) {
            auto text = std::string_view(sl.line->text).substr(span.begin, span.end - span.begin);
            if (contains_todo(text, config.todo_case_sensitive)) {
                hit = &span;
                break;
            }
        }
        if (!hit) continue;

        std::string raw(trim(std::string_view(sl.line->text).substr(hit->begin, hit->end - hit->begin)));
        bool open_block = hit->block && hit->continues;
        bool line_comment = !hit->block;
        for (std::size_t j = i + 1; j < side.size() && (open_block || line_comment); ++j) {
            const auto& next = side[j];
            if (next.line->marker != marker || next.scan.comments.empty()) break;
            const auto& span = next.scan.comments.front();
            auto text = trim(std::string_view(next.line->text).substr(span.begin, span.end - span.begin));
            if (open_block) {
                if (!span.from_previous) break;
            } else if (span.block || next.scan.has_code || !text.starts_with("//")) {
                break;
            }
            if (contains_todo(text, config.todo_case_sensitive)) break;
            auto body = comment_body(text);
            if (body.empty() || body.front() == '@') break;
            raw += '\n';
            raw += text;
            if (open_block && !span.continues) break;
        }

        TodoEvent e;
        e.kind = marker == LineMarker::Added ? EventKind::Introduced : EventKind::Eliminated;
        e.repo_id = repo_id;
        e.commit_id = commit.commit_id;
        e.file_path = marker == LineMarker::Added ? file.new_path : file.old_path;
        e.raw_comment = std::move(raw);
        e.line_no = marker == LineMarker::Added ? sl.line->new_line : sl.line->old_line;
        e.author_time = commit.author_time;
        out.push_back({hunk_index, position[i], std::move(e)});
    }
}

bool non_letter_codepoint(char32_t cp) {
    return (cp >= 0x80 && cp <= 0xBF) || cp == 0xD7 || cp == 0xF7 || (cp >= 0x300 && cp <= 0x36F) ||
           (cp >= 0x2000 && cp <= 0x2BFF) || (cp >= 0x3000 && cp <= 0x303F) || (cp >= 0xE000 && cp <= 0xF8FF) ||
           (cp >= 0xFE30 && cp <= 0xFE6F) || (cp >= 0xFF00 && cp <= 0xFF20) || (cp >= 0xFF3B && cp <= 0xFF40) ||
           (cp >= 0xFF5B && cp <= 0xFF65) || (cp >= 0x1F000 && cp <= 0x1FAFF);
}

} // namespace

void MiningConfig::validate() const {
    if (!(english_ascii_ratio_threshold >= 0.0 && english_ascii_ratio_threshold <= 1.0)) {
        throw InvalidArgument("english_ascii_ratio_threshold must be within [0, 1]");
    }
}

std::string_view to_string(EventKind kind) {
    return kind == EventKind::Introduced ? "Introduced" : "Eliminated";
}

EventKind event_kind_from_string(std::string_view s) {
    if (s == "Introduced") return EventKind::Introduced;
    if (s == "Eliminated") return EventKind::Eliminated;
    throw DataError("unknown event kind '" + std::string(s) + "'");
}

void topological_order(std::vector<CommitRecord>& commits) {
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < commits.size(); ++i) index.emplace(commits[i].commit_id, i);

    std::vector<int> pending(commits.size(), 0);
    std::vector<std::vector<std::size_t>> children(commits.size());
    for (std::size_t i = 0; i < commits.size(); ++i) {
        std::set<std::string> seen;
        for (const auto& p : commits[i].parent_ids) {
            auto it = index.find(p);
            if (it == index.end() || !seen.insert(p).second) continue;
            ++pending[i];
            children[it->second].push_back(i);
        }
    }
    auto by_id = [&](std::size_t a, std::size_t b) { return commits[a].commit_id > commits[b].commit_id; };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(by_id)> ready(by_id);
    for (std::size_t i = 0; i < commits.size(); ++i) {
        if (pending[i] == 0) ready.push(i);
    }
    std::vector<std::size_t> order;
    order.reserve(commits.size());
    while (!ready.empty()) {
        auto i = ready.top();
        ready.pop();
        order.push_back(i);
        for (auto c : children[i]) {
            if (--pending[c] == 0) ready.push(c);
        }
    }
    if (order.size() != commits.size()) throw DataError("commit history contains a cycle");
    std::vector<CommitRecord> sorted;
    sorted.reserve(commits.size());
    for (auto i : order) sorted.push_back(std::move(commits[i]));
    commits = std::move(sorted);
}

std::string head_commit(const std::filesystem::path& repo_path) {
    std::error_code ec;
    auto repo = std::filesystem::weakly_canonical(repo_path, ec);
    if (ec || !std::filesystem::is_directory(repo)) {
        throw NotARepositoryError(repo_path.string() + ": not a git repository");
    }
    if (run_git(repo, {"rev-parse", "--git-dir"}).exit_code != 0) {
        throw NotARepositoryError(repo_path.string() + ": not a git repository");
    }
    auto head = run_git(repo, {"rev-parse", "--verify", "-q", "HEAD^{commit}"});
    if (head.exit_code != 0) return {};
    return std::string(trim(head.out));
}

std::vector<CommitRecord> walk_history(const std::filesystem::path& repo_path, const MiningConfig& config,
                                       MiningDiagnostics* diag) {
    config.validate();
    std::error_code ec;
    auto repo = std::filesystem::weakly_canonical(repo_path, ec);
    if (ec || !std::filesystem::is_directory(repo)) {
        throw NotARepositoryError(repo_path.string() + ": not a git repository");
    }
    auto probe = run_git(repo, {"rev-parse", "--git-dir"});
    if (probe.exit_code != 0) throw NotARepositoryError(repo_path.string() + ": not a git repository");

    auto head = run_git(repo, {"rev-parse", "--verify", "-q", "HEAD^{commit}"});
    if (head.exit_code != 0) return {};

    std::string format = std::string("--format=") + kRecordSep + "%H" + kFieldSep + "%P" + kFieldSep + "%at" +
                         kFieldSep + "%B" + kHeaderEnd;
    auto log = run_git(repo, {"log", "HEAD", "--no-color", "--no-ext-diff", "--no-textconv", "-M",
                              "--diff-merges=first-parent", "-p", format});
    if (log.exit_code != 0) {
        throw GitError(repo_path.string() + ": git log failed: " + std::string(trim(log.err)));
    }

    MiningDiagnostics local;
    MiningDiagnostics& d = diag ? *diag : local;
    std::vector<CommitRecord> commits;
    std::string_view text = log.out;
    std::size_t pos = text.find(kRecordSep);
    while (pos != std::string_view::npos) {
        auto next = text.find(kRecordSep, pos + 1);
        auto chunk = text.substr(pos + 1, next == std::string_view::npos ? std::string_view::npos : next - pos - 1);
        pos = next;

        auto header_end = chunk.find(kHeaderEnd);
        if (header_end == std::string_view::npos) throw GitError("unexpected git log output");
        auto fields = split(chunk.substr(0, header_end), kFieldSep);
        if (fields.size() != 4) throw GitError("unexpected git log header");

        CommitRecord c;
        c.commit_id = fields[0];
        for (auto& p : split(fields[1], ' ')) {
            if (!p.empty()) c.parent_ids.push_back(p);
        }
        try {
            c.author_time = std::stoll(fields[2]);
        } catch (const std::exception&) {
            throw GitError("bad author time for commit " + c.commit_id);
        }
        c.message = fields[3];
        while (!c.message.empty() && (c.message.back() == '\n' || c.message.back() == ' ')) c.message.pop_back();
        c.file_diffs = parse_unified_diff(chunk.substr(header_end + 1), &d.diff);
        commits.push_back(std::move(c));
    }
    topological_order(commits);
    return commits;
}

std::vector<TodoEvent> extract_todo_events(const CommitRecord& commit, const std::string& repo_id,
                                           const MiningConfig& config, MiningDiagnostics* diag) {
    std::vector<TodoEvent> events;
    for (const auto& file : commit.file_diffs) {
        if (file.binary) {
            if (diag) ++diag->binary_files;
            continue;
        }
        bool want_new = !file.is_deleted() && wanted_path(file.new_path, config);
        bool want_old = !file.is_added() && wanted_path(file.old_path, config);
        if (!want_new && !want_old) {
            if (diag) ++diag->skipped_files;
            continue;
        }
        std::vector<Located> found;
        for (std::size_t h = 0; h < file.hunks.size(); ++h) {
            if (want_new) scan_side(file.hunks[h], h, LineMarker::Added, file, commit, repo_id, config, found);
            if (want_old) scan_side(file.hunks[h], h, LineMarker::Removed, file, commit, repo_id, config, found);
        }
        std::stable_sort(found.begin(), found.end(), [](const Located& a, const Located& b) {
            return std::tie(a.hunk, a.line) < std::tie(b.hunk, b.line);
        });
        for (auto& f : found) events.push_back(std::move(f.event));
    }
    return events;
}

double ascii_letter_ratio(std::string_view utf8) {
    std::size_t ascii = 0;
    std::size_t alpha = 0;
    std::size_t i = 0;
    while (i < utf8.size()) {
        auto b = static_cast<unsigned char>(utf8[i]);
        if (b < 0x80) {
            if ((b >= 'A' && b <= 'Z') || (b >= 'a' && b <= 'z')) {
                ++ascii;
                ++alpha;
            }
            ++i;
            continue;
        }
        int len = (b & 0xE0) == 0xC0 ? 2 : (b & 0xF0) == 0xE0 ? 3 : (b & 0xF8) == 0xF0 ? 4 : 0;
        if (len == 0 || i + len > utf8.size()) {
            ++i; // stray byte
            continue;
        }
        char32_t cp = b & (0x7F >> len);
        bool valid = true;
        for (int k = 1; k < len; ++k) {
            auto cb = static_cast<unsigned char>(utf8[i + k]);
            if ((cb & 0xC0) != 0x80) {
                valid = false;
                break;
            }
            cp = (cp << 6) | (cb & 0x3F);
        }
        i += valid ? len : 1;
        if (valid && !non_letter_codepoint(cp)) ++alpha;
    }
    return alpha == 0 ? 1.0 : static_cast<double>(ascii) / static_cast<double>(alpha);
}

std::vector<TodoEvent> filter_events(const std::vector<TodoEvent>& events,
                                     const std::unordered_set<std::string>& merge_commit_ids,
                                     const MiningConfig& config, MiningDiagnostics* diag) {
    config.validate();
    std::vector<TodoEvent> out;
    std::set<std::tuple<EventKind, std::string, std::string>> seen;
    for (const auto& e : events) {
        if (config.drop_merge_commits && merge_commit_ids.count(e.commit_id)) {
            if (diag) ++diag->dropped_merge;
            continue;
        }
        if (config.drop_non_english && ascii_letter_ratio(e.raw_comment) < config.english_ascii_ratio_threshold) {
            if (diag) ++diag->dropped_non_english;
            continue;
        }
        if (config.dedup) {
            auto key = std::make_tuple(e.kind, text::join_tokens(text::normalize_todo(e.raw_comment).tokens),
                                       e.commit_id);
            if (!seen.insert(std::move(key)).second) {
                if (diag) ++diag->dropped_duplicate;
                continue;
            }
        }
        out.push_back(e);
    }
    return out;
}

std::string render_patch(const CommitRecord& commit) {
    std::string out;
    for (const auto& f : commit.file_diffs) {
        out += "diff --git a/" + f.old_path + " b/" + f.new_path + "\n";
        out += "--- " + (f.is_added() ? std::string(kDevNull) : "a/" + f.old_path) + "\n";
        out += "+++ " + (f.is_deleted() ? std::string(kDevNull) : "b/" + f.new_path) + "\n";
        for (const auto& h : f.hunks) {
            out += "@@ -" + std::to_string(h.old_start) + "," + std::to_string(h.old_count) + " +" +
                   std::to_string(h.new_start) + "," + std::to_string(h.new_count) + " @@\n";
            for (const auto& l : h.lines) {
                out += l.marker == LineMarker::Added ? '+' : l.marker == LineMarker::Removed ? '-' : ' ';
                out += l.text;
                out += '\n';
            }
        }
    }
    return out;
}

CommitSummary summarize(const CommitRecord& commit, bool with_diff_tokens) {
    CommitSummary s;
    s.commit_id = commit.commit_id;
    s.parent_ids = commit.parent_ids;
    s.author_time = commit.author_time;
    s.message = commit.message;
    for (const auto& f : commit.file_diffs) {
        FileSummary fs{f.old_path, f.new_path, {}};
        for (const auto& h : f.hunks) {
            HunkSummary hs{h.old_start, h.old_count, h.new_start, h.new_count, 0};
            JavaCommentScanner scanner;
            for (const auto& l : h.lines) {
                if (l.marker == LineMarker::Removed) continue;
                auto scan = scanner.scan(l.text);
                if (l.marker == LineMarker::Added && scan.has_code) ++hs.added_code;
            }
            fs.hunks.push_back(hs);
        }
        s.files.push_back(std::move(fs));
    }
    if (with_diff_tokens) s.diff_tokens = text::normalize_diff(render_patch(commit)).tokens;
    return s;
}

ordered_json to_json(const TodoEvent& e) {
    ordered_json j;
    j["kind"] = to_string(e.kind);
    j["repo_id"] = e.repo_id;
    j["commit_id"] = e.commit_id;
    j["file_path"] = e.file_path;
    j["raw_comment"] = e.raw_comment;
    j["line_no"] = e.line_no;
    j["author_time"] = e.author_time;
    return j;
}

TodoEvent event_from_json(const json& j) {
    if (!j.is_object()) throw DataError("event record must be a JSON object");
    TodoEvent e;
    e.kind = event_kind_from_string(j.at("kind").get<std::string>());
    e.repo_id = j.at("repo_id").get<std::string>();
    e.commit_id = j.at("commit_id").get<std::string>();
    e.file_path = j.at("file_path").get<std::string>();
    e.raw_comment = j.at("raw_comment").get<std::string>();
    e.line_no = j.at("line_no").get<int>();
    e.author_time = j.at("author_time").get<std::int64_t>();
    if (e.line_no < 1) throw DataError("line_no must be >= 1");
    if (e.commit_id.empty() || e.file_path.empty()) throw DataError("commit_id and file_path must be non-empty");
    return e;
}

ordered_json to_json(const CommitSummary& c) {
    ordered_json j;
    j["commit_id"] = c.commit_id;
    j["parent_ids"] = c.parent_ids;
    j["author_time"] = c.author_time;
    j["message"] = c.message;
    ordered_json files = ordered_json::array();
    for (const auto& f : c.files) {
        ordered_json fj;
        fj["old_path"] = f.old_path;
        fj["new_path"] = f.new_path;
        ordered_json hunks = ordered_json::array();
        for (const auto& h : f.hunks) {
            ordered_json hj;
            hj["old_start"] = h.old_start;
            hj["old_count"] = h.old_count;
            hj["new_start"] = h.new_start;
            hj["new_count"] = h.new_count;
            hj["added_code"] = h.added_code;
            hunks.push_back(std::move(hj));
        }
        fj["hunks"] = std::move(hunks);
        files.push_back(std::move(fj));
    }
    j["files"] = std::move(files);
    if (c.diff_tokens) j["diff_tokens"] = *c.diff_tokens;
    return j;
}

CommitSummary commit_summary_from_json(const json& j) {
    if (!j.is_object()) throw DataError("commit record must be a JSON object");
    CommitSummary c;
    c.commit_id = j.at("commit_id").get<std::string>();
    c.parent_ids = j.at("parent_ids").get<std::vector<std::string>>();
    c.author_time = j.at("author_time").get<std::int64_t>();
    c.message = j.value("message", std::string{});
    if (auto it = j.find("files"); it != j.end()) {
        for (const auto& fj : *it) {
            FileSummary f;
            f.old_path = fj.at("old_path").get<std::string>();
            f.new_path = fj.at("new_path").get<std::string>();
            for (const auto& hj : fj.at("hunks")) {
                f.hunks.push_back({hj.at("old_start").get<int>(), hj.at("old_count").get<int>(),
                                   hj.at("new_start").get<int>(), hj.at("new_count").get<int>(),
                                   hj.at("added_code").get<int>()});
            }
            c.files.push_back(std::move(f));
        }
    }
    if (auto it = j.find("diff_tokens"); it != j.end()) c.diff_tokens = it->get<std::vector<std::string>>();
    return c;
}

} // namespace todolens::mining
