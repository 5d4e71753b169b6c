// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The todolens Authors

#include "todolens/bridge.hpp"
#include "todolens/classifier.hpp"
#include "todolens/config.hpp"
#include "todolens/error.hpp"
#include "todolens/io.hpp"
#include "todolens/lexical.hpp"
#include "todolens/lifecycle.hpp"
#include "todolens/miner.hpp"
#include "todolens/normalizer.hpp"
#include "todolens/report.hpp"
#include "todolens/stats.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <functional>
#include <iostream>
#include <iterator>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_map>

namespace fs = std::filesystem;
using namespace todolens;

namespace {

struct Globals {
    std::optional<std::uint64_t> seed;
    std::string config_path;
    std::string model;
    std::string model_path;
    std::string bridge_cmd;
    bool quiet = false;
};

// Accumulates the manifest of one invocation.
class Run {
public:
    Run(std::vector<std::string> command, Config config) : command_(std::move(command)), config_(std::move(config)) {}

    const Config& config() const { return config_; }

    std::string read_input(const std::string& path) {
        std::string text;
        if (path == "-") {
            text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
        } else {
            text = read_file(path);
        }
        inputs_.push_back({path == "-" ? "<stdin>" : fs::path(path).generic_string(), sha256_hex(text)});
        return text;
    }

    void add_repository(const std::string& path, std::string head) { repos_.push_back({path, std::move(head)}); }

    void write_output(const std::string& path, const std::string& contents) {
        if (path == "-") {
            std::cout << contents;
            std::cout.flush();
            return;
        }
        write_file(path, contents);
        outputs_.push_back({fs::path(path).generic_string(), sha256_hex(contents)});
    }

    void record_output(const fs::path& path) { outputs_.push_back({path.generic_string(), sha256_file(path)}); }

    // One manifest next to each file output, or a single one at `shared` for
    // outputs that form a set.
    void finish(const std::optional<fs::path>& shared = std::nullopt) const {
        if (outputs_.empty()) return;
        RunManifest m = make_manifest(command_, config_, {}, {});
        m.repositories = repos_;
        m.inputs = inputs_;
        m.outputs = outputs_;
        if (shared) {
            write_manifest(manifest_path_for(*shared), m);
            return;
        }
        for (const auto& o : outputs_) {
            if (fs::is_regular_file(o.path)) write_manifest(manifest_path_for(o.path), m);
        }
    }

private:
    std::vector<std::string> command_;
    Config config_;
    std::vector<RepoDigest> repos_;
    std::vector<FileDigest> inputs_;
    std::vector<FileDigest> outputs_;
};

template <typename T, typename Parse>
std::vector<T> parse_jsonl(const std::string& text, const std::string& source, Parse parse) {
    std::vector<T> out;
    std::istringstream in(text);
    read_jsonl(in, source, [&](const json& j, std::size_t) { out.push_back(parse(j)); });
    return out;
}

std::string jsonl(const std::vector<ordered_json>& rows) {
    std::string out;
    for (const auto& r : rows) out += to_jsonl_line(r);
    return out;
}

using Classifier = std::function<classify::Verdict(const text::NormalizedTodo&, const text::NormalizedDiff*)>;

Classifier make_classifier(const Config& cfg, const std::string& model_path) {
    const auto& model = cfg.classifier.model;
    if (model == "pos") {
        return [](const text::NormalizedTodo& t, const text::NormalizedDiff* d) { return classify::classify_pos(t, d); };
    }
    if (model == "rules") {
        int n = cfg.classifier.min_content_tokens;
        return [n](const text::NormalizedTodo& t, const text::NormalizedDiff* d) {
            return classify::classify_rules(t, d, n);
        };
    }
    if (model == "lexical") {
        if (model_path.empty()) throw UsageError("--model lexical needs --model-path (a bundle written by train)");
        auto bundle = std::make_shared<classify::LexicalBundle>(classify::load_bundle(model_path));
        return [bundle](const text::NormalizedTodo& t, const text::NormalizedDiff* d) {
            static const text::NormalizedDiff empty;
            return classify::predict_lexical(bundle->form, bundle->quality, t, d ? *d : empty);
        };
    }
    if (cfg.classifier.bridge_cmd.empty()) {
        throw UsageError("--model bridge needs --bridge-cmd or TODOLENS_BRIDGE_CMD");
    }
    auto handle = std::make_shared<classify::BridgeHandle>(
        cfg.classifier.bridge_cmd, std::chrono::milliseconds(cfg.classifier.bridge_timeout_ms));
    return [handle](const text::NormalizedTodo& t, const text::NormalizedDiff* d) {
        static const text::NormalizedDiff empty;
        return classify::classify_bridge(*handle, t, d ? *d : empty);
    };
}

classify::Verdict classify_event(const Classifier& classifier, const mining::TodoEvent& e,
                                 const std::unordered_map<std::string, text::NormalizedDiff>& diffs) {
    auto todo = text::normalize_todo(e.raw_comment);
    auto it = diffs.find(e.commit_id);
    auto verdict = classifier(todo, it == diffs.end() ? nullptr : &it->second);
    return classify::tag_subcategory(todo, std::move(verdict));
}

std::unordered_map<std::string, text::NormalizedDiff> diff_index(const std::vector<mining::CommitSummary>& commits) {
    std::unordered_map<std::string, text::NormalizedDiff> out;
    for (const auto& c : commits) {
        if (c.diff_tokens) out[c.commit_id] = text::NormalizedDiff{*c.diff_tokens, false};
    }
    return out;
}

std::vector<mining::CommitSummary> load_commits(Run& run, const std::vector<std::string>& paths) {
    std::vector<mining::CommitSummary> out;
    std::set<std::string> seen;
    for (const auto& p : paths) {
        auto text = run.read_input(p);
        for (auto& c : parse_jsonl<mining::CommitSummary>(text, p, mining::commit_summary_from_json)) {
            if (seen.insert(c.commit_id).second) out.push_back(std::move(c));
        }
    }
    return out;
}

std::string default_commits_path(const std::string& events_path) {
    const std::string suffix = ".jsonl";
    if (events_path.size() > suffix.size() && events_path.ends_with(suffix)) {
        return events_path.substr(0, events_path.size() - suffix.size()) + ".commits.jsonl";
    }
    return events_path + ".commits.jsonl";
}

lifecycle::GroupBy group_by_from_string(const std::string& s) {
    if (s == "category") return lifecycle::GroupBy::Category;
    if (s == "form") return lifecycle::GroupBy::Form;
    if (s == "subcategory") return lifecycle::GroupBy::Subcategory;
    throw UsageError("unknown grouping '" + s + "'");
}

using IntroKey = std::tuple<std::string, std::string, std::string, int>;
IntroKey intro_key(const mining::TodoEvent& e) { return {e.repo_id, e.commit_id, e.file_path, e.line_no}; }

void log(const Globals& g, const std::string& msg) {
    if (!g.quiet) std::cerr << "todolens: " << msg << "\n";
}

// --- subcommands -----------------------------------------------------------

struct MineArgs {
    std::vector<std::string> repos;
    std::string out = "events.jsonl";
    std::string commits;
    std::string repo_id;
    bool no_diff_tokens = false;
};

void cmd_mine(Run& run, const Globals& g, const MineArgs& a) {
    if (a.out == "-") throw UsageError("mine needs a file for --out");
    if (!a.repo_id.empty() && a.repos.size() != 1) throw UsageError("--repo-id needs exactly one repository");
    const auto& cfg = run.config().mining;
    std::vector<ordered_json> event_rows, commit_rows;
    std::set<std::string> seen_commits;
    mining::MiningDiagnostics diag;
    for (const auto& repo : a.repos) {
        std::string repo_id = a.repo_id;
        if (repo_id.empty()) repo_id = fs::weakly_canonical(repo).filename().string();
        run.add_repository(fs::path(repo).generic_string(), mining::head_commit(repo));
        auto commits = mining::walk_history(repo, cfg, &diag);
        std::vector<mining::TodoEvent> events;
        std::unordered_set<std::string> merges;
        for (const auto& c : commits) {
            if (c.is_merge()) merges.insert(c.commit_id);
            auto es = mining::extract_todo_events(c, repo_id, cfg, &diag);
            events.insert(events.end(), es.begin(), es.end());
            if (seen_commits.insert(c.commit_id).second) {
                commit_rows.push_back(mining::to_json(mining::summarize(c, !a.no_diff_tokens)));
            }
        }
        for (const auto& e : mining::filter_events(events, merges, cfg, &diag)) event_rows.push_back(mining::to_json(e));
        log(g, repo + ": " + std::to_string(commits.size()) + " commits");
    }
    std::string commits_path = a.commits.empty() ? default_commits_path(a.out) : a.commits;
    run.write_output(a.out, jsonl(event_rows));
    run.write_output(commits_path, jsonl(commit_rows));
    log(g, std::to_string(event_rows.size()) + " events (dropped: " + std::to_string(diag.dropped_merge) + " merge, " +
               std::to_string(diag.dropped_non_english) + " non-English, " +
               std::to_string(diag.dropped_duplicate) + " duplicate)");
    run.finish();
}

struct ClassifyArgs {
    std::string events = "-";
    std::vector<std::string> commits;
    std::string out = "-";
};

void cmd_classify(Run& run, const Globals& g, const ClassifyArgs& a) {
    auto events = parse_jsonl<mining::TodoEvent>(run.read_input(a.events), a.events, mining::event_from_json);
    auto diffs = diff_index(load_commits(run, a.commits));
    auto classifier = make_classifier(run.config(), g.model_path);
    std::vector<ordered_json> rows;
    for (const auto& e : events) {
        if (e.kind != mining::EventKind::Introduced) continue;
        rows.push_back(report::to_json(report::VerdictRecord{e, classify_event(classifier, e, diffs)}));
    }
    run.write_output(a.out, jsonl(rows));
    log(g, std::to_string(rows.size()) + " verdicts");
    run.finish();
}

struct LifecycleArgs {
    std::string events;
    std::vector<std::string> commits;
    std::string verdicts;
    std::string overrides;
    std::string out = "-";
    std::string metrics;
    std::string group_by = "category";
};

void cmd_lifecycle(Run& run, const Globals& g, const LifecycleArgs& a) {
    const auto& cfg = run.config();
    auto events = parse_jsonl<mining::TodoEvent>(run.read_input(a.events), a.events, mining::event_from_json);
    auto commits = load_commits(run, a.commits);
    lifecycle::CommitGraph graph(commits);

    std::vector<mining::TodoEvent> intro, elim;
    for (auto& e : events) (e.kind == mining::EventKind::Introduced ? intro : elim).push_back(std::move(e));
    auto records = lifecycle::match_pairs(intro, elim, graph);

    if (!a.verdicts.empty()) {
        std::map<IntroKey, classify::Verdict> by_key;
        auto text = run.read_input(a.verdicts);
        for (auto& v : parse_jsonl<report::VerdictRecord>(text, a.verdicts, report::verdict_record_from_json)) {
            by_key[intro_key(v.intro)] = std::move(v.verdict);
        }
        for (auto& r : records) {
            auto it = by_key.find(intro_key(r.intro));
            if (it == by_key.end()) {
                throw DataError(a.verdicts + ": no verdict for " + r.intro.commit_id + " " + r.intro.file_path + ":" +
                                std::to_string(r.intro.line_no));
            }
            r.verdict = it->second;
        }
    } else {
        auto classifier = make_classifier(cfg, g.model_path);
        auto diffs = diff_index(commits);
        for (auto& r : records) r.verdict = classify_event(classifier, r.intro, diffs);
    }

    lifecycle::Overrides overrides;
    std::string overrides_path = a.overrides.empty() ? cfg.lifecycle.overrides : a.overrides;
    if (!overrides_path.empty()) overrides = lifecycle::parse_overrides(run.read_input(overrides_path));

    std::unordered_map<std::string, const mining::CommitSummary*> by_id;
    for (const auto& c : commits) by_id[c.commit_id] = &c;
    lifecycle::finalize_records(records, graph, by_id, overrides);

    std::vector<ordered_json> rows;
    for (const auto& r : records) rows.push_back(lifecycle::to_json(r));
    run.write_output(a.out, jsonl(rows));
    if (!a.metrics.empty()) {
        run.write_output(a.metrics, report::metrics_csv(lifecycle::compute_metrics(records, group_by_from_string(a.group_by))));
    }
    log(g, std::to_string(records.size()) + " lifecycle records");
    run.finish();
}

std::vector<lifecycle::TodoRecord> read_records(Run& run, const std::string& path) {
    return parse_jsonl<lifecycle::TodoRecord>(run.read_input(path), path, lifecycle::record_from_json);
}

struct StatsArgs {
    std::string records = "-";
    std::string out = "-";
    std::optional<double> alpha;
};

void cmd_stats(Run& run, const Globals& g, const StatsArgs& a) {
    double alpha = a.alpha.value_or(run.config().lifecycle.alpha);
    if (!(alpha > 0.0 && alpha < 1.0)) throw UsageError("--alpha must be within (0, 1)");
    auto records = read_records(run, a.records);
    std::vector<ordered_json> rows;
    for (const auto& r : stats::run_hypotheses(records, alpha)) rows.push_back(stats::to_json(r));
    run.write_output(a.out, jsonl(rows));
    log(g, std::to_string(rows.size()) + " hypothesis tests");
    run.finish();
}

struct ReportArgs {
    std::string verdicts;
    std::string records;
    std::string stats;
    std::vector<std::string> evals;
    std::string format;
    std::string out_dir = "report";
    std::string group_by = "category";
};

void cmd_report(Run& run, const Globals& g, const ReportArgs& a) {
    auto format = report::format_from_string(a.format.empty() ? run.config().report.format : a.format);
    report::ReportInputs in;
    if (!a.verdicts.empty()) {
        auto text = run.read_input(a.verdicts);
        auto records = parse_jsonl<report::VerdictRecord>(text, a.verdicts, report::verdict_record_from_json);
        if (!records.empty()) {
            in.distribution = report::aggregate_by_repo(records);
            std::vector<classify::Verdict> verdicts;
            for (const auto& r : records) verdicts.push_back(r.verdict);
            in.subcategories = report::aggregate_subcategories(verdicts);
        }
    }
    if (!a.records.empty()) {
        auto records = read_records(run, a.records);
        if (!records.empty()) in.metrics = lifecycle::compute_metrics(records, group_by_from_string(a.group_by));
    }
    if (!a.stats.empty()) {
        in.tests = parse_jsonl<stats::StatTestResult>(run.read_input(a.stats), a.stats, stats::stat_result_from_json);
    }
    for (const auto& p : a.evals) {
        auto text = run.read_input(p);
        json j;
        try {
            j = json::parse(text);
        } catch (const json::exception& e) {
            throw DataError(p + ": " + e.what());
        }
        for (const auto& e : j.at("evaluations")) in.evals.push_back(report::eval_report_from_json(e));
    }
    if (in.empty()) throw DataError("report: every input is empty; nothing to render");
    for (const auto& p : report::emit_report(in, format, a.out_dir)) {
        run.record_output(p);
        log(g, "wrote " + p.generic_string());
    }
    run.finish(fs::path(a.out_dir) / "report");
}

struct TrainArgs {
    std::string dataset;
    std::string out;
    std::string eval_out;
    int cv = 0;
};

classify::Trainer make_trainer(const Config& cfg, const Globals& g, classify::Target target) {
    if (cfg.classifier.model == "lexical") {
        auto hp = cfg.classifier.lexical;
        return [hp, target](const std::vector<classify::LabeledExample>& train) -> classify::Predictor {
            auto model = std::make_shared<classify::LexicalModel>(classify::train_lexical(train, target, hp));
            return [model, target](const classify::LabeledExample& e) {
                auto p = classify::predict_proba(*model, e.todo, e.diff);
                classify::ProbPair flat{0.5, 0.5};
                return target == classify::Target::Form
                           ? classify::make_verdict(p, flat, classify::Source::Lexical)
                           : classify::make_verdict(flat, p, classify::Source::Lexical);
            };
        };
    }
    auto classifier = make_classifier(cfg, g.model_path);
    return [classifier](const std::vector<classify::LabeledExample>&) -> classify::Predictor {
        return [classifier](const classify::LabeledExample& e) { return classifier(e.todo, &e.diff); };
    };
}

void cmd_train(Run& run, const Globals& g, const TrainArgs& a) {
    const auto& cfg = run.config();
    bool lexical = cfg.classifier.model == "lexical";
    if (!lexical && !a.out.empty()) throw UsageError("--out writes a lexical model; only --model lexical trains");
    if (lexical && a.cv == 0 && a.out.empty()) throw UsageError("train --model lexical needs --out or --cv");
    if (a.cv == 1 || a.cv < 0) throw UsageError("--cv must be at least 2");
    auto text = run.read_input(a.dataset);
    auto dataset = parse_jsonl<classify::LabeledExample>(text, a.dataset, classify::labeled_example_from_json);
    if (dataset.empty()) throw DataError(a.dataset + ": empty dataset");

    ordered_json evaluations = ordered_json::array();
    for (auto target : {classify::Target::Form, classify::Target::Quality}) {
        report::EvalReport rep;
        rep.model = cfg.classifier.model;
        rep.target = std::string(classify::to_string(target));
        auto trainer = make_trainer(cfg, g, target);
        if (a.cv >= 2) {
            auto cv = classify::crossvalidate(dataset, a.cv, trainer, target, cfg.seed);
            rep.k = a.cv;
            rep.folds = cv.folds;
            rep.mean = cv.mean;
            rep.stdev = cv.stdev;
        } else if (!lexical) {
            auto predict = trainer(dataset);
            std::vector<classify::Verdict> predictions;
            for (const auto& e : dataset) predictions.push_back(predict(e));
            rep.k = 1;
            rep.mean = classify::evaluate(predictions, dataset, target);
            rep.folds = {rep.mean};
        } else {
            continue;
        }
        log(g, rep.target + ": accuracy " + format_fixed(rep.mean.accuracy, 4) + ", F1 " + format_fixed(rep.mean.f1, 4));
        evaluations.push_back(report::to_json(rep));
    }

    if (lexical && !a.out.empty()) {
        classify::LexicalBundle bundle{classify::train_lexical(dataset, classify::Target::Form, cfg.classifier.lexical),
                                       classify::train_lexical(dataset, classify::Target::Quality, cfg.classifier.lexical)};
        run.write_output(a.out, classify::to_json(bundle).dump(2) + "\n");
        log(g, "model written to " + a.out);
    }
    if (!evaluations.empty()) {
        ordered_json doc;
        doc["evaluations"] = std::move(evaluations);
        run.write_output(a.eval_out.empty() ? "-" : a.eval_out, doc.dump(2) + "\n");
    }
    run.finish();
}

Config resolve_config(const Globals& g, const CLI::App& app) {
    Config cfg = g.config_path.empty() ? Config{} : load_config(g.config_path);
    if (g.seed) cfg.seed = *g.seed;
    cfg.classifier.lexical.seed = cfg.seed;
    if (app.count("--model")) cfg.classifier.model = g.model;
    if (!g.bridge_cmd.empty()) cfg.classifier.bridge_cmd = g.bridge_cmd;
    if (const char* env = std::getenv("TODOLENS_BRIDGE_CMD"); env && *env) cfg.classifier.bridge_cmd = env;
    cfg.validate();
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mine, classify and track TODO comments in git history"};
    app.set_version_flag("--version", std::string(tool_version()));
    app.require_subcommand(1);

    Globals g;
    app.add_option("--seed", g.seed, "Random seed for training and cross-validation");
    app.add_option("--config", g.config_path, "TOML configuration file")->check(CLI::ExistingFile);
    app.add_option("--model", g.model, "Classifier: pos, rules, lexical or bridge")
        ->check(CLI::IsMember({"pos", "rules", "lexical", "bridge"}));
    app.add_option("--model-path", g.model_path, "Lexical model bundle written by train");
    app.add_option("--bridge-cmd", g.bridge_cmd, "Shell command starting a classifier bridge");
    app.add_flag("-q,--quiet", g.quiet, "Suppress progress messages");

    MineArgs mine;
    auto* mine_cmd = app.add_subcommand("mine", "Extract TODO events from git repositories");
    mine_cmd->add_option("repos", mine.repos, "Repository paths")->required();
    mine_cmd->add_option("-o,--out", mine.out, "Event JSONL")->capture_default_str();
    mine_cmd->add_option("--commits", mine.commits, "Commit summary JSONL (default: <out>.commits.jsonl)");
    mine_cmd->add_option("--repo-id", mine.repo_id, "Repository id (default: directory name)");
    mine_cmd->add_flag("--no-diff-tokens", mine.no_diff_tokens, "Omit normalized diff tokens from commit summaries");

    ClassifyArgs cls;
    auto* cls_cmd = app.add_subcommand("classify", "Classify introduced TODOs");
    cls_cmd->add_option("-e,--events", cls.events, "Event JSONL, - for stdin")->capture_default_str();
    cls_cmd->add_option("--commits", cls.commits, "Commit summary JSONL supplying diff context");
    cls_cmd->add_option("-o,--out", cls.out, "Verdict JSONL, - for stdout")->capture_default_str();

    LifecycleArgs lc;
    auto* lc_cmd = app.add_subcommand("lifecycle", "Match introductions with eliminations");
    lc_cmd->add_option("-e,--events", lc.events, "Event JSONL")->required();
    lc_cmd->add_option("--commits", lc.commits, "Commit summary JSONL")->required();
    lc_cmd->add_option("--verdicts", lc.verdicts, "Verdict JSONL (default: classify with --model)");
    lc_cmd->add_option("--overrides", lc.overrides, "CSV of manual removal judgments");
    lc_cmd->add_option("-o,--out", lc.out, "Lifecycle record JSONL, - for stdout")->capture_default_str();
    lc_cmd->add_option("--metrics", lc.metrics, "Write lifecycle metrics CSV");
    lc_cmd->add_option("--group-by", lc.group_by, "category, form or subcategory")
        ->check(CLI::IsMember({"category", "form", "subcategory"}))
        ->capture_default_str();

    StatsArgs st;
    auto* st_cmd = app.add_subcommand("stats", "Run the lifecycle hypothesis tests");
    st_cmd->add_option("-r,--records", st.records, "Lifecycle record JSONL, - for stdin")->capture_default_str();
    st_cmd->add_option("-o,--out", st.out, "Test result JSONL, - for stdout")->capture_default_str();
    st_cmd->add_option("--alpha", st.alpha, "Family-wise significance level (default 0.05)");

    ReportArgs rp;
    auto* rp_cmd = app.add_subcommand("report", "Render distribution, lifecycle, test and evaluation tables");
    rp_cmd->add_option("--verdicts", rp.verdicts, "Verdict JSONL");
    rp_cmd->add_option("--records", rp.records, "Lifecycle record JSONL");
    rp_cmd->add_option("--stats", rp.stats, "Test result JSONL");
    rp_cmd->add_option("--eval", rp.evals, "Evaluation JSON written by train");
    rp_cmd->add_option("--format", rp.format, "csv, json or markdown")
        ->check(CLI::IsMember({"csv", "json", "markdown"}));
    rp_cmd->add_option("--out-dir", rp.out_dir, "Output directory")->capture_default_str();
    rp_cmd->add_option("--group-by", rp.group_by, "Lifecycle grouping: category, form or subcategory")
        ->check(CLI::IsMember({"category", "form", "subcategory"}))
        ->capture_default_str();

    TrainArgs tr;
    auto* tr_cmd = app.add_subcommand("train", "Train and/or cross-validate a classifier on a labeled dataset");
    tr_cmd->add_option("-d,--dataset", tr.dataset, "Labeled dataset JSONL")->required();
    tr_cmd->add_option("-o,--out", tr.out, "Lexical model bundle");
    tr_cmd->add_option("--eval", tr.eval_out, "Evaluation JSON (default: stdout)");
    tr_cmd->add_option("--cv", tr.cv, "Stratified k-fold cross-validation");

    for (auto* sub : {mine_cmd, cls_cmd, lc_cmd, st_cmd, rp_cmd, tr_cmd}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    std::vector<std::string> command{"todolens"};
    for (int i = 1; i < argc; ++i) command.emplace_back(argv[i]);

    try {
        Run run(command, resolve_config(g, app));
        if (*mine_cmd) cmd_mine(run, g, mine);
        else if (*cls_cmd) cmd_classify(run, g, cls);
        else if (*lc_cmd) cmd_lifecycle(run, g, lc);
        else if (*st_cmd) cmd_stats(run, g, st);
        else if (*rp_cmd) cmd_report(run, g, rp);
        else if (*tr_cmd) cmd_train(run, g, tr);
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "todolens: usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "todolens: error: " << e.what() << "\n";
        return 2;
    }
}
