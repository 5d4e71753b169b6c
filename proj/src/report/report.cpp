// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The todolens Authors

#include "todolens/report.hpp"

#include "todolens/error.hpp"

#include <map>
#include <sstream>

namespace todolens::report {
namespace {

std::string pct(double fraction) { return format_fixed(fraction * 100.0, 2); }

std::string opt_fixed(const std::optional<double>& v, double scale, const char* missing) {
    return v ? format_fixed(*v * scale, 2) : std::string(missing);
}

std::string md_row(const std::vector<std::string>& cells) {
    std::string out = "|";
    for (const auto& c : cells) {
        out += ' ';
        for (char ch : c) {
            if (ch == '|') out += '\\';
            out += ch;
        }
        out += " |";
    }
    return out + "\n";
}

std::string md_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
    std::string out = md_row(header);
    out += "|";
    for (std::size_t i = 0; i < header.size(); ++i) out += " --- |";
    out += "\n";
    for (const auto& r : rows) out += md_row(r);
    return out;
}

ordered_json metrics_json(const classify::EvalMetrics& m) { return classify::to_json(m); }

classify::EvalMetrics metrics_from_json(const json& j) {
    classify::EvalMetrics m;
    m.accuracy = j.at("accuracy").get<double>();
    m.precision = j.at("precision").get<double>();
    m.recall = j.at("recall").get<double>();
    m.f1 = j.at("f1").get<double>();
    m.tp = j.value("tp", std::size_t{0});
    m.fp = j.value("fp", std::size_t{0});
    m.tn = j.value("tn", std::size_t{0});
    m.fn = j.value("fn", std::size_t{0});
    m.precision_undefined = j.value("precision_undefined", false);
    m.recall_undefined = j.value("recall_undefined", false);
    return m;
}

} // namespace

ordered_json to_json(const VerdictRecord& r) {
    ordered_json j;
    j["intro"] = mining::to_json(r.intro);
    j["verdict"] = classify::to_json(r.verdict);
    return j;
}

VerdictRecord verdict_record_from_json(const json& j) {
    if (!j.is_object()) throw DataError("verdict record must be a JSON object");
    VerdictRecord r{mining::event_from_json(j.at("intro")), classify::verdict_from_json(j.at("verdict"))};
    if (r.intro.kind != mining::EventKind::Introduced) throw DataError("verdict records must refer to Introduced events");
    return r;
}

std::size_t DistributionTable::total() const {
    std::size_t n = 0;
    for (const auto& r : rows) n += r.count;
    return n;
}

DistributionTable aggregate_distribution(const std::vector<classify::Verdict>& verdicts, std::string scope) {
    if (verdicts.empty()) throw InvalidArgument("no verdicts to aggregate for scope " + scope);
    std::map<std::string, std::size_t> counts;
    for (const auto& v : verdicts) ++counts[classify::category_of(v)];
    DistributionTable t;
    t.scope = std::move(scope);
    for (auto cat : classify::kCategories) {
        auto c = counts[std::string(cat)];
        t.rows.push_back({std::string(cat), c, static_cast<double>(c) / static_cast<double>(verdicts.size())});
    }
    return t;
}

std::vector<DistributionTable> aggregate_by_repo(const std::vector<VerdictRecord>& records) {
    std::vector<classify::Verdict> all;
    std::map<std::string, std::vector<classify::Verdict>> by_repo;
    for (const auto& r : records) {
        all.push_back(r.verdict);
        by_repo[r.intro.repo_id].push_back(r.verdict);
    }
    std::vector<DistributionTable> out{aggregate_distribution(all)};
    for (const auto& [repo, verdicts] : by_repo) out.push_back(aggregate_distribution(verdicts, repo));
    return out;
}

std::vector<SubcategoryRow> aggregate_subcategories(const std::vector<classify::Verdict>& verdicts) {
    std::map<std::pair<classify::Form, std::string>, std::size_t> counts;
    std::map<classify::Form, std::size_t> per_form;
    for (const auto& v : verdicts) {
        if (!v.subcategory) continue;
        ++counts[{v.form, *v.subcategory}];
        ++per_form[v.form];
    }
    std::vector<SubcategoryRow> rows;
    auto emit = [&](classify::Form form, const auto& vocabulary) {
        for (auto name : vocabulary) {
            auto it = counts.find({form, std::string(name)});
            if (it == counts.end()) continue;
            rows.push_back({std::string(classify::to_string(form)), std::string(name), it->second,
                            static_cast<double>(it->second) / static_cast<double>(per_form[form])});
        }
    };
    emit(classify::Form::Task, classify::kTaskSubcategories);
    emit(classify::Form::Notice, classify::kNoticeSubcategories);
    return rows;
}

ordered_json to_json(const EvalReport& e) {
    ordered_json j;
    j["model"] = e.model;
    j["target"] = e.target;
    j["k"] = e.k;
    ordered_json folds = ordered_json::array();
    for (const auto& f : e.folds) folds.push_back(metrics_json(f));
    j["folds"] = std::move(folds);
    j["mean"] = metrics_json(e.mean);
    j["stdev"] = metrics_json(e.stdev);
    return j;
}

EvalReport eval_report_from_json(const json& j) {
    EvalReport e;
    e.model = j.at("model").get<std::string>();
    e.target = j.at("target").get<std::string>();
    e.k = j.value("k", 0);
    for (const auto& f : j.value("folds", json::array())) e.folds.push_back(metrics_from_json(f));
    e.mean = metrics_from_json(j.at("mean"));
    if (auto it = j.find("stdev"); it != j.end()) e.stdev = metrics_from_json(*it);
    return e;
}

Format format_from_string(std::string_view s) {
    if (s == "csv") return Format::Csv;
    if (s == "json") return Format::Json;
    if (s == "markdown" || s == "md") return Format::Markdown;
    throw UsageError("unknown report format '" + std::string(s) + "' (expected csv, json or markdown)");
}

std::string distribution_csv(const std::vector<DistributionTable>& tables) {
    std::string out = "scope,category,count,proportion\n";
    for (const auto& t : tables) {
        for (const auto& r : t.rows) out += csv_row({t.scope, r.category, std::to_string(r.count), pct(r.proportion)});
    }
    return out;
}

std::string subcategory_csv(const std::vector<SubcategoryRow>& rows) {
    std::string out = "form,subcategory,count,proportion\n";
    for (const auto& r : rows) out += csv_row({r.form, r.subcategory, std::to_string(r.count), pct(r.proportion)});
    return out;
}

std::string metrics_csv(const std::vector<lifecycle::LifecycleMetrics>& rows) {
    std::string out = std::string(lifecycle::kMetricsHeader) + "\n";
    for (const auto& m : rows) out += lifecycle::metrics_csv_row(m);
    return out;
}

std::string stats_csv(const std::vector<stats::StatTestResult>& rows) {
    std::string out = "hypothesis_id,n_high,n_low,u_statistic,p_value,alpha_adjusted,rejected,skipped\n";
    for (const auto& r : rows) {
        out += csv_row({r.hypothesis_id, std::to_string(r.n_a), std::to_string(r.n_b),
                        r.skipped ? "" : format_fixed(r.u_statistic, 2), r.skipped ? "" : format_fixed(r.p_value, 2),
                        r.skipped ? "" : format_fixed(r.alpha_adjusted, 2), r.rejected ? "true" : "false",
                        r.skipped ? "true" : "false"});
    }
    return out;
}

std::string eval_csv(const std::vector<EvalReport>& evals) {
    std::string out = "model,target,k,accuracy,precision,recall,f1\n";
    for (const auto& e : evals) {
        out += csv_row({e.model, e.target, std::to_string(e.k), pct(e.mean.accuracy), pct(e.mean.precision),
                        pct(e.mean.recall), pct(e.mean.f1)});
    }
    return out;
}

std::string render_markdown(const ReportInputs& in) {
    std::ostringstream out;
    out << "# TODO report\n";
    if (!in.distribution.empty()) {
        std::vector<std::vector<std::string>> rows;
        for (const auto& t : in.distribution) {
            for (const auto& r : t.rows) rows.push_back({t.scope, r.category, std::to_string(r.count), pct(r.proportion)});
        }
        out << "\n## Distribution\n\n" << md_table({"Scope", "Category", "Count", "Proportion (%)"}, rows);
    }
    if (!in.subcategories.empty()) {
        std::vector<std::vector<std::string>> rows;
        for (const auto& r : in.subcategories) rows.push_back({r.form, r.subcategory, std::to_string(r.count), pct(r.proportion)});
        out << "\n## Subcategories\n\n" << md_table({"Form", "Subcategory", "Count", "Share (%)"}, rows);
    }
    if (!in.metrics.empty()) {
        std::vector<std::vector<std::string>> rows;
        for (const auto& m : in.metrics) {
            rows.push_back({m.category, std::to_string(m.total), std::to_string(m.removed), std::to_string(m.resolved),
                            std::to_string(m.unresolved), opt_fixed(m.resolved_pct, 100.0, "n/a"),
                            opt_fixed(m.unresolved_pct, 100.0, "n/a"), opt_fixed(m.mean_time_interval_days, 1.0, "n/a"),
                            opt_fixed(m.mean_commits, 1.0, "n/a")});
        }
        out << "\n## Lifecycle\n\n"
            << md_table({"Category", "Total", "Removed", "Resolved", "Unresolved", "Resolved (%)", "Unresolved (%)",
                         "Time-Interval (days)", "#Commits"},
                        rows);
    }
    if (!in.tests.empty()) {
        std::vector<std::vector<std::string>> rows;
        for (const auto& r : in.tests) {
            rows.push_back({r.hypothesis_id, std::to_string(r.n_a), std::to_string(r.n_b),
                            r.skipped ? "n/a" : format_fixed(r.u_statistic, 2),
                            r.skipped ? "n/a" : format_fixed(r.p_value, 2),
                            r.skipped ? "n/a" : format_fixed(r.alpha_adjusted, 2),
                            r.skipped ? "skipped" : (r.rejected ? "yes" : "no")});
        }
        out << "\n## Hypothesis tests\n\n"
            << md_table({"Hypothesis", "n (high)", "n (low)", "U", "p-value", "Adjusted alpha", "Rejected"}, rows);
    }
    if (!in.evals.empty()) {
        std::vector<std::vector<std::string>> rows;
        for (const auto& e : in.evals) {
            rows.push_back({e.model, e.target, pct(e.mean.accuracy), pct(e.mean.precision), pct(e.mean.recall),
                            pct(e.mean.f1)});
        }
        out << "\n## Evaluation\n\n"
            << md_table({"Model", "Target", "Accuracy (%)", "Precision (%)", "Recall (%)", "F1 (%)"}, rows);
    }
    return out.str();
}

ordered_json render_json(const ReportInputs& in) {
    ordered_json j = ordered_json::object();
    if (!in.distribution.empty()) {
        ordered_json arr = ordered_json::array();
        for (const auto& t : in.distribution) {
            ordered_json tj;
            tj["scope"] = t.scope;
            ordered_json rows = ordered_json::array();
            for (const auto& r : t.rows) {
                ordered_json rj;
                rj["category"] = r.category;
                rj["count"] = r.count;
                rj["proportion"] = r.proportion;
                rows.push_back(std::move(rj));
            }
            tj["rows"] = std::move(rows);
            arr.push_back(std::move(tj));
        }
        j["distribution"] = std::move(arr);
    }
    if (!in.subcategories.empty()) {
        ordered_json arr = ordered_json::array();
        for (const auto& r : in.subcategories) {
            ordered_json rj;
            rj["form"] = r.form;
            rj["subcategory"] = r.subcategory;
            rj["count"] = r.count;
            rj["proportion"] = r.proportion;
            arr.push_back(std::move(rj));
        }
        j["subcategories"] = std::move(arr);
    }
    if (!in.metrics.empty()) {
        ordered_json arr = ordered_json::array();
        for (const auto& m : in.metrics) arr.push_back(lifecycle::to_json(m));
        j["lifecycle"] = std::move(arr);
    }
    if (!in.tests.empty()) {
        ordered_json arr = ordered_json::array();
        for (const auto& r : in.tests) arr.push_back(stats::to_json(r));
        j["tests"] = std::move(arr);
    }
    if (!in.evals.empty()) {
        ordered_json arr = ordered_json::array();
        for (const auto& e : in.evals) arr.push_back(to_json(e));
        j["evaluation"] = std::move(arr);
    }
    return j;
}

std::vector<std::filesystem::path> emit_report(const ReportInputs& inputs, Format format,
                                               const std::filesystem::path& out_dir) {
    if (inputs.empty()) throw InvalidArgument("nothing to report: every input section is empty");
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw Error("cannot create output directory " + out_dir.string() + ": " + ec.message());

    std::vector<std::filesystem::path> written;
    auto put = [&](const std::string& name, const std::string& body) {
        auto path = out_dir / name;
        write_file(path, body);
        written.push_back(path);
    };
    switch (format) {
    case Format::Csv:
        if (!inputs.distribution.empty()) put("distribution.csv", distribution_csv(inputs.distribution));
        if (!inputs.subcategories.empty()) put("subcategories.csv", subcategory_csv(inputs.subcategories));
        if (!inputs.metrics.empty()) put("metrics.csv", metrics_csv(inputs.metrics));
        if (!inputs.tests.empty()) put("stats.csv", stats_csv(inputs.tests));
        if (!inputs.evals.empty()) put("eval.csv", eval_csv(inputs.evals));
        break;
    case Format::Json:
        put("report.json", render_json(inputs).dump(2) + "\n");
        break;
    case Format::Markdown:
        put("report.md", render_markdown(inputs));
        break;
    }
    return written;
}

} // namespace todolens::report
