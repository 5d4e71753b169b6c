// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The todolens Authors

#pragma once

#include "todolens/classifier.hpp"
#include "todolens/lifecycle.hpp"
#include "todolens/miner.hpp"
#include "todolens/stats.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace todolens::report {

// One line of verdicts.jsonl: the introduced TODO and its classification.
struct VerdictRecord {
    mining::TodoEvent intro;
    classify::Verdict verdict;
};
ordered_json to_json(const VerdictRecord& r);
VerdictRecord verdict_record_from_json(const json& j);

struct DistributionRow {
    std::string category;
    std::size_t count = 0;
    double proportion = 0.0;
};

struct DistributionTable {
    std::string scope; // "overall" or a repo_id
    std::vector<DistributionRow> rows; // TaskGood, TaskBad, NoticeGood, NoticeBad
    std::size_t total() const;
};

// Throws InvalidArgument on empty input.
DistributionTable aggregate_distribution(const std::vector<classify::Verdict>& verdicts,
                                         std::string scope = "overall");
// Overall table first, then one per repo_id in ascending order.
std::vector<DistributionTable> aggregate_by_repo(const std::vector<VerdictRecord>& records);

struct SubcategoryRow {
    std::string form;
    std::string subcategory;
    std::size_t count = 0;
    double proportion = 0.0; // within the form
};
// Rows follow the fixed subcategory vocabulary order; verdicts without a
// subcategory are skipped.
std::vector<SubcategoryRow> aggregate_subcategories(const std::vector<classify::Verdict>& verdicts);

// Cross-validation summary written by `train`.
struct EvalReport {
    std::string model;
    std::string target;
    int k = 0;
    std::vector<classify::EvalMetrics> folds;
    classify::EvalMetrics mean;
    classify::EvalMetrics stdev;
};
ordered_json to_json(const EvalReport& e);
EvalReport eval_report_from_json(const json& j);

enum class Format { Csv, Json, Markdown };
Format format_from_string(std::string_view s);

struct ReportInputs {
    std::vector<DistributionTable> distribution;
    std::vector<SubcategoryRow> subcategories;
    std::vector<lifecycle::LifecycleMetrics> metrics;
    std::vector<stats::StatTestResult> tests;
    std::vector<EvalReport> evals;

    bool empty() const {
        return distribution.empty() && subcategories.empty() && metrics.empty() && tests.empty() && evals.empty();
    }
};

// Renders each present section. CSV writes one file per section, JSON a
// single report.json, markdown a single report.md. Returns written paths.
// Throws InvalidArgument when no section is present.
std::vector<std::filesystem::path> emit_report(const ReportInputs& inputs, Format format,
                                               const std::filesystem::path& out_dir);

std::string render_markdown(const ReportInputs& inputs);
ordered_json render_json(const ReportInputs& inputs);
std::string distribution_csv(const std::vector<DistributionTable>& tables);
std::string subcategory_csv(const std::vector<SubcategoryRow>& rows);
std::string metrics_csv(const std::vector<lifecycle::LifecycleMetrics>& rows);
std::string stats_csv(const std::vector<stats::StatTestResult>& rows);
std::string eval_csv(const std::vector<EvalReport>& evals);

} // namespace todolens::report
