// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The todolens Authors

#pragma once

#include "todolens/io.hpp"
#include "todolens/lifecycle.hpp"

#include <string>
#include <vector>

namespace todolens::stats {

struct RankSumResult {
    double u_a = 0.0; // R_a - n_a(n_a+1)/2 with midranks
    double u_b = 0.0;
    double p_value = 1.0; // two-sided
    bool exact = false;
    double z = 0.0; // normal approximation only
};

// Two-sided Wilcoxon rank-sum (Mann-Whitney U). Exact null distribution
// when n_a + n_b <= kExactLimit and there are no ties, otherwise a normal
// approximation with tie and continuity corrections.
inline constexpr std::size_t kExactLimit = 20;
RankSumResult wilcoxon_rank_sum(const std::vector<double>& a, const std::vector<double>& b);

// Number of rank subsets of size m from 1..m+n with U = u, for u in
// [0, m*n].
std::vector<double> rank_sum_counts(std::size_t m, std::size_t n);

struct HolmDecision {
    double adjusted_alpha = 0.0;
    bool rejected = false;
};

// Step-down correction; results are in input order.
std::vector<HolmDecision> holm_bonferroni(const std::vector<double>& p_values, double alpha);

struct KappaResult {
    double kappa = 0.0;
    double observed = 0.0; // p_o or P-bar
    double expected = 0.0; // p_e or P-bar_e
    bool defined = true;   // false when expected agreement is 1
};

KappaResult cohen_kappa(const std::vector<std::string>& rater_a, const std::vector<std::string>& rater_b);
// counts[i][j]: raters assigning item i to category j; constant raters per item.
KappaResult fleiss_kappa(const std::vector<std::vector<int>>& counts);

struct StatTestResult {
    std::string hypothesis_id; // H1..H4
    std::string description;
    std::size_t n_a = 0; // high-quality sample
    std::size_t n_b = 0; // low-quality sample
    double u_statistic = 0.0;
    double p_value = 1.0;
    double alpha_adjusted = 0.0;
    bool rejected = false;
    bool exact = false;
    bool skipped = false; // an empty sample; excluded from the correction
};

// H1: per-repository resolved proportion, high vs low quality.
// H2: per-repository unresolved proportion among removed TODOs.
// H3: per-record days to resolution of resolved TODOs.
// H4: per-record commits to resolution of resolved TODOs.
struct HypothesisSamples {
    std::vector<double> high;
    std::vector<double> low;
};
std::vector<HypothesisSamples> hypothesis_samples(const std::vector<lifecycle::TodoRecord>& records);
std::vector<StatTestResult> run_hypotheses(const std::vector<lifecycle::TodoRecord>& records, double alpha);

ordered_json to_json(const StatTestResult& r);
StatTestResult stat_result_from_json(const json& j);

} // namespace todolens::stats
