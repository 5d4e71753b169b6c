// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The todolens Authors

#include "todolens/stats.hpp"

#include "todolens/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace todolens::stats {
namespace {

struct Hypothesis {
    const char* id;
    const char* description;
};
constexpr Hypothesis kHypotheses[] = {
    {"H1", "resolved proportion per repository, high vs low quality"},
    {"H2", "unresolved proportion of removed TODOs per repository, high vs low quality"},
    {"H3", "days from introduction to resolution, high vs low quality"},
    {"H4", "commits from introduction to resolution, high vs low quality"},
};

} // namespace

std::vector<double> rank_sum_counts(std::size_t m, std::size_t n) {
    // f[i][j][u]: arrangements of i "a" and j "b" items with U = u, via
    // f(i, j, u) = f(i-1, j, u-j) + f(i, j-1, u).
    std::vector<std::vector<std::vector<double>>> f(m + 1, std::vector<std::vector<double>>(n + 1));
    for (std::size_t i = 0; i <= m; ++i) {
        for (std::size_t j = 0; j <= n; ++j) {
            f[i][j].assign(i * j + 1, 0.0);
            if (i == 0 || j == 0) {
                f[i][j][0] = 1.0;
                continue;
            }
            for (std::size_t u = 0; u <= i * j; ++u) {
                double v = 0.0;
                if (u >= j && u - j < f[i - 1][j].size()) v += f[i - 1][j][u - j];
                if (u < f[i][j - 1].size()) v += f[i][j - 1][u];
                f[i][j][u] = v;
            }
        }
    }
    return f[m][n];
}

RankSumResult wilcoxon_rank_sum(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) throw InvalidArgument("wilcoxon_rank_sum needs two non-empty samples");
    for (double v : a) {
        if (!std::isfinite(v)) throw InvalidArgument("sample values must be finite");
    }
    for (double v : b) {
        if (!std::isfinite(v)) throw InvalidArgument("sample values must be finite");
    }
    const std::size_t na = a.size();
    const std::size_t nb = b.size();
    const std::size_t n = na + nb;

    std::vector<std::pair<double, int>> pooled;
    pooled.reserve(n);
    for (double v : a) pooled.emplace_back(v, 0);
    for (double v : b) pooled.emplace_back(v, 1);
    std::sort(pooled.begin(), pooled.end(), [](const auto& x, const auto& y) { return x.first < y.first; });

    double rank_sum_a = 0.0;
    double tie_term = 0.0; // sum of t^3 - t over tie groups
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && pooled[j].first == pooled[i].first) ++j;
        double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k) {
            if (pooled[k].second == 0) rank_sum_a += midrank;
        }
        double t = static_cast<double>(j - i);
        tie_term += t * t * t - t;
        i = j;
    }

    RankSumResult r;
    const double dna = static_cast<double>(na);
    const double dnb = static_cast<double>(nb);
    r.u_a = rank_sum_a - dna * (dna + 1.0) / 2.0;
    r.u_b = dna * dnb - r.u_a;

    if (n <= kExactLimit && tie_term == 0.0) {
        auto counts = rank_sum_counts(na, nb);
        double total = std::accumulate(counts.begin(), counts.end(), 0.0);
        auto u = static_cast<std::size_t>(std::llround(r.u_a));
        double lower = 0.0;
        double upper = 0.0;
        for (std::size_t k = 0; k < counts.size(); ++k) {
            if (k <= u) lower += counts[k];
            if (k >= u) upper += counts[k];
        }
        r.exact = true;
        r.p_value = std::min(1.0, 2.0 * std::min(lower, upper) / total);
        return r;
    }

    double mean = dna * dnb / 2.0;
    double dn = static_cast<double>(n);
    double var = dna * dnb / 12.0 * ((dn + 1.0) - tie_term / (dn * (dn - 1.0)));
    if (var <= 0.0) {
        r.p_value = 1.0;
        return r;
    }
    r.z = std::max(0.0, std::abs(r.u_a - mean) - 0.5) / std::sqrt(var);
    r.p_value = std::min(1.0, std::erfc(r.z / std::sqrt(2.0)));
    return r;
}

std::vector<HolmDecision> holm_bonferroni(const std::vector<double>& p_values, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must lie in (0, 1)");
    for (double p : p_values) {
        if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("p-values must lie in [0, 1]");
    }
    const std::size_t m = p_values.size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return p_values[x] < p_values[y]; });

    std::vector<HolmDecision> out(m);
    bool still = true;
    for (std::size_t rank = 0; rank < m; ++rank) {
        auto i = order[rank];
        out[i].adjusted_alpha = alpha / static_cast<double>(m - rank);
        still = still && p_values[i] <= out[i].adjusted_alpha;
        out[i].rejected = still;
    }
    return out;
}

KappaResult cohen_kappa(const std::vector<std::string>& rater_a, const std::vector<std::string>& rater_b) {
    if (rater_a.size() != rater_b.size()) throw InvalidArgument("rater label lists differ in length");
    if (rater_a.empty()) throw InvalidArgument("cohen_kappa needs at least one item");
    const double n = static_cast<double>(rater_a.size());
    std::map<std::string, std::pair<double, double>> marginals;
    double agree = 0.0;
    for (std::size_t i = 0; i < rater_a.size(); ++i) {
        if (rater_a[i] == rater_b[i]) agree += 1.0;
        marginals[rater_a[i]].first += 1.0;
        marginals[rater_b[i]].second += 1.0;
    }
    KappaResult k;
    k.observed = agree / n;
    for (const auto& [label, counts] : marginals) k.expected += (counts.first / n) * (counts.second / n);
    if (k.expected >= 1.0) {
        k.defined = false;
        k.kappa = std::nan("");
        return k;
    }
    k.kappa = k.observed == 1.0 ? 1.0 : (k.observed - k.expected) / (1.0 - k.expected);
    return k;
}

KappaResult fleiss_kappa(const std::vector<std::vector<int>>& counts) {
    if (counts.empty()) throw InvalidArgument("fleiss_kappa needs at least one item");
    const std::size_t categories = counts.front().size();
    if (categories == 0) throw InvalidArgument("fleiss_kappa needs at least one category");
    long raters = -1;
    for (const auto& row : counts) {
        if (row.size() != categories) throw InvalidArgument("every item needs the same category count");
        long sum = 0;
        for (int c : row) {
            if (c < 0) throw InvalidArgument("negative rating count");
            sum += c;
        }
        if (raters < 0) raters = sum;
        if (sum != raters) throw InvalidArgument("every item needs the same number of raters");
    }
    if (raters < 2) throw InvalidArgument("fleiss_kappa needs at least two raters per item");

    const double items = static_cast<double>(counts.size());
    const double r = static_cast<double>(raters);
    std::vector<double> column(categories, 0.0);
    double p_bar = 0.0;
    for (const auto& row : counts) {
        double agree = 0.0;
        for (std::size_t j = 0; j < categories; ++j) {
            column[j] += row[j];
            agree += static_cast<double>(row[j]) * (row[j] - 1);
        }
        p_bar += agree / (r * (r - 1.0));
    }
    KappaResult k;
    k.observed = p_bar / items;
    for (double c : column) {
        double pj = c / (items * r);
        k.expected += pj * pj;
    }
    if (k.expected >= 1.0) {
        k.defined = false;
        k.kappa = std::nan("");
        return k;
    }
    k.kappa = k.observed == 1.0 ? 1.0 : (k.observed - k.expected) / (1.0 - k.expected);
    return k;
}

std::vector<HypothesisSamples> hypothesis_samples(const std::vector<lifecycle::TodoRecord>& records) {
    using lifecycle::Status;
    struct Tally {
        std::size_t total = 0;
        std::size_t removed = 0;
        std::size_t resolved = 0;
        std::size_t unresolved = 0;
    };
    // repo -> (high, low)
    std::map<std::string, std::pair<Tally, Tally>> repos;
    std::vector<HypothesisSamples> out(4);
    for (const auto& r : records) {
        bool high = r.verdict.quality == classify::Quality::Good;
        auto& t = high ? repos[r.intro.repo_id].first : repos[r.intro.repo_id].second;
        ++t.total;
        if (r.status != Status::Open) ++t.removed;
        if (r.status == Status::Resolved) {
            ++t.resolved;
            auto& h3 = high ? out[2].high : out[2].low;
            auto& h4 = high ? out[3].high : out[3].low;
            if (r.time_interval_days) h3.push_back(*r.time_interval_days);
            if (r.commits_between) h4.push_back(static_cast<double>(*r.commits_between));
        }
        if (r.status == Status::RemovedUnresolved) ++t.unresolved;
    }
    for (const auto& [repo, pair] : repos) {
        const auto& [h, l] = pair;
        if (h.total) out[0].high.push_back(static_cast<double>(h.resolved) / static_cast<double>(h.total));
        if (l.total) out[0].low.push_back(static_cast<double>(l.resolved) / static_cast<double>(l.total));
        if (h.removed) out[1].high.push_back(static_cast<double>(h.unresolved) / static_cast<double>(h.removed));
        if (l.removed) out[1].low.push_back(static_cast<double>(l.unresolved) / static_cast<double>(l.removed));
    }
    return out;
}

std::vector<StatTestResult> run_hypotheses(const std::vector<lifecycle::TodoRecord>& records, double alpha) {
    auto samples = hypothesis_samples(records);
    std::vector<StatTestResult> results;
    std::vector<double> pvals;
    std::vector<std::size_t> tested;
    for (std::size_t h = 0; h < 4; ++h) {
        StatTestResult r;
        r.hypothesis_id = kHypotheses[h].id;
        r.description = kHypotheses[h].description;
        r.n_a = samples[h].high.size();
        r.n_b = samples[h].low.size();
        if (samples[h].high.empty() || samples[h].low.empty()) {
            r.skipped = true;
        } else {
            auto w = wilcoxon_rank_sum(samples[h].high, samples[h].low);
            r.u_statistic = w.u_a;
            r.p_value = w.p_value;
            r.exact = w.exact;
            pvals.push_back(w.p_value);
            tested.push_back(h);
        }
        results.push_back(std::move(r));
    }
    auto holm = holm_bonferroni(pvals, alpha);
    for (std::size_t k = 0; k < tested.size(); ++k) {
        results[tested[k]].alpha_adjusted = holm[k].adjusted_alpha;
        results[tested[k]].rejected = holm[k].rejected;
    }
    return results;
}

ordered_json to_json(const StatTestResult& r) {
    ordered_json j;
    j["hypothesis_id"] = r.hypothesis_id;
    j["description"] = r.description;
    j["n_a"] = r.n_a;
    j["n_b"] = r.n_b;
    j["u_statistic"] = r.u_statistic;
    j["p_value"] = r.p_value;
    j["alpha_adjusted"] = r.alpha_adjusted;
    j["rejected"] = r.rejected;
    j["exact"] = r.exact;
    j["skipped"] = r.skipped;
    return j;
}

StatTestResult stat_result_from_json(const json& j) {
    StatTestResult r;
    r.hypothesis_id = j.at("hypothesis_id").get<std::string>();
    r.description = j.value("description", std::string{});
    r.n_a = j.at("n_a").get<std::size_t>();
    r.n_b = j.at("n_b").get<std::size_t>();
    r.u_statistic = j.at("u_statistic").get<double>();
    r.p_value = j.at("p_value").get<double>();
    r.alpha_adjusted = j.at("alpha_adjusted").get<double>();
    r.rejected = j.at("rejected").get<bool>();
    r.exact = j.value("exact", false);
    r.skipped = j.value("skipped", false);
    if (!(r.p_value >= 0.0 && r.p_value <= 1.0)) throw DataError("p_value outside [0, 1]");
    return r;
}

} // namespace todolens::stats
