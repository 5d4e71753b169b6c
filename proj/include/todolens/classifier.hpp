// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The todolens Authors

#pragma once

#include "todolens/io.hpp"
#include "todolens/normalizer.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace todolens::classify {

enum class Form : std::uint8_t { Task, Notice };
enum class Quality : std::uint8_t { Good, Bad };
enum class Source : std::uint8_t { Pos, Rules, Lexical, Bridge };
enum class Target : std::uint8_t { Form, Quality };

// Probability pairs are ordered (p_task, p_notice) and (p_good, p_bad).
using ProbPair = std::array<double, 2>;

struct Verdict {
    ProbPair form_probs{0.0, 1.0};
    ProbPair quality_probs{0.0, 1.0};
    Form form = Form::Notice;
    Quality quality = Quality::Bad;
    std::optional<std::string> subcategory;
    Source source = Source::Rules;
};

// Decides labels by argmax; exact ties go to Notice and Bad.
Verdict make_verdict(ProbPair form_probs, ProbPair quality_probs, Source source);

// "TaskGood", "TaskBad", "NoticeGood" or "NoticeBad".
std::string category_of(Form form, Quality quality);
inline std::string category_of(const Verdict& v) { return category_of(v.form, v.quality); }
inline constexpr std::array<std::string_view, 4> kCategories = {"TaskGood", "TaskBad", "NoticeGood", "NoticeBad"};

std::string_view to_string(Form f);
std::string_view to_string(Quality q);
std::string_view to_string(Source s);
std::string_view to_string(Target t);
Form form_from_string(std::string_view s);
Quality quality_from_string(std::string_view s);
Source source_from_string(std::string_view s);
Target target_from_string(std::string_view s);

inline constexpr std::array<std::string_view, 9> kTaskSubcategories = {
    "Feature Request", "Remove Workaround",    "Re-enable Commented Code",
    "Refactoring",     "Bug Fix",              "Code Hygiene",
    "Problem Confirmation", "Testing",         "Documentation"};
inline constexpr std::array<std::string_view, 6> kNoticeSubcategories = {
    "Provide suggestion",    "Highlight existing issue", "Analyze current situation",
    "Throw pending question", "Auto-generated TODOs",    "Indecipherable TODOs"};
bool is_subcategory(std::string_view s);

struct LabeledExample {
    std::string todo_raw;
    text::NormalizedTodo todo;
    text::NormalizedDiff diff;
    Form form_label = Form::Notice;
    Quality quality_label = Quality::Bad;
    std::optional<std::string> subcategory;
    std::string repo_id;
    std::string commit_id;
};

// Positive class: Task for Target::Form, Good for Target::Quality.
bool is_positive(const Verdict& v, Target target);
bool is_positive(const LabeledExample& e, Target target);
// Index of the gold class in the target's probability pair.
int gold_class(const LabeledExample& e, Target target);

// Part-of-speech baseline: verb followed by an object makes a Task.
// `diff` lets demonstratives ("this", "that") stand in for the object.
Verdict classify_pos(const text::NormalizedTodo& todo, const text::NormalizedDiff* diff = nullptr);

inline constexpr int kDefaultMinContentTokens = 4;

// Ordered rule list over form and clarity. Throws InvalidArgument on empty input.
Verdict classify_rules(const text::NormalizedTodo& todo, const text::NormalizedDiff* diff = nullptr,
                       int min_content_tokens = kDefaultMinContentTokens);

// Keyword tagger for the thematic subcategories; uses verdict.form to pick
// the Task or Notice vocabulary.
Verdict tag_subcategory(const text::NormalizedTodo& todo, Verdict verdict);

// Distinct tokens carrying a letter and no digit, ignoring "todo", articles
// and placeholders.
std::vector<std::string> content_tokens(const std::vector<std::string>& tokens);

struct EvalMetrics {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t tn = 0;
    std::size_t fn = 0;
    bool precision_undefined = false;
    bool recall_undefined = false;

    std::size_t total() const { return tp + fp + tn + fn; }
};

EvalMetrics evaluate(const std::vector<Verdict>& predictions, const std::vector<LabeledExample>& gold, Target target);

using Predictor = std::function<Verdict(const LabeledExample&)>;
// Builds a predictor from a training fold.
using Trainer = std::function<Predictor(const std::vector<LabeledExample>& train)>;

struct CrossValidation {
    std::vector<int> fold_of; // fold index for every example
    std::vector<EvalMetrics> folds;
    EvalMetrics mean;         // arithmetic mean of the fold metrics (counts summed)
    EvalMetrics stdev;        // sample standard deviation of the four rates
};

// Stratified by the target label: each label group is shuffled with a
// seeded Fisher-Yates and dealt round-robin into k folds.
std::vector<int> assign_folds(const std::vector<LabeledExample>& dataset, int k, Target target, std::uint64_t seed);
CrossValidation crossvalidate(const std::vector<LabeledExample>& dataset, int k, const Trainer& trainer,
                              Target target, std::uint64_t seed);

// Uniform index in [0, n) from a 64-bit generator, identical on every platform.
std::uint64_t uniform_index(std::uint64_t random, std::uint64_t n);

ordered_json to_json(const Verdict& v);
Verdict verdict_from_json(const json& j);
ordered_json to_json(const EvalMetrics& m);

// Labeled dataset line: {todo_raw, todo_tokens, diff_tokens, form_label,
// quality_label, subcategory, repo_id, commit_id}. Tokens are recomputed
// from todo_raw when todo_tokens is absent.
LabeledExample labeled_example_from_json(const json& j);
ordered_json to_json(const LabeledExample& e);
std::vector<LabeledExample> read_labeled_dataset(const std::filesystem::path& path);

} // namespace todolens::classify
