// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The todolens Authors

#include "test_support.hpp"

#include "todolens/classifier.hpp"
#include "todolens/error.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>

using namespace todolens;
using namespace todolens::classify;

namespace {

LabeledExample labeled(Form form, Quality quality, std::string text = "TODO add a cache") {
    LabeledExample e;
    e.todo_raw = text;
    e.todo = text::normalize_todo(text);
    e.form_label = form;
    e.quality_label = quality;
    return e;
}

Verdict predicted(Form form, Quality quality) {
    return make_verdict(form == Form::Task ? ProbPair{0.9, 0.1} : ProbPair{0.1, 0.9},
                        quality == Quality::Good ? ProbPair{0.9, 0.1} : ProbPair{0.1, 0.9}, Source::Rules);
}

std::vector<LabeledExample> balanced(std::size_t n) {
    std::vector<LabeledExample> out;
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(labeled(i % 2 == 0 ? Form::Task : Form::Notice, i % 3 == 0 ? Quality::Good : Quality::Bad,
                              "TODO item " + std::to_string(i)));
    }
    return out;
}

} // namespace

TEST_CASE("rule classifier reproduces every labeled exemplar") {
    std::size_t n = 0;
    read_jsonl_file(testing::data_dir() / "fixtures" / "exemplars.jsonl", [&](const json& j, std::size_t) {
        auto raw = j.at("todo").get<std::string>();
        INFO(raw);
        auto v = classify_rules(text::normalize_todo(raw));
        CHECK(category_of(v) == j.at("category").get<std::string>());
        CHECK(v.source == Source::Rules);
        ++n;
    });
    CHECK(n == 13);
}

TEST_CASE("POS baseline on imperative and declarative sentences") {
    auto cat = [](const char* s) { return category_of(classify_pos(text::normalize_todo(s))); };
    CHECK(cat("TODO: switch to hostJavaToolchain after cl/118829419 makes a blaze release") == "TaskGood");
    CHECK(cat("TODO remove the flag after deprecation") == "TaskGood");
    CHECK(cat("TODO implement") == "TaskBad");
    CHECK(cat("TODO (b/159359614): enable") == "TaskBad");
    CHECK(cat("TODO ...") == "NoticeBad");
    CHECK(cat("TODO: this assumes that the CWD of the Maven process is the plugin ${basedir}, which may not be "
              "the case") == "NoticeGood");
}

TEST_CASE("a diff lets a demonstrative stand in for the object") {
    auto todo = text::normalize_todo("TODO remove this");
    text::NormalizedDiff diff;
    diff.tokens = {"int", "x"};
    CHECK(classify_pos(todo).quality == Quality::Bad);
    CHECK(classify_pos(todo, &diff).form == Form::Task);
}

TEST_CASE("empty TODOs are rejected") {
    text::NormalizedTodo empty;
    CHECK_THROWS_AS(classify_pos(empty), InvalidArgument);
    CHECK_THROWS_AS(classify_rules(empty), InvalidArgument);
}

TEST_CASE("subcategory tagger agrees with hand labels") {
    std::size_t n = 0;
    read_jsonl_file(testing::data_dir() / "fixtures" / "subcategory_exemplars.jsonl", [&](const json& j, std::size_t) {
        auto raw = j.at("todo").get<std::string>();
        INFO(raw);
        auto form = form_from_string(j.at("form").get<std::string>());
        auto base = make_verdict(form == Form::Task ? ProbPair{1.0, 0.0} : ProbPair{0.0, 1.0}, {0.5, 0.5},
                                 Source::Rules);
        auto v = tag_subcategory(text::normalize_todo(raw), base);
        REQUIRE(v.subcategory);
        CHECK(*v.subcategory == j.at("subcategory").get<std::string>());
        CHECK(is_subcategory(*v.subcategory));
        ++n;
    });
    CHECK(n >= 20);
}

TEST_CASE("tagger only uses the vocabulary of the verdict's form") {
    auto todo = text::normalize_todo("TODO add a flag");
    auto task = tag_subcategory(todo, predicted(Form::Task, Quality::Good));
    auto notice = tag_subcategory(todo, predicted(Form::Notice, Quality::Good));
    auto in = [](const auto& list, const std::string& s) {
        return std::find(list.begin(), list.end(), s) != list.end();
    };
    CHECK(in(kTaskSubcategories, *task.subcategory));
    CHECK(in(kNoticeSubcategories, *notice.subcategory));
}

TEST_CASE("evaluate: all correct") {
    std::vector<LabeledExample> gold = {labeled(Form::Task, Quality::Good), labeled(Form::Notice, Quality::Bad),
                                        labeled(Form::Task, Quality::Bad)};
    std::vector<Verdict> preds;
    for (const auto& g : gold) preds.push_back(predicted(g.form_label, g.quality_label));
    for (auto target : {Target::Form, Target::Quality}) {
        auto m = evaluate(preds, gold, target);
        CHECK(m.accuracy == 1.0);
        CHECK(m.precision == 1.0);
        CHECK(m.recall == 1.0);
        CHECK(m.f1 == 1.0);
        CHECK(m.total() == 3);
    }
}

TEST_CASE("evaluate: always-positive predictor on a balanced set") {
    std::vector<LabeledExample> gold;
    std::vector<Verdict> preds;
    for (int i = 0; i < 10; ++i) {
        gold.push_back(labeled(i < 5 ? Form::Task : Form::Notice, Quality::Bad));
        preds.push_back(predicted(Form::Task, Quality::Bad));
    }
    auto m = evaluate(preds, gold, Target::Form);
    CHECK(m.precision == Catch::Approx(0.5).margin(1e-15));
    CHECK(m.recall == 1.0);
    CHECK(m.accuracy == Catch::Approx(0.5).margin(1e-15));
    CHECK(m.f1 == Catch::Approx(2.0 / 3.0).margin(1e-15));
    CHECK(m.tp == 5);
    CHECK(m.fp == 5);
    CHECK(m.tn == 0);
    CHECK(m.fn == 0);

    auto q = evaluate(preds, gold, Target::Quality);
    CHECK(q.precision_undefined);
    CHECK(q.recall_undefined);
    CHECK(q.accuracy == 1.0);
}

TEST_CASE("evaluate counts always add up") {
    std::mt19937_64 rng(11);
    for (int round = 0; round < 100; ++round) {
        std::size_t n = 1 + rng() % 40;
        std::vector<LabeledExample> gold;
        std::vector<Verdict> preds;
        for (std::size_t i = 0; i < n; ++i) {
            gold.push_back(labeled(rng() % 2 ? Form::Task : Form::Notice, rng() % 2 ? Quality::Good : Quality::Bad));
            preds.push_back(predicted(rng() % 2 ? Form::Task : Form::Notice, rng() % 2 ? Quality::Good : Quality::Bad));
        }
        auto m = evaluate(preds, gold, Target::Form);
        CHECK(m.total() == n);
        CHECK(m.accuracy >= 0.0);
        CHECK(m.accuracy <= 1.0);
        CHECK(m.f1 <= 1.0);
    }
}

TEST_CASE("evaluate rejects mismatched or empty input") {
    std::vector<LabeledExample> gold = {labeled(Form::Task, Quality::Good)};
    CHECK_THROWS_AS(evaluate({}, gold, Target::Form), InvalidArgument);
    CHECK_THROWS_AS(evaluate({}, {}, Target::Form), InvalidArgument);
}

TEST_CASE("stratified folds partition the dataset") {
    auto data = balanced(100);
    auto folds = assign_folds(data, 10, Target::Form, 7);
    REQUIRE(folds.size() == 100);
    std::array<int, 10> sizes{};
    std::array<int, 10> tasks{};
    for (std::size_t i = 0; i < folds.size(); ++i) {
        REQUIRE(folds[i] >= 0);
        REQUIRE(folds[i] < 10);
        ++sizes[folds[i]];
        tasks[folds[i]] += data[i].form_label == Form::Task ? 1 : 0;
    }
    for (int f = 0; f < 10; ++f) {
        CHECK(sizes[f] == 10);
        CHECK(tasks[f] == 5);
    }
    CHECK(assign_folds(data, 10, Target::Form, 7) == folds);
    CHECK(assign_folds(data, 10, Target::Form, 8) != folds);
    CHECK_THROWS_AS(assign_folds(data, 200, Target::Form, 7), InvalidArgument);
    CHECK_THROWS_AS(assign_folds(data, 1, Target::Form, 7), InvalidArgument);
}

TEST_CASE("cross-validation tests every example exactly once") {
    auto data = balanced(30);
    std::multiset<std::string> seen;
    Trainer trainer = [&](const std::vector<LabeledExample>& train) -> Predictor {
        CHECK(train.size() == 27);
        return [&seen](const LabeledExample& e) {
            seen.insert(e.todo_raw);
            return predicted(e.form_label, e.quality_label);
        };
    };
    auto cv = crossvalidate(data, 10, trainer, Target::Form, 7);
    CHECK(seen.size() == 30);
    CHECK(std::set<std::string>(seen.begin(), seen.end()).size() == 30);
    CHECK(cv.folds.size() == 10);
    CHECK(cv.mean.accuracy == 1.0);
    CHECK(cv.stdev.accuracy == 0.0);
    CHECK(cv.mean.total() == 30);
}

TEST_CASE("uniform_index stays in range") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 1000; ++i) {
        auto n = 1 + rng() % 1000;
        CHECK(uniform_index(rng(), n) < n);
    }
    CHECK(uniform_index(~0ULL, 1) == 0);
}

TEST_CASE("exact ties go to Notice and Bad") {
    auto v = make_verdict({0.5, 0.5}, {0.5, 0.5}, Source::Lexical);
    CHECK(v.form == Form::Notice);
    CHECK(v.quality == Quality::Bad);
    CHECK(category_of(v) == "NoticeBad");
}

TEST_CASE("verdict JSON round-trip and validation") {
    auto v = tag_subcategory(text::normalize_todo("TODO fix the leak"), predicted(Form::Task, Quality::Good));
    auto j = json::parse(to_json(v).dump());
    auto back = verdict_from_json(j);
    CHECK(back.form == v.form);
    CHECK(back.quality == v.quality);
    CHECK(back.subcategory == v.subcategory);
    CHECK(back.form_probs == v.form_probs);

    auto bad_sum = j;
    bad_sum["form_probs"] = {0.7, 0.7};
    CHECK_THROWS_AS(verdict_from_json(bad_sum), DataError);
    auto out_of_range = j;
    out_of_range["quality_probs"] = {1.5, -0.5};
    CHECK_THROWS_AS(verdict_from_json(out_of_range), DataError);
    auto disagree = j;
    disagree["form"] = "Notice";
    CHECK_THROWS_AS(verdict_from_json(disagree), DataError);
    auto unknown = j;
    unknown["subcategory"] = "Gardening";
    CHECK_THROWS_AS(verdict_from_json(unknown), DataError);
    CHECK_THROWS(verdict_from_json(json::array()));
}

TEST_CASE("labeled examples recompute tokens from the raw text") {
    json j = {{"todo_raw", "TODO fix #12"}, {"form_label", "Task"}, {"quality_label", "Bad"}};
    auto e = labeled_example_from_json(j);
    CHECK(e.todo.tokens == std::vector<std::string>{"todo", "fix", "<link_id>"});
    CHECK(e.form_label == Form::Task);
    auto back = labeled_example_from_json(json::parse(to_json(e).dump()));
    CHECK(back.todo.tokens == e.todo.tokens);
    CHECK(back.quality_label == Quality::Bad);
}

TEST_CASE("content tokens skip placeholders, numbers and duplicates") {
    CHECK(content_tokens({"todo", "<info_tag>", "fix", "the", "fix", "42", "s390", "bug"}) ==
          std::vector<std::string>{"fix", "bug"});
}
