// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The todolens Authors

#include "todolens/classifier.hpp"

#include "todolens/error.hpp"
#include "todolens/pos.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>
#include <set>
#include <unordered_set>

namespace todolens::classify {
namespace {

bool has_digit(std::string_view w) {
    return std::any_of(w.begin(), w.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}
bool has_alpha(std::string_view w) {
    return std::any_of(w.begin(), w.end(), [](char c) { return std::isalpha(static_cast<unsigned char>(c)); });
}

bool is_vague(std::string_view w) {
    static const std::unordered_set<std::string_view> vague = {"something", "anything", "everything", "nothing",
                                                               "stuff",     "things",   "thing",      "me"};
    return vague.count(w) > 0;
}

// Words standing in for an object the reader has to find in the code.
bool is_deictic(std::string_view w) {
    return w == "this" || w == "that" || w == "these" || w == "those" || w == "it" || w == "them";
}

// Index of the first word after the TODO keyword and an adjacent info tag.
std::size_t body_start(const std::vector<std::string>& tokens) {
    std::size_t s = 0;
    while (s < tokens.size() && (tokens[s] == "todo" || tokens[s] == text::kInfoTag)) ++s;
    return s;
}

// Position of the word that decides mood, skipping adverbs and softeners
// such as "please", "also" or "need to". Returns tokens.size() when none.
std::size_t mood_word(const std::vector<std::string>& tokens, const std::vector<Tag>& tags, std::size_t s,
                      bool question) {
    static const std::unordered_set<std::string_view> hedges = {"maybe", "perhaps", "probably", "possibly",
                                                                "not", "t"};
    std::size_t p = s;
    while (p < tokens.size()) {
        if (tags[p] == Tag::Adv && !hedges.count(tokens[p])) {
            ++p;
        } else if (!question && (tokens[p] == "need" || tokens[p] == "needs") && p + 1 < tokens.size() &&
                   tokens[p + 1] == "to") {
            p += 2;
        } else if (!question && (tokens[p] == "must" || tokens[p] == "should") && p + 1 < tokens.size() &&
                   tags[p + 1] == Tag::Verb) {
            ++p;
        } else {
            break;
        }
    }
    return p;
}

// Looks for the verb's object before the clause ends.
bool has_object(const std::vector<std::string>& tokens, const std::vector<Tag>& tags, std::size_t verb,
                bool with_diff) {
    for (std::size_t q = verb + 1; q < tokens.size(); ++q) {
        const auto& w = tokens[q];
        switch (tags[q]) {
        case Tag::Sub:
        case Tag::Wh:
        case Tag::Modal:
        case Tag::Aux:
        case Tag::VerbFinite:
            return false;
        case Tag::Noun:
        case Tag::Gerund:
            if (!is_vague(w)) return true;
            break;
        case Tag::Placeholder:
            if (w == text::kLinkId) return true;
            break;
        case Tag::Demonstrative:
        case Tag::Pronoun:
            if (with_diff && is_deictic(w)) return true;
            break;
        default:
            break;
        }
    }
    return false;
}

bool has_diff(const text::NormalizedDiff* diff) { return diff && !diff->tokens.empty(); }

bool auto_generated(const std::vector<std::string>& tokens) {
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (tokens[i] == "autogenerated") return true;
        if (tokens[i] == "auto" && i + 1 < tokens.size() && tokens[i + 1] == "generated") return true;
    }
    return false;
}

Verdict degenerate(Form form, Quality quality, Source source) {
    ProbPair fp = form == Form::Task ? ProbPair{1.0, 0.0} : ProbPair{0.0, 1.0};
    ProbPair qp = quality == Quality::Good ? ProbPair{1.0, 0.0} : ProbPair{0.0, 1.0};
    return make_verdict(fp, qp, source);
}

ProbPair probs_from_json(const json& j, const char* name) {
    auto v = j.at(name).get<std::vector<double>>();
    if (v.size() != 2) throw DataError(std::string(name) + " must hold two probabilities");
    for (double p : v) {
        if (!(p >= 0.0 && p <= 1.0)) throw DataError(std::string(name) + " outside [0, 1]");
    }
    if (std::abs(v[0] + v[1] - 1.0) > 1e-9) throw DataError(std::string(name) + " does not sum to 1");
    return {v[0], v[1]};
}

} // namespace

Verdict make_verdict(ProbPair form_probs, ProbPair quality_probs, Source source) {
    Verdict v;
    v.form_probs = form_probs;
    v.quality_probs = quality_probs;
    v.form = form_probs[0] > form_probs[1] ? Form::Task : Form::Notice;
    v.quality = quality_probs[0] > quality_probs[1] ? Quality::Good : Quality::Bad;
    v.source = source;
    return v;
}

std::string category_of(Form form, Quality quality) {
    return std::string(form == Form::Task ? "Task" : "Notice") + (quality == Quality::Good ? "Good" : "Bad");
}

std::string_view to_string(Form f) { return f == Form::Task ? "Task" : "Notice"; }
std::string_view to_string(Quality q) { return q == Quality::Good ? "Good" : "Bad"; }
std::string_view to_string(Target t) { return t == Target::Form ? "form" : "quality"; }
std::string_view to_string(Source s) {
    switch (s) {
    case Source::Pos: return "pos";
    case Source::Rules: return "rules";
    case Source::Lexical: return "lexical";
    case Source::Bridge: return "bridge";
    }
    return "rules";
}

Form form_from_string(std::string_view s) {
    if (s == "Task") return Form::Task;
    if (s == "Notice") return Form::Notice;
    throw DataError("unknown form label '" + std::string(s) + "'");
}
Quality quality_from_string(std::string_view s) {
    if (s == "Good") return Quality::Good;
    if (s == "Bad") return Quality::Bad;
    throw DataError("unknown quality label '" + std::string(s) + "'");
}
Source source_from_string(std::string_view s) {
    for (auto src : {Source::Pos, Source::Rules, Source::Lexical, Source::Bridge}) {
        if (to_string(src) == s) return src;
    }
    throw DataError("unknown verdict source '" + std::string(s) + "'");
}
Target target_from_string(std::string_view s) {
    if (s == "form") return Target::Form;
    if (s == "quality") return Target::Quality;
    throw InvalidArgument("unknown target '" + std::string(s) + "' (expected form or quality)");
}

bool is_subcategory(std::string_view s) {
    return std::find(kTaskSubcategories.begin(), kTaskSubcategories.end(), s) != kTaskSubcategories.end() ||
           std::find(kNoticeSubcategories.begin(), kNoticeSubcategories.end(), s) != kNoticeSubcategories.end();
}

bool is_positive(const Verdict& v, Target target) {
    return target == Target::Form ? v.form == Form::Task : v.quality == Quality::Good;
}
bool is_positive(const LabeledExample& e, Target target) {
    return target == Target::Form ? e.form_label == Form::Task : e.quality_label == Quality::Good;
}
int gold_class(const LabeledExample& e, Target target) { return is_positive(e, target) ? 0 : 1; }

std::vector<std::string> content_tokens(const std::vector<std::string>& tokens) {
    std::vector<std::string> out;
    std::set<std::string_view> seen;
    for (const auto& t : tokens) {
        if (t == "todo" || t == "a" || t == "an" || t == "the" || text::is_placeholder(t)) continue;
        if (!has_alpha(t) || has_digit(t)) continue;
        if (seen.insert(t).second) out.push_back(t);
    }
    return out;
}

Verdict classify_pos(const text::NormalizedTodo& todo, const text::NormalizedDiff* diff) {
    const auto& tokens = todo.tokens;
    if (tokens.empty()) throw InvalidArgument("cannot classify an empty TODO");
    auto tags = pos_tag(tokens);
    bool with_diff = has_diff(diff);

    std::size_t keyword = 0;
    while (keyword < tokens.size() && tokens[keyword] != "todo") ++keyword;
    std::size_t after_keyword = keyword < tokens.size() ? tokens.size() - keyword - 1 : tokens.size();

    std::size_t s = body_start(tokens);
    std::size_t p = mood_word(tokens, tags, s, todo.question);
    bool task = false;
    bool object = false;
    if (p < tokens.size() && tags[p] == Tag::Verb) {
        task = true;
        object = has_object(tokens, tags, p, with_diff);
    } else {
        for (std::size_t i = s; i < tokens.size(); ++i) {
            if (tags[i] == Tag::Verb && has_object(tokens, tags, i, with_diff)) {
                task = true;
                object = true;
                break;
            }
        }
    }
    bool bad = (task && !object) || after_keyword < 3;
    return degenerate(task ? Form::Task : Form::Notice, bad ? Quality::Bad : Quality::Good, Source::Pos);
}

Verdict classify_rules(const text::NormalizedTodo& todo, const text::NormalizedDiff* diff, int min_content_tokens) {
    const auto& tokens = todo.tokens;
    if (tokens.empty()) throw InvalidArgument("cannot classify an empty TODO");
    auto tags = pos_tag(tokens);
    auto content = content_tokens(tokens).size();
    auto enough = content >= static_cast<std::size_t>(min_content_tokens);
    std::size_t s = body_start(tokens);

    if (auto_generated(tokens)) return degenerate(Form::Notice, Quality::Bad, Source::Rules);
    if (s < tokens.size() && tokens[s] == text::kLinkId && !enough) {
        return degenerate(Form::Notice, Quality::Bad, Source::Rules);
    }

    std::size_t p = mood_word(tokens, tags, s, todo.question);
    if (p < tokens.size() && tags[p] == Tag::Verb) {
        bool good = enough && has_object(tokens, tags, p, has_diff(diff));
        return degenerate(Form::Task, good ? Quality::Good : Quality::Bad, Source::Rules);
    }

    bool statement = todo.question;
    for (std::size_t i = s; i < tokens.size() && !statement; ++i) {
        statement = tags[i] == Tag::VerbFinite || tags[i] == Tag::Aux || tags[i] == Tag::Modal || tags[i] == Tag::Wh;
    }
    return degenerate(Form::Notice, enough && statement ? Quality::Good : Quality::Bad, Source::Rules);
}

Verdict tag_subcategory(const text::NormalizedTodo& todo, Verdict verdict) {
    const auto& tokens = todo.tokens;
    std::set<std::string_view> words(tokens.begin(), tokens.end());
    auto any = [&](std::initializer_list<std::string_view> list) {
        return std::any_of(list.begin(), list.end(), [&](std::string_view w) { return words.count(w) > 0; });
    };
    auto any_prefix = [&](std::initializer_list<std::string_view> prefixes) {
        for (const auto& t : tokens) {
            for (auto p : prefixes) {
                if (t.starts_with(p)) return true;
            }
        }
        return false;
    };
    auto follows = [&](std::string_view a, std::string_view b) {
        for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
            if (tokens[i] == a && tokens[i + 1] == b) return true;
        }
        return false;
    };

    std::string tag;
    if (verdict.form == Form::Task) {
        if (any_prefix({"test", "unittest"})) {
            tag = "Testing";
        } else if (any({"workaround", "workarounds", "hack", "hacks", "hacky", "kludge", "temporary", "temporarily"}) ||
                   (any({"remove", "delete", "drop", "replace"}) && any({"flag", "flags", "temp", "shim"}))) {
            tag = "Remove Workaround";
        } else if (any({"uncomment", "reenable", "commented", "enable", "restore"}) || follows("re", "enable")) {
            tag = "Re-enable Commented Code";
        } else if (any({"document", "documentation", "doc", "docs", "javadoc", "explain", "describe"})) {
            tag = "Documentation";
        } else if (any({"refactor", "refactoring", "simplify", "optimize", "restructure", "rewrite", "rework",
                        "generalize", "consolidate", "extract", "rename", "redesign", "complexity"})) {
            tag = "Refactoring";
        } else if (any({"unused", "obsolete", "dead", "cleanup", "clean", "tidy", "move", "delete", "remove",
                        "unnecessary", "redundant"})) {
            tag = "Code Hygiene";
        } else if (any({"fix", "fixme", "bug", "bugs", "broken", "crash", "leak"})) {
            tag = "Bug Fix";
        } else if (any({"confirm", "verify", "check", "investigate", "look", "ensure", "figure", "validate"})) {
            tag = "Problem Confirmation";
        } else {
            tag = "Feature Request";
        }
    } else {
        if (auto_generated(tokens)) {
            tag = "Auto-generated TODOs";
        } else if (content_tokens(tokens).size() <= 1) {
            tag = "Indecipherable TODOs";
        } else if (todo.question) {
            tag = "Throw pending question";
        } else if (any({"fail", "fails", "failing", "failed", "broken", "bug", "bugs", "issue", "issues", "error",
                        "errors", "problem", "regression", "wrong", "crash", "crashes", "leak", "hack", "incorrect",
                        "doesn", "isn", "won", "workaround"}) ||
                   words.count(std::string(text::kLinkId))) {
            tag = "Highlight existing issue";
        } else if (any({"better", "could", "maybe", "perhaps", "consider", "instead", "prefer", "ideally", "suggest",
                        "alternatively", "might", "nicer", "cleaner", "faster"})) {
            tag = "Provide suggestion";
        } else {
            tag = "Analyze current situation";
        }
    }
    verdict.subcategory = std::move(tag);
    return verdict;
}

EvalMetrics evaluate(const std::vector<Verdict>& predictions, const std::vector<LabeledExample>& gold,
                     Target target) {
    if (predictions.size() != gold.size()) throw InvalidArgument("predictions and gold labels differ in length");
    if (predictions.empty()) throw InvalidArgument("cannot evaluate an empty prediction set");
    EvalMetrics m;
    for (std::size_t i = 0; i < gold.size(); ++i) {
        bool pred = is_positive(predictions[i], target);
        bool truth = is_positive(gold[i], target);
        if (pred && truth) ++m.tp;
        else if (pred) ++m.fp;
        else if (truth) ++m.fn;
        else ++m.tn;
    }
    m.accuracy = static_cast<double>(m.tp + m.tn) / static_cast<double>(m.total());
    m.precision_undefined = m.tp + m.fp == 0;
    m.recall_undefined = m.tp + m.fn == 0;
    m.precision = m.precision_undefined ? 0.0 : static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fp);
    m.recall = m.recall_undefined ? 0.0 : static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fn);
    m.f1 = m.precision + m.recall > 0 ? 2 * m.precision * m.recall / (m.precision + m.recall) : 0.0;
    return m;
}

std::uint64_t uniform_index(std::uint64_t random, std::uint64_t n) {
    __extension__ using u128 = unsigned __int128;
    return static_cast<std::uint64_t>((static_cast<u128>(random) * n) >> 64);
}

std::vector<int> assign_folds(const std::vector<LabeledExample>& dataset, int k, Target target, std::uint64_t seed) {
    if (k < 2 || static_cast<std::size_t>(k) > dataset.size()) {
        throw InvalidArgument("k must be between 2 and the dataset size (" + std::to_string(dataset.size()) + ")");
    }
    std::mt19937_64 rng(seed);
    std::vector<int> fold_of(dataset.size(), -1);
    std::size_t next = 0;
    for (int cls : {0, 1}) {
        std::vector<std::size_t> group;
        for (std::size_t i = 0; i < dataset.size(); ++i) {
            if (gold_class(dataset[i], target) == cls) group.push_back(i);
        }
        for (std::size_t i = group.size(); i > 1; --i) {
            std::swap(group[i - 1], group[uniform_index(rng(), i)]);
        }
        for (auto idx : group) fold_of[idx] = static_cast<int>(next++ % static_cast<std::size_t>(k));
    }
    return fold_of;
}

CrossValidation crossvalidate(const std::vector<LabeledExample>& dataset, int k, const Trainer& trainer,
                              Target target, std::uint64_t seed) {
    CrossValidation cv;
    cv.fold_of = assign_folds(dataset, k, target, seed);
    for (int f = 0; f < k; ++f) {
        std::vector<LabeledExample> train;
        std::vector<LabeledExample> test;
        for (std::size_t i = 0; i < dataset.size(); ++i) {
            (cv.fold_of[i] == f ? test : train).push_back(dataset[i]);
        }
        auto predict = trainer(train);
        std::vector<Verdict> preds;
        preds.reserve(test.size());
        for (const auto& e : test) preds.push_back(predict(e));
        cv.folds.push_back(evaluate(preds, test, target));
    }

    auto rates = [](const EvalMetrics& m) { return std::array<double, 4>{m.accuracy, m.precision, m.recall, m.f1}; };
    std::array<double, 4> sum{};
    for (const auto& m : cv.folds) {
        auto r = rates(m);
        for (int i = 0; i < 4; ++i) sum[i] += r[i];
        cv.mean.tp += m.tp;
        cv.mean.fp += m.fp;
        cv.mean.tn += m.tn;
        cv.mean.fn += m.fn;
        cv.mean.precision_undefined |= m.precision_undefined;
        cv.mean.recall_undefined |= m.recall_undefined;
    }
    std::array<double, 4> mean{};
    for (int i = 0; i < 4; ++i) mean[i] = sum[i] / k;
    std::array<double, 4> var{};
    for (const auto& m : cv.folds) {
        auto r = rates(m);
        for (int i = 0; i < 4; ++i) var[i] += (r[i] - mean[i]) * (r[i] - mean[i]);
    }
    cv.mean.accuracy = mean[0];
    cv.mean.precision = mean[1];
    cv.mean.recall = mean[2];
    cv.mean.f1 = mean[3];
    cv.stdev.accuracy = std::sqrt(var[0] / (k - 1));
    cv.stdev.precision = std::sqrt(var[1] / (k - 1));
    cv.stdev.recall = std::sqrt(var[2] / (k - 1));
    cv.stdev.f1 = std::sqrt(var[3] / (k - 1));
    return cv;
}

ordered_json to_json(const Verdict& v) {
    ordered_json j;
    j["form_probs"] = {v.form_probs[0], v.form_probs[1]};
    j["quality_probs"] = {v.quality_probs[0], v.quality_probs[1]};
    j["form"] = to_string(v.form);
    j["quality"] = to_string(v.quality);
    j["subcategory"] = v.subcategory ? ordered_json(*v.subcategory) : ordered_json(nullptr);
    j["source"] = to_string(v.source);
    return j;
}

Verdict verdict_from_json(const json& j) {
    if (!j.is_object()) throw DataError("verdict must be a JSON object");
    auto v = make_verdict(probs_from_json(j, "form_probs"), probs_from_json(j, "quality_probs"),
                          source_from_string(j.at("source").get<std::string>()));
    if (form_from_string(j.at("form").get<std::string>()) != v.form ||
        quality_from_string(j.at("quality").get<std::string>()) != v.quality) {
        throw DataError("verdict labels disagree with their probabilities");
    }
    if (auto it = j.find("subcategory"); it != j.end() && !it->is_null()) {
        auto sub = it->get<std::string>();
        if (!is_subcategory(sub)) throw DataError("unknown subcategory '" + sub + "'");
        v.subcategory = sub;
    }
    return v;
}

ordered_json to_json(const EvalMetrics& m) {
    ordered_json j;
    j["accuracy"] = m.accuracy;
    j["precision"] = m.precision;
    j["recall"] = m.recall;
    j["f1"] = m.f1;
    j["tp"] = m.tp;
    j["fp"] = m.fp;
    j["tn"] = m.tn;
    j["fn"] = m.fn;
    j["precision_undefined"] = m.precision_undefined;
    j["recall_undefined"] = m.recall_undefined;
    return j;
}

LabeledExample labeled_example_from_json(const json& j) {
    if (!j.is_object()) throw DataError("labeled example must be a JSON object");
    LabeledExample e;
    e.todo_raw = j.value("todo_raw", std::string{});
    if (auto it = j.find("todo_tokens"); it != j.end() && !it->is_null()) {
        e.todo.tokens = it->get<std::vector<std::string>>();
        for (const auto& t : e.todo.tokens) {
            if (text::is_placeholder(t)) ++e.todo.placeholder_counts[t];
        }
        e.todo.question = e.todo_raw.find('?') != std::string::npos;
    } else if (!e.todo_raw.empty()) {
        e.todo = text::normalize_todo(e.todo_raw);
    } else {
        throw DataError("labeled example needs todo_raw or todo_tokens");
    }
    if (auto it = j.find("diff_tokens"); it != j.end() && !it->is_null()) {
        e.diff.tokens = it->get<std::vector<std::string>>();
    }
    e.form_label = form_from_string(j.at("form_label").get<std::string>());
    e.quality_label = quality_from_string(j.at("quality_label").get<std::string>());
    if (auto it = j.find("subcategory"); it != j.end() && !it->is_null()) {
        auto sub = it->get<std::string>();
        if (!is_subcategory(sub)) throw DataError("unknown subcategory '" + sub + "'");
        e.subcategory = sub;
    }
    e.repo_id = j.value("repo_id", std::string{});
    e.commit_id = j.value("commit_id", std::string{});
    return e;
}

ordered_json to_json(const LabeledExample& e) {
    ordered_json j;
    j["todo_raw"] = e.todo_raw;
    j["todo_tokens"] = e.todo.tokens;
    j["diff_tokens"] = e.diff.tokens;
    j["form_label"] = to_string(e.form_label);
    j["quality_label"] = to_string(e.quality_label);
    j["subcategory"] = e.subcategory ? ordered_json(*e.subcategory) : ordered_json(nullptr);
    j["repo_id"] = e.repo_id;
    j["commit_id"] = e.commit_id;
    return j;
}

std::vector<LabeledExample> read_labeled_dataset(const std::filesystem::path& path) {
    std::vector<LabeledExample> out;
    read_jsonl_file(path, [&](const json& j, std::size_t) { out.push_back(labeled_example_from_json(j)); });
    return out;
}

} // namespace todolens::classify
