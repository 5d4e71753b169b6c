// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The todolens Authors

#include "todolens/lexical.hpp"

#include "todolens/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace todolens::classify {
namespace {

void add_ngrams(std::map<std::string, double>& out, const std::vector<std::string>& tokens, std::string_view ns) {
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        out[std::string(ns) + tokens[i]] += 1.0;
        if (i + 1 < tokens.size()) out[std::string(ns) + tokens[i] + " " + tokens[i + 1]] += 1.0;
    }
}

SparseVector vectorize(const std::map<std::string, double>& features,
                       const std::map<std::string, std::size_t, std::less<>>& index) {
    SparseVector x;
    double norm = 0.0;
    for (const auto& [name, count] : features) {
        auto it = index.find(name);
        if (it == index.end()) continue;
        x.emplace_back(it->second, count);
        norm += count * count;
    }
    if (norm > 0) {
        norm = std::sqrt(norm);
        for (auto& [i, v] : x) v /= norm;
    }
    std::sort(x.begin(), x.end());
    return x;
}

// Numerically stable two-class softmax.
ProbPair softmax(double z0, double z1) {
    double m = std::max(z0, z1);
    double e0 = std::exp(z0 - m);
    double e1 = std::exp(z1 - m);
    return {e0 / (e0 + e1), e1 / (e0 + e1)};
}

double dot(const SparseVector& x, const double* w) {
    double s = 0.0;
    for (const auto& [i, v] : x) s += w[i] * v;
    return s;
}

void unpack(LexicalModel& m, const std::vector<double>& p) {
    auto v = m.vocabulary.size();
    m.weights[0].assign(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(v));
    m.weights[1].assign(p.begin() + static_cast<std::ptrdiff_t>(v), p.begin() + static_cast<std::ptrdiff_t>(2 * v));
    m.bias = {p[2 * v], p[2 * v + 1]};
}

} // namespace

std::map<std::string, double> extract_features(const text::NormalizedTodo& todo, const text::NormalizedDiff& diff) {
    std::map<std::string, double> out;
    add_ngrams(out, todo.tokens, "t:");
    add_ngrams(out, diff.tokens, "d:");
    return out;
}

double stability_bound(double l2) { return 1.0 / (0.5 * 2.0 + l2); }

LexicalProblem make_problem(const std::vector<LabeledExample>& dataset, Target target, double l2,
                            std::vector<std::string>* vocabulary) {
    std::vector<std::map<std::string, double>> feats;
    std::set<std::string> names;
    for (const auto& e : dataset) {
        feats.push_back(extract_features(e.todo, e.diff));
        for (const auto& [name, count] : feats.back()) names.insert(name);
    }
    std::map<std::string, std::size_t, std::less<>> index;
    for (const auto& n : names) index.emplace(n, index.size());

    LexicalProblem p;
    p.vocabulary_size = names.size();
    p.l2 = l2;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        p.x.push_back(vectorize(feats[i], index));
        p.y.push_back(gold_class(dataset[i], target));
    }
    if (vocabulary) vocabulary->assign(names.begin(), names.end());
    return p;
}

double loss_and_gradient(const LexicalProblem& problem, const std::vector<double>& params, std::vector<double>* grad) {
    const auto v = problem.vocabulary_size;
    if (params.size() != problem.parameter_count()) throw InvalidArgument("parameter vector has the wrong size");
    if (problem.x.empty()) throw InvalidArgument("empty training problem");
    const double* w0 = params.data();
    const double* w1 = params.data() + v;
    const double n = static_cast<double>(problem.x.size());

    if (grad) grad->assign(params.size(), 0.0);
    double loss = 0.0;
    for (std::size_t i = 0; i < problem.x.size(); ++i) {
        const auto& x = problem.x[i];
        auto p = softmax(dot(x, w0) + params[2 * v], dot(x, w1) + params[2 * v + 1]);
        int y = problem.y[i];
        loss -= std::log(std::max(p[y], 1e-300));
        if (!grad) continue;
        double r0 = (p[0] - (y == 0 ? 1.0 : 0.0)) / n;
        double r1 = (p[1] - (y == 1 ? 1.0 : 0.0)) / n;
        for (const auto& [j, xv] : x) {
            (*grad)[j] += r0 * xv;
            (*grad)[v + j] += r1 * xv;
        }
        (*grad)[2 * v] += r0;
        (*grad)[2 * v + 1] += r1;
    }
    loss /= n;
    double reg = 0.0;
    for (std::size_t j = 0; j < 2 * v; ++j) {
        reg += params[j] * params[j];
        if (grad) (*grad)[j] += problem.l2 * params[j];
    }
    return loss + 0.5 * problem.l2 * reg;
}

LexicalModel train_lexical(const std::vector<LabeledExample>& dataset, Target target,
                           const LexicalHyperparams& hyperparams) {
    if (dataset.size() < 2) throw InvalidArgument("training needs at least two examples");
    bool pos = false;
    bool neg = false;
    for (const auto& e : dataset) (is_positive(e, target) ? pos : neg) = true;
    if (!pos || !neg) throw InvalidArgument("training data holds a single " + std::string(to_string(target)) + " class");
    if (!(hyperparams.learning_rate > 0) || hyperparams.epochs < 0 || !(hyperparams.l2 >= 0)) {
        throw InvalidArgument("invalid hyperparameters");
    }

    LexicalModel m;
    m.target = target;
    m.hyperparams = hyperparams;
    auto problem = make_problem(dataset, target, hyperparams.l2, &m.vocabulary);
    if (m.vocabulary.empty()) throw InvalidArgument("training data yields an empty vocabulary");
    for (std::size_t i = 0; i < m.vocabulary.size(); ++i) m.index.emplace(m.vocabulary[i], i);

    std::mt19937_64 rng(hyperparams.seed);
    std::vector<double> params(problem.parameter_count(), 0.0);
    for (std::size_t j = 0; j < 2 * problem.vocabulary_size; ++j) {
        double u = static_cast<double>(rng() >> 11) * 0x1p-53; // [0, 1)
        params[j] = (u - 0.5) * 0.02;
    }

    std::vector<double> grad;
    for (int epoch = 0; epoch < hyperparams.epochs; ++epoch) {
        m.loss_history.push_back(loss_and_gradient(problem, params, &grad));
        for (std::size_t j = 0; j < params.size(); ++j) params[j] -= hyperparams.learning_rate * grad[j];
    }
    m.final_loss = loss_and_gradient(problem, params, nullptr);
    unpack(m, params);
    return m;
}

ProbPair predict_proba(const LexicalModel& model, const text::NormalizedTodo& todo, const text::NormalizedDiff& diff) {
    if (!model.trained()) throw InvalidArgument("lexical model is not trained");
    auto x = vectorize(extract_features(todo, diff), model.index);
    return softmax(dot(x, model.weights[0].data()) + model.bias[0], dot(x, model.weights[1].data()) + model.bias[1]);
}

Verdict predict_lexical(const LexicalModel& form_model, const LexicalModel& quality_model,
                        const text::NormalizedTodo& todo, const text::NormalizedDiff& diff) {
    if (form_model.target != Target::Form || quality_model.target != Target::Quality) {
        throw InvalidArgument("expected a form model and a quality model");
    }
    return make_verdict(predict_proba(form_model, todo, diff), predict_proba(quality_model, todo, diff),
                        Source::Lexical);
}

ordered_json to_json(const LexicalModel& model) {
    ordered_json j;
    j["format_version"] = LexicalModel::kFormatVersion;
    j["kind"] = "lexical";
    j["target"] = to_string(model.target);
    j["vocabulary"] = model.vocabulary;
    j["weights"] = {model.weights[0], model.weights[1]};
    j["bias"] = {model.bias[0], model.bias[1]};
    ordered_json hp;
    hp["learning_rate"] = model.hyperparams.learning_rate;
    hp["epochs"] = model.hyperparams.epochs;
    hp["l2"] = model.hyperparams.l2;
    hp["seed"] = model.hyperparams.seed;
    j["hyperparams"] = std::move(hp);
    j["final_loss"] = model.final_loss;
    return j;
}

LexicalModel lexical_model_from_json(const json& j) {
    if (j.value("format_version", 0) != LexicalModel::kFormatVersion) {
        throw DataError("unsupported model format_version");
    }
    LexicalModel m;
    m.target = target_from_string(j.at("target").get<std::string>());
    m.vocabulary = j.at("vocabulary").get<std::vector<std::string>>();
    const auto& w = j.at("weights");
    if (!w.is_array() || w.size() != 2) throw DataError("model weights must hold two rows");
    m.weights[0] = w[0].get<std::vector<double>>();
    m.weights[1] = w[1].get<std::vector<double>>();
    auto b = j.at("bias").get<std::vector<double>>();
    if (b.size() != 2) throw DataError("model bias must hold two values");
    m.bias = {b[0], b[1]};
    if (m.weights[0].size() != m.vocabulary.size() || m.weights[1].size() != m.vocabulary.size()) {
        throw DataError("model weight length differs from vocabulary size");
    }
    const auto& hp = j.at("hyperparams");
    m.hyperparams.learning_rate = hp.at("learning_rate").get<double>();
    m.hyperparams.epochs = hp.at("epochs").get<int>();
    m.hyperparams.l2 = hp.at("l2").get<double>();
    m.hyperparams.seed = hp.at("seed").get<std::uint64_t>();
    m.final_loss = j.value("final_loss", 0.0);
    for (std::size_t i = 0; i < m.vocabulary.size(); ++i) {
        if (!m.index.emplace(m.vocabulary[i], i).second) throw DataError("duplicate vocabulary entry");
    }
    return m;
}

void save_model(const LexicalModel& model, const std::filesystem::path& path) {
    write_file(path, to_json(model).dump(2) + "\n");
}

LexicalModel load_model(const std::filesystem::path& path) {
    try {
        return lexical_model_from_json(json::parse(read_file(path)));
    } catch (const json::exception& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

ordered_json to_json(const LexicalBundle& bundle) {
    ordered_json j;
    j["format_version"] = LexicalModel::kFormatVersion;
    j["kind"] = "lexical-bundle";
    j["form"] = to_json(bundle.form);
    j["quality"] = to_json(bundle.quality);
    return j;
}

LexicalBundle lexical_bundle_from_json(const json& j) {
    if (j.value("kind", "") != "lexical-bundle") throw DataError("not a lexical model bundle");
    if (j.value("format_version", 0) != LexicalModel::kFormatVersion) {
        throw DataError("unsupported model format_version");
    }
    LexicalBundle b{lexical_model_from_json(j.at("form")), lexical_model_from_json(j.at("quality"))};
    if (b.form.target != Target::Form || b.quality.target != Target::Quality) {
        throw DataError("bundle targets must be form and quality");
    }
    return b;
}

void save_bundle(const LexicalBundle& bundle, const std::filesystem::path& path) {
    write_file(path, to_json(bundle).dump(2) + "\n");
}

LexicalBundle load_bundle(const std::filesystem::path& path) {
    try {
        return lexical_bundle_from_json(json::parse(read_file(path)));
    } catch (const json::exception& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

} // namespace todolens::classify
