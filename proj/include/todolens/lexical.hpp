// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The todolens Authors

#pragma once

#include "todolens/classifier.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace todolens::classify {

struct LexicalHyperparams {
    double learning_rate = 0.9;
    int epochs = 200;
    double l2 = 1e-4;
    std::uint64_t seed = 7;
};

// Two-class softmax regression over L2-normalized unigram and bigram counts.
// Class 0 is the positive class (Task or Good).
struct LexicalModel {
    static constexpr int kFormatVersion = 1;

    Target target = Target::Form;
    std::vector<std::string> vocabulary; // sorted feature names
    std::map<std::string, std::size_t, std::less<>> index;
    std::array<std::vector<double>, 2> weights;
    std::array<double, 2> bias{0.0, 0.0};
    LexicalHyperparams hyperparams;
    double final_loss = 0.0;
    std::vector<double> loss_history; // one entry per epoch, before the update

    bool trained() const { return !vocabulary.empty() && weights[0].size() == vocabulary.size(); }
};

using SparseVector = std::vector<std::pair<std::size_t, double>>; // sorted by index

// Feature names: "t:" / "d:" namespaces for TODO and diff n-grams, bigrams
// joined with a space.
std::map<std::string, double> extract_features(const text::NormalizedTodo& todo, const text::NormalizedDiff& diff);

// Largest step size for which full-batch gradient descent cannot increase
// the loss: 1 / (0.5 * max ||[x, 1]||^2 + l2) with ||x|| = 1.
double stability_bound(double l2);

// A prepared training problem: the parameter layout is
// [w0 (V), w1 (V), b0, b1].
struct LexicalProblem {
    std::size_t vocabulary_size = 0;
    std::vector<SparseVector> x;
    std::vector<int> y; // class index, 0 = positive
    double l2 = 0.0;

    std::size_t parameter_count() const { return 2 * vocabulary_size + 2; }
};

LexicalProblem make_problem(const std::vector<LabeledExample>& dataset, Target target, double l2,
                            std::vector<std::string>* vocabulary = nullptr);

// Mean cross-entropy plus (l2 / 2) * ||w||^2 (biases unpenalized).
double loss_and_gradient(const LexicalProblem& problem, const std::vector<double>& params, std::vector<double>* grad);

// Throws InvalidArgument when fewer than two examples, one class only, or an
// empty vocabulary.
LexicalModel train_lexical(const std::vector<LabeledExample>& dataset, Target target,
                           const LexicalHyperparams& hyperparams);

// Probability pair for the model's target; OOV features are ignored.
ProbPair predict_proba(const LexicalModel& model, const text::NormalizedTodo& todo, const text::NormalizedDiff& diff);

// Combines a form model and a quality model into a verdict.
Verdict predict_lexical(const LexicalModel& form_model, const LexicalModel& quality_model,
                        const text::NormalizedTodo& todo, const text::NormalizedDiff& diff);

ordered_json to_json(const LexicalModel& model);
LexicalModel lexical_model_from_json(const json& j);
void save_model(const LexicalModel& model, const std::filesystem::path& path);
LexicalModel load_model(const std::filesystem::path& path);

// The form and quality models that `classify --model lexical` loads.
struct LexicalBundle {
    LexicalModel form;
    LexicalModel quality;
};
ordered_json to_json(const LexicalBundle& bundle);
LexicalBundle lexical_bundle_from_json(const json& j);
void save_bundle(const LexicalBundle& bundle, const std::filesystem::path& path);
LexicalBundle load_bundle(const std::filesystem::path& path);

} // namespace todolens::classify
