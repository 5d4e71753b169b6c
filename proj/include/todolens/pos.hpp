// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The todolens Authors

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace todolens::classify {

// Coarse Penn-style tags.
enum class Tag : std::uint8_t {
    Noun,        // NN, NNS
    Verb,        // VB base form
    VerbFinite,  // VBZ, VBD, VBP
    Participle,  // VBN
    Gerund,      // VBG
    Aux,         // be/have/do forms
    Modal,       // MD
    Adj,         // JJ
    Adv,         // RB
    Det,         // DT
    Demonstrative,
    Pronoun,     // PRP
    Prep,        // IN
    To,          // TO
    Conj,        // CC
    Sub,         // subordinating conjunction / clause boundary
    Wh,          // WDT, WP, WRB
    Placeholder, // <info_tag>, <commit_id>, <link_id>
    Number,
    Other,
};

std::string_view to_string(Tag t);

// Lexicon flags for a word; a word may be both a verb and a noun ("fix").
struct LexEntry {
    bool verb = false; // base form listed as a verb
    bool noun = false;
    Tag closed = Tag::Other; // closed-class tag, or Other
};

LexEntry lookup(std::string_view word);

// Base-form verb behind an inflected form ("makes" -> "make"), or empty.
std::string verb_stem(std::string_view word);

// Tags lowercase tokens in context: sentence-initial and post-"to"/modal
// ambiguous words read as verbs, after determiners as nouns. Unknown words
// fall back to suffix rules and then to Noun.
std::vector<Tag> pos_tag(const std::vector<std::string>& tokens);

// Size of the built-in lexicon.
std::size_t lexicon_size();

} // namespace todolens::classify
