// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The todolens Authors

#include "todolens/pos.hpp"

#include "todolens/normalizer.hpp"

#include <algorithm>
#include <cctype>
#include <iterator>
#include <unordered_map>
#include <utility>

namespace todolens::classify {
namespace {

// Base-form verbs common in code comments.
constexpr std::string_view kVerbs[] = {
    "abort", "abstract", "accept", "access", "add", "adjust", "align", "allocate", "allow", "analyze",
    "append", "apply", "approximate", "archive", "ask", "assert", "assess", "assign", "assume", "attach",
    "authenticate", "authorize", "avoid", "backport", "batch", "bind", "block", "boot", "break", "bring",
    "buffer", "build", "bump", "cache", "calculate", "call", "cancel", "capitalize", "capture", "cast",
    "catch", "change", "check", "choose", "clarify", "clean", "clear", "clone", "close", "collapse",
    "collect", "combine", "comment", "commit", "compare", "compile", "complete", "compress", "compute",
    "configure", "confirm", "connect", "consider", "consolidate", "contain", "continue", "control",
    "convert", "copy", "correct", "count", "cover", "create", "debug", "decide", "declare", "decode",
    "decompress", "decouple", "decrypt", "dedupe", "define", "delegate", "delete", "deny", "deploy",
    "deprecate", "describe", "deserialize", "detach", "detect", "determine", "disable", "disallow",
    "discard", "dispatch", "display", "dispose", "do", "document", "download", "downgrade", "drop",
    "dump", "duplicate", "emit", "enable", "encode", "encrypt", "enforce", "ensure", "estimate",
    "evaluate", "evict", "exclude", "execute", "expand", "expect", "expire", "explain", "export",
    "expose", "extend", "extract", "factor", "fail", "fetch", "figure", "fill", "filter", "finalize",
    "find", "finish", "fix", "flatten", "flush", "fold", "follow", "force", "fork", "format", "forward",
    "free", "generalize", "generate", "get", "give", "grant", "group", "guard", "handle", "hash",
    "hide", "hook", "ignore", "implement", "import", "improve", "include", "increase", "index",
    "infer", "initialize", "inject", "inline", "insert", "inspect", "install", "integrate",
    "invalidate", "investigate", "invoke", "iterate", "join", "keep", "kill", "launch", "let", "limit",
    "link", "load", "localize", "lock", "log", "look", "loop", "lower", "maintain", "make", "manage",
    "map", "mark", "match", "measure", "merge", "migrate", "mock", "modify", "monitor", "mount", "move",
    "normalize", "notify", "open", "optimize", "order", "override", "pad", "parallelize", "parse",
    "pass", "patch", "pause", "persist", "pick", "plug", "poll", "populate", "port", "prefetch",
    "prepend", "preserve", "prevent", "print", "process", "profile", "propagate", "protect", "provide",
    "prune", "publish", "pull", "purge", "push", "put", "query", "queue", "raise", "read", "rebuild",
    "recompute", "reconsider", "record", "recover", "redesign", "redirect", "redo", "reduce",
    "reenable", "refactor", "refine", "refresh", "register", "reimplement", "reject", "release",
    "reload", "remove", "rename", "render", "reorder", "repair", "replace", "report", "request",
    "require", "reset", "resize", "resolve", "restore", "restrict", "restructure", "resume", "rethink",
    "retry", "return", "reuse", "revert", "review", "revisit", "rewrite", "rework", "rollback", "round",
    "route", "run", "sanitize", "save", "scan", "schedule", "search", "see", "select", "send",
    "separate", "serialize", "set", "share", "shorten", "show", "shuffle", "shut", "sign", "simplify",
    "skip", "sort", "spawn", "specify", "speed", "split", "start", "stop", "store", "stream", "strip",
    "stub", "submit", "support", "suppress", "swap", "switch", "sync", "synchronize", "take", "tell",
    "terminate", "test", "throttle", "throw", "tidy", "track", "translate", "traverse", "trigger",
    "trim", "truncate", "try", "tune", "tweak", "uncomment", "undo", "unify", "unlock", "unregister",
    "unwrap", "update", "upgrade", "upload", "use", "validate", "verify", "visit", "wait", "walk",
    "warn", "watch", "wire", "wrap", "write"};

// Nouns, including words that double as verbs ("fix", "test").
constexpr std::string_view kNouns[] = {
    "access", "adapter", "address", "algorithm", "annotation", "api", "arg", "argument", "array",
    "assertion", "attribute", "batch", "behavior", "behaviour", "bit", "block", "body", "boolean",
    "branch", "buffer", "bug", "build", "builder", "button", "byte", "cache", "call", "callback",
    "case", "cast", "cell", "change", "channel", "char", "character", "check", "child", "children",
    "class", "cleanup", "client", "code", "collection", "column", "comment", "commit", "compiler",
    "complexity", "component", "condition", "config", "configuration", "connection", "constant",
    "constructor", "content", "context", "control", "copy", "count", "counter", "crash", "cursor",
    "data", "database", "date", "default", "dependency", "deprecation", "device", "diff", "directory",
    "doc", "docs", "document", "documentation", "driver", "edge", "element", "encoding", "entry",
    "environment", "error", "event", "exception", "extension", "factory", "failure", "fallback",
    "feature", "field", "file", "filter", "fix", "flag", "folder", "format", "frame", "function",
    "gen", "graph", "group", "guard", "handler", "hack", "hash", "header", "hook", "host", "icon", "id",
    "image", "implementation", "index", "input", "instance", "interface", "issue", "item", "javadoc",
    "job", "key", "kernel", "language", "layout", "leak", "length", "library", "limit", "line", "link",
    "list", "listener", "lock", "log", "logger", "logic", "loop", "manager", "map", "memory", "message",
    "method", "metric", "migration", "mock", "mode", "model", "module", "name", "network", "node",
    "null", "number", "object", "offset", "option", "order", "output", "overload", "package", "packet",
    "page", "parameter", "param", "parent", "parser", "patch", "path", "pattern", "payload",
    "performance", "permission", "platform", "plugin", "pointer", "policy", "pool", "port", "position",
    "problem", "process", "project", "property", "protocol", "proxy", "query", "queue", "range",
    "record", "reference", "regression", "release", "repo", "repository", "request", "resource",
    "response", "restriction", "result", "return", "review", "root", "row", "rule", "runtime", "schema",
    "scope", "screen", "security", "server", "service", "session", "set", "setting", "signal", "size",
    "socket", "solution", "state", "status", "storage", "stream", "string", "stub", "style", "suite",
    "support", "switch", "system", "table", "task", "template", "test", "text", "thread", "threshold",
    "time", "timeout", "timer", "token", "tree", "type", "unit", "url", "user", "value", "variable",
    "vector", "version", "view", "warning", "widget", "window", "worker", "workaround", "wrapper"};

constexpr std::string_view kAdjectives[] = {
    "able", "actual", "additional", "another", "appropriate", "async", "available", "bad", "best",
    "better", "big", "broken", "cheap", "clean", "complex", "consistent", "correct", "current", "dead",
    "different", "dirty", "duplicate", "dynamic", "efficient", "empty", "entire", "expensive", "extra",
    "external", "false", "fast", "faster", "final", "first", "full", "generic", "global", "good",
    "hacky", "high", "inconsistent", "inefficient", "initial", "internal", "invalid", "large", "last",
    "legacy", "less", "likely", "local", "low", "many", "missing", "more", "most", "multiple", "native",
    "necessary", "new", "next", "nice", "non", "obsolete", "old", "optional", "other", "possible",
    "previous", "private", "proper", "public", "quick", "ready", "real", "redundant", "related",
    "relevant", "right", "safe", "same", "separate", "several", "short", "similar", "simple", "single",
    "slow", "slower", "small", "specific", "stable", "static", "sure", "temp", "temporary", "true",
    "ugly", "unable", "unlikely", "unnecessary", "unsafe", "unstable", "unused", "valid", "whole",
    "worse", "wrong"};

constexpr std::string_view kAdverbs[] = {
    "again", "almost", "already", "also", "alternatively", "always", "anyway", "away", "back", "else",
    "even", "eventually", "ever", "here", "ideally", "instead", "just", "later", "maybe", "much",
    "never", "not", "now", "often", "only", "otherwise", "perhaps", "please", "possibly", "probably",
    "quite", "rather", "really", "somehow", "sometimes", "soon", "still", "t", "then", "there",
    "together", "too", "very", "yet"};

constexpr std::string_view kDeterminers[] = {"a",   "an",  "the", "some",  "any",  "no",   "every",
                                             "each", "all", "both", "either", "neither", "such", "our",
                                             "my",  "your", "their", "its", "his", "her"};
constexpr std::string_view kDemonstratives[] = {"this", "that", "these", "those"};
constexpr std::string_view kPronouns[] = {"i",        "we",        "you",      "he",         "she",
                                          "it",       "they",      "me",       "us",         "him",
                                          "them",     "something", "anything", "everything", "nothing",
                                          "someone",  "anyone",    "everyone", "somebody",   "one"};
constexpr std::string_view kPrepositions[] = {
    "about",  "across", "against", "among",  "around", "as",     "at",   "behind", "beyond", "by",
    "down",   "during", "except",  "for",    "from",   "in",     "inside", "into", "like",   "near",
    "of",     "off",    "on",      "onto",   "out",    "outside", "over", "per",  "through", "toward",
    "towards", "under", "up",      "upon",   "via",    "with",   "within", "without"};
constexpr std::string_view kConjunctions[] = {"and", "or", "but", "nor"};
constexpr std::string_view kSubordinators[] = {"if",    "when",   "whenever", "after",  "before",   "once",
                                               "since", "because", "until",   "unless", "while",    "though",
                                               "although", "whether", "so",   "than",   "till"};
constexpr std::string_view kWh[] = {"what", "which", "who", "whom", "whose", "why", "how", "where"};
constexpr std::string_view kModals[] = {"can",   "could", "may",    "might",  "must",  "shall", "should",
                                        "will",  "would", "ought",  "cannot", "shouldn", "couldn",
                                        "wouldn", "won",  "mustn"};
constexpr std::string_view kAux[] = {"be",    "is",    "am",   "are",  "was",   "were",  "been",
                                     "being", "has",   "have", "had",  "having", "does", "did",
                                     "doesn", "don",   "didn", "isn",  "aren",  "wasn", "weren",
                                     "hasn",  "haven", "hadn"};

struct Irregular {
    std::string_view form;
    std::string_view stem;
    Tag tag;
};
constexpr Irregular kIrregular[] = {
    {"made", "make", Tag::Participle},   {"done", "do", Tag::Participle},      {"got", "get", Tag::VerbFinite},
    {"gotten", "get", Tag::Participle},  {"ran", "run", Tag::VerbFinite},      {"written", "write", Tag::Participle},
    {"wrote", "write", Tag::VerbFinite}, {"taken", "take", Tag::Participle},   {"took", "take", Tag::VerbFinite},
    {"given", "give", Tag::Participle},  {"gave", "give", Tag::VerbFinite},    {"found", "find", Tag::Participle},
    {"kept", "keep", Tag::Participle},   {"built", "build", Tag::Participle},  {"thrown", "throw", Tag::Participle},
    {"threw", "throw", Tag::VerbFinite}, {"shown", "show", Tag::Participle},   {"seen", "see", Tag::Participle},
    {"saw", "see", Tag::VerbFinite},     {"sent", "send", Tag::Participle},    {"told", "tell", Tag::Participle},
    {"brought", "bring", Tag::Participle}, {"chosen", "choose", Tag::Participle}, {"broke", "break", Tag::VerbFinite},
    {"read", "read", Tag::Verb},         {"split", "split", Tag::Verb},        {"put", "put", Tag::Verb},
    {"set", "set", Tag::Verb},           {"shut", "shut", Tag::Verb},          {"let", "let", Tag::Verb},
    {"went", "go", Tag::VerbFinite},     {"gone", "go", Tag::Participle},      {"left", "leave", Tag::Participle},
    {"held", "hold", Tag::Participle},   {"said", "say", Tag::Participle},     {"thought", "think", Tag::Participle},
    {"knew", "know", Tag::VerbFinite},   {"known", "know", Tag::Participle},   {"snuck", "sneak", Tag::VerbFinite}};

// Verbs that never start an imperative in our lexicon but conjugate.
constexpr std::string_view kOtherVerbs[] = {"seem", "go", "hold", "say", "think", "know", "leave", "sneak",
                                            "need", "want", "happen", "work", "look", "mean", "exist",
                                            "depend", "belong", "appear", "become"};

using Lexicon = std::unordered_map<std::string_view, LexEntry>;

const Lexicon& lexicon() {
    static const Lexicon lex = [] {
        Lexicon m;
        for (auto w : kVerbs) m[w].verb = true;
        for (auto w : kOtherVerbs) m[w].verb = true;
        for (auto w : kNouns) m[w].noun = true;
        auto closed = [&](auto& words, Tag t) {
            for (auto w : words) m[w].closed = t;
        };
        closed(kAdjectives, Tag::Adj);
        closed(kAdverbs, Tag::Adv);
        closed(kDeterminers, Tag::Det);
        closed(kDemonstratives, Tag::Demonstrative);
        closed(kPronouns, Tag::Pronoun);
        closed(kPrepositions, Tag::Prep);
        closed(kConjunctions, Tag::Conj);
        closed(kSubordinators, Tag::Sub);
        closed(kWh, Tag::Wh);
        closed(kModals, Tag::Modal);
        closed(kAux, Tag::Aux);
        m["to"].closed = Tag::To;
        m["do"].closed = Tag::Aux; // still a verb when it opens a sentence
        return m;
    }();
    return lex;
}

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() > suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool is_verb(std::string_view w) {
    auto& lex = lexicon();
    auto it = lex.find(w);
    return it != lex.end() && it->second.verb;
}

bool is_noun(std::string_view w) {
    auto& lex = lexicon();
    auto it = lex.find(w);
    return it != lex.end() && it->second.noun;
}

// Inflection of a known verb: Verb for the bare stem, VerbFinite for -s,
// Participle for -ed, Gerund for -ing.
Tag inflection(std::string_view w, std::string& stem) {
    for (const auto& irr : kIrregular) {
        if (irr.form == w) {
            stem = irr.stem;
            return irr.tag;
        }
    }
    auto try_stem = [&](std::string candidate) {
        if (is_verb(candidate)) {
            stem = std::move(candidate);
            return true;
        }
        return false;
    };
    std::string s(w);
    if (ends_with(w, "ing")) {
        auto base = s.substr(0, s.size() - 3);
        if (try_stem(base) || try_stem(base + "e") ||
            (base.size() >= 2 && base.back() == base[base.size() - 2] && try_stem(base.substr(0, base.size() - 1)))) {
            return Tag::Gerund;
        }
    }
    if (ends_with(w, "ed")) {
        auto base = s.substr(0, s.size() - 2);
        if (try_stem(base) || try_stem(s.substr(0, s.size() - 1)) ||
            (ends_with(w, "ied") && try_stem(s.substr(0, s.size() - 3) + "y")) ||
            (base.size() >= 2 && base.back() == base[base.size() - 2] && try_stem(base.substr(0, base.size() - 1)))) {
            return Tag::Participle;
        }
    }
    if (ends_with(w, "s")) {
        if ((ends_with(w, "ies") && try_stem(s.substr(0, s.size() - 3) + "y")) ||
            (ends_with(w, "es") && try_stem(s.substr(0, s.size() - 2))) || try_stem(s.substr(0, s.size() - 1))) {
            return Tag::VerbFinite;
        }
    }
    return Tag::Other;
}

Tag suffix_tag(std::string_view w) {
    if (ends_with(w, "ly")) return Tag::Adv;
    for (auto suf : {"able", "ible", "ous", "ive", "ful", "less", "ic", "ish", "al"}) {
        if (ends_with(w, suf)) return Tag::Adj;
    }
    if (ends_with(w, "ing")) return Tag::Gerund;
    return Tag::Noun;
}

// Words like "after" head a clause only when a subject or auxiliary follows.
bool opens_clause(const std::vector<std::string>& tokens, std::size_t i) {
    constexpr std::string_view kDual[] = {"after", "before", "since", "until", "till"};
    if (std::find(std::begin(kDual), std::end(kDual), tokens[i]) == std::end(kDual)) return true;
    for (std::size_t j = i + 1; j < tokens.size() && j <= i + 5; ++j) {
        auto closed = lookup(tokens[j]).closed;
        if (closed == Tag::Pronoun && j == i + 1) return true;
        if (closed == Tag::Aux || closed == Tag::Modal) return true;
        if (closed == Tag::Sub || closed == Tag::Conj) break;
    }
    return false;
}

bool has_digit(std::string_view w) {
    return std::any_of(w.begin(), w.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}
bool has_alpha(std::string_view w) {
    return std::any_of(w.begin(), w.end(), [](char c) { return std::isalpha(static_cast<unsigned char>(c)); });
}

} // namespace

std::string_view to_string(Tag t) {
    switch (t) {
    case Tag::Noun: return "NN";
    case Tag::Verb: return "VB";
    case Tag::VerbFinite: return "VBZ";
    case Tag::Participle: return "VBN";
    case Tag::Gerund: return "VBG";
    case Tag::Aux: return "AUX";
    case Tag::Modal: return "MD";
    case Tag::Adj: return "JJ";
    case Tag::Adv: return "RB";
    case Tag::Det: return "DT";
    case Tag::Demonstrative: return "DT";
    case Tag::Pronoun: return "PRP";
    case Tag::Prep: return "IN";
    case Tag::To: return "TO";
    case Tag::Conj: return "CC";
    case Tag::Sub: return "IN";
    case Tag::Wh: return "WH";
    case Tag::Placeholder: return "PH";
    case Tag::Number: return "CD";
    case Tag::Other: return "X";
    }
    return "X";
}

LexEntry lookup(std::string_view word) {
    auto& lex = lexicon();
    auto it = lex.find(word);
    return it == lex.end() ? LexEntry{} : it->second;
}

std::string verb_stem(std::string_view word) {
    if (is_verb(word)) return std::string(word);
    constexpr std::pair<std::string_view, std::string_view> kAuxStems[] = {
        {"is", "be"},    {"am", "be"},     {"are", "be"},     {"was", "be"},  {"were", "be"},
        {"been", "be"},  {"being", "be"},  {"has", "have"},   {"had", "have"}, {"having", "have"},
        {"does", "do"},  {"did", "do"}};
    for (const auto& [form, stem] : kAuxStems) {
        if (form == word) return std::string(stem);
    }
    std::string stem;
    inflection(word, stem);
    return stem;
}

std::size_t lexicon_size() { return lexicon().size(); }

std::vector<Tag> pos_tag(const std::vector<std::string>& tokens) {
    std::vector<Tag> tags(tokens.size(), Tag::Other);
    // Tag of the closest preceding word, ignoring adverbs.
    Tag prev = Tag::Other;
    bool initial = true;
    bool aux_before = false;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const auto& w = tokens[i];
        Tag t;
        if (text::is_placeholder(w)) {
            t = Tag::Placeholder;
        } else if (w == "todo") {
            t = Tag::Other;
        } else if (has_digit(w)) {
            t = has_alpha(w) ? Tag::Noun : Tag::Number;
        } else {
            auto e = lookup(w);
            bool verb_context = initial || prev == Tag::To || prev == Tag::Modal;
            bool noun_context = prev == Tag::Det || prev == Tag::Demonstrative || prev == Tag::Adj ||
                                prev == Tag::Prep || prev == Tag::Verb || prev == Tag::Gerund;
            std::string stem;
            if (e.verb && (verb_context || (e.closed == Tag::Other && !e.noun && !noun_context))) {
                t = prev == Tag::Pronoun ? Tag::VerbFinite : Tag::Verb;
            } else if (e.verb && prev == Tag::Pronoun && e.closed == Tag::Other) {
                t = Tag::VerbFinite;
            } else if (e.closed == Tag::Sub && !opens_clause(tokens, i)) {
                t = Tag::Prep;
            } else if (e.closed != Tag::Other) {
                t = e.closed;
            } else if (e.noun) {
                t = Tag::Noun;
            } else if (auto inf = inflection(w, stem); inf != Tag::Other) {
                t = inf;
                if (inf == Tag::VerbFinite && is_noun(stem) && (noun_context || prev == Tag::Noun)) {
                    t = Tag::Noun; // plural: "type checks", "the flags"
                } else if (inf == Tag::Participle && !aux_before && prev != Tag::Pronoun &&
                           prev != Tag::Demonstrative && prev != Tag::Noun) {
                    t = noun_context ? Tag::Adj : Tag::Participle;
                } else if (inf == Tag::Participle && !aux_before &&
                           (prev == Tag::Pronoun || prev == Tag::Demonstrative || prev == Tag::Noun)) {
                    t = Tag::VerbFinite; // "someone snuck", "this changed"
                } else if (inf == Tag::Verb && prev == Tag::Pronoun) {
                    t = Tag::VerbFinite;
                }
            } else {
                t = suffix_tag(w);
                // An unknown opening word is a name ("robolectric removed it").
                if (initial && t == Tag::Adj) t = Tag::Noun;
            }
        }
        tags[i] = t;
        if (t != Tag::Adv && w != "todo") {
            if (t != Tag::Placeholder) initial = false;
            aux_before = t == Tag::Aux;
            prev = t;
        }
    }
    return tags;
}

} // namespace todolens::classify
