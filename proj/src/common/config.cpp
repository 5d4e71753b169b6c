// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The todolens Authors

#include "todolens/config.hpp"

#include "todolens/error.hpp"

#include <toml++/toml.hpp>

#include <algorithm>
#include <cstdlib>
#include <initializer_list>
#include <sstream>

#ifndef TODOLENS_VERSION_STRING
#define TODOLENS_VERSION_STRING "0.0.0"
#endif

namespace todolens {
namespace {

class TableReader {
public:
    TableReader(const toml::table& table, std::string name, std::string_view source)
        : table_(table), name_(std::move(name)), source_(source) {}

    void allow(std::initializer_list<std::string_view> keys) const {
        for (const auto& [key, node] : table_) {
            (void)node;
            if (std::find(keys.begin(), keys.end(), key.str()) == keys.end()) {
                fail(std::string(key.str()), "unknown key");
            }
        }
    }

    void read(std::string_view key, bool& out) const {
        if (auto* n = table_.get(key)) {
            auto v = n->value<bool>();
            if (!n->is_boolean() || !v) fail(key, "expected a boolean");
            out = *v;
        }
    }

    void read(std::string_view key, double& out) const {
        if (auto* n = table_.get(key)) {
            if (!n->is_number()) fail(key, "expected a number");
            out = *n->value<double>();
        }
    }

    void read(std::string_view key, std::int64_t& out) const {
        if (auto* n = table_.get(key)) {
            if (!n->is_integer()) fail(key, "expected an integer");
            out = *n->value<std::int64_t>();
        }
    }

    void read(std::string_view key, int& out) const {
        std::int64_t v = out;
        read(key, v);
        if (v < 0 || v > 1'000'000'000) fail(key, "out of range");
        out = static_cast<int>(v);
    }

    void read(std::string_view key, std::string& out) const {
        if (auto* n = table_.get(key)) {
            if (!n->is_string()) fail(key, "expected a string");
            out = *n->value<std::string>();
        }
    }

    void read(std::string_view key, std::vector<std::string>& out) const {
        if (auto* n = table_.get(key)) {
            auto* arr = n->as_array();
            if (!arr) fail(key, "expected an array of strings");
            out.clear();
            for (const auto& el : *arr) {
                if (!el.is_string()) fail(key, "expected an array of strings");
                out.push_back(*el.value<std::string>());
            }
        }
    }

    [[noreturn]] void fail(std::string_view key, std::string_view what) const {
        std::string where = name_.empty() ? std::string(key) : name_ + "." + std::string(key);
        throw UsageError(std::string(source_) + ": " + where + ": " + std::string(what));
    }

private:
    const toml::table& table_;
    std::string name_;
    std::string_view source_;
};

const toml::table* subtable(const toml::table& root, std::string_view name, std::string_view source) {
    auto* n = root.get(name);
    if (!n) return nullptr;
    auto* t = n->as_table();
    if (!t) throw UsageError(std::string(source) + ": [" + std::string(name) + "] must be a table");
    return t;
}

FileDigest digest(const std::filesystem::path& p) { return {p.generic_string(), sha256_file(p)}; }

ordered_json digests_json(const std::vector<FileDigest>& ds) {
    ordered_json arr = ordered_json::array();
    for (const auto& d : ds) arr.push_back({{"path", d.path}, {"sha256", d.sha256}});
    return arr;
}

} // namespace

std::string_view tool_version() { return TODOLENS_VERSION_STRING; }

void Config::validate() const {
    try {
        mining.validate();
    } catch (const InvalidArgument& e) {
        throw UsageError(std::string("mining: ") + e.what());
    }
    static const std::vector<std::string> models = {"pos", "rules", "lexical", "bridge"};
    if (std::find(models.begin(), models.end(), classifier.model) == models.end()) {
        throw UsageError("classifier.model must be one of pos, rules, lexical, bridge");
    }
    if (classifier.min_content_tokens < 1) throw UsageError("classifier.min_content_tokens must be >= 1");
    if (classifier.cv_folds < 2) throw UsageError("classifier.cv_folds must be >= 2");
    if (classifier.bridge_timeout_ms < 1) throw UsageError("classifier.bridge_timeout_ms must be >= 1");
    if (!(classifier.lexical.learning_rate > 0.0)) throw UsageError("classifier.learning_rate must be > 0");
    if (classifier.lexical.epochs < 1) throw UsageError("classifier.epochs must be >= 1");
    if (!(classifier.lexical.l2 >= 0.0)) throw UsageError("classifier.l2 must be >= 0");
    if (!(lifecycle.alpha > 0.0 && lifecycle.alpha < 1.0)) throw UsageError("lifecycle.alpha must be within (0, 1)");
    if (report.format != "csv" && report.format != "json" && report.format != "markdown") {
        throw UsageError("report.format must be csv, json or markdown");
    }
}

Config parse_config(std::string_view text, std::string_view source) {
    toml::table root;
    try {
        root = toml::parse(text, source);
    } catch (const toml::parse_error& e) {
        std::ostringstream msg;
        msg << source << ":" << e.source().begin.line << ": " << e.description();
        throw UsageError(msg.str());
    }

    Config c;
    TableReader top(root, "", source);
    top.allow({"seed", "mining", "classifier", "lifecycle", "report"});
    std::int64_t seed = static_cast<std::int64_t>(c.seed);
    top.read("seed", seed);
    if (seed < 0) top.fail("seed", "must be non-negative");
    c.seed = static_cast<std::uint64_t>(seed);

    if (auto* t = subtable(root, "mining", source)) {
        TableReader r(*t, "mining", source);
        r.allow({"drop_merge_commits", "drop_non_english", "english_ascii_ratio_threshold", "dedup",
                 "todo_case_sensitive", "extensions"});
        r.read("drop_merge_commits", c.mining.drop_merge_commits);
        r.read("drop_non_english", c.mining.drop_non_english);
        r.read("english_ascii_ratio_threshold", c.mining.english_ascii_ratio_threshold);
        r.read("dedup", c.mining.dedup);
        r.read("todo_case_sensitive", c.mining.todo_case_sensitive);
        r.read("extensions", c.mining.extensions);
    }
    if (auto* t = subtable(root, "classifier", source)) {
        TableReader r(*t, "classifier", source);
        r.allow({"model", "min_content_tokens", "cv_folds", "bridge_cmd", "bridge_timeout_ms", "learning_rate",
                 "epochs", "l2"});
        r.read("model", c.classifier.model);
        r.read("min_content_tokens", c.classifier.min_content_tokens);
        r.read("cv_folds", c.classifier.cv_folds);
        r.read("bridge_cmd", c.classifier.bridge_cmd);
        r.read("bridge_timeout_ms", c.classifier.bridge_timeout_ms);
        r.read("learning_rate", c.classifier.lexical.learning_rate);
        r.read("epochs", c.classifier.lexical.epochs);
        r.read("l2", c.classifier.lexical.l2);
    }
    if (auto* t = subtable(root, "lifecycle", source)) {
        TableReader r(*t, "lifecycle", source);
        r.allow({"alpha", "overrides"});
        r.read("alpha", c.lifecycle.alpha);
        r.read("overrides", c.lifecycle.overrides);
    }
    if (auto* t = subtable(root, "report", source)) {
        TableReader r(*t, "report", source);
        r.allow({"format"});
        r.read("format", c.report.format);
    }
    c.classifier.lexical.seed = c.seed;
    c.validate();
    return c;
}

Config load_config(const std::filesystem::path& path) {
    std::string text;
    try {
        text = read_file(path);
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    return parse_config(text, path.string());
}

ordered_json to_json(const Config& c) {
    ordered_json j;
    j["seed"] = c.seed;
    j["mining"] = {{"drop_merge_commits", c.mining.drop_merge_commits},
                   {"drop_non_english", c.mining.drop_non_english},
                   {"english_ascii_ratio_threshold", c.mining.english_ascii_ratio_threshold},
                   {"dedup", c.mining.dedup},
                   {"todo_case_sensitive", c.mining.todo_case_sensitive},
                   {"extensions", c.mining.extensions}};
    j["classifier"] = {{"model", c.classifier.model},
                       {"min_content_tokens", c.classifier.min_content_tokens},
                       {"cv_folds", c.classifier.cv_folds},
                       {"bridge_cmd", c.classifier.bridge_cmd},
                       {"bridge_timeout_ms", c.classifier.bridge_timeout_ms},
                       {"learning_rate", c.classifier.lexical.learning_rate},
                       {"epochs", c.classifier.lexical.epochs},
                       {"l2", c.classifier.lexical.l2}};
    j["lifecycle"] = {{"alpha", c.lifecycle.alpha}, {"overrides", c.lifecycle.overrides}};
    j["report"] = {{"format", c.report.format}};
    return j;
}

std::int64_t manifest_timestamp() {
    if (const char* s = std::getenv("SOURCE_DATE_EPOCH"); s && *s) {
        char* end = nullptr;
        long long v = std::strtoll(s, &end, 10);
        if (end && *end == '\0' && v >= 0) return v;
    }
    return std::chrono::duration_cast<std::chrono::seconds>(std::chrono::system_clock::now().time_since_epoch())
        .count();
}

RunManifest make_manifest(std::vector<std::string> command, const Config& config,
                          const std::vector<std::filesystem::path>& inputs,
                          const std::vector<std::filesystem::path>& outputs) {
    RunManifest m;
    m.tool_version = std::string(tool_version());
    m.command = std::move(command);
    m.config = to_json(config);
    for (const auto& p : inputs) m.inputs.push_back(digest(p));
    for (const auto& p : outputs) m.outputs.push_back(digest(p));
    m.seed = config.seed;
    m.timestamp = manifest_timestamp();
    return m;
}

ordered_json to_json(const RunManifest& m) {
    ordered_json j;
    j["tool_version"] = m.tool_version;
    j["command"] = m.command;
    j["config"] = m.config;
    ordered_json repos = ordered_json::array();
    for (const auto& r : m.repositories) repos.push_back({{"path", r.path}, {"head", r.head}});
    j["repositories"] = std::move(repos);
    j["inputs"] = digests_json(m.inputs);
    j["outputs"] = digests_json(m.outputs);
    j["seed"] = m.seed;
    j["timestamp"] = m.timestamp;
    return j;
}

std::filesystem::path manifest_path_for(const std::filesystem::path& output) {
    auto p = output;
    p += ".manifest.json";
    return p;
}

void write_manifest(const std::filesystem::path& path, const RunManifest& m) {
    write_file(path, to_json(m).dump(2) + "\n");
}

} // namespace todolens
