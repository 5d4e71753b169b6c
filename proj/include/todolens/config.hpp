// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The todolens Authors

#pragma once

#include "todolens/io.hpp"
#include "todolens/lexical.hpp"
#include "todolens/miner.hpp"

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace todolens {

std::string_view tool_version();

struct ClassifierConfig {
    std::string model = "rules"; // pos | rules | lexical | bridge
    int min_content_tokens = 4;
    int cv_folds = 10;
    std::string bridge_cmd;
    int bridge_timeout_ms = 30000;
    classify::LexicalHyperparams lexical;
};

struct LifecycleConfig {
    double alpha = 0.05;
    std::string overrides; // CSV path, empty for none
};

struct ReportConfig {
    std::string format = "csv";
};

struct Config {
    std::uint64_t seed = 7;
    mining::MiningConfig mining;
    ClassifierConfig classifier;
    LifecycleConfig lifecycle;
    ReportConfig report;

    void validate() const;
};

// TOML with optional top-level `seed` and tables [mining], [classifier],
// [lifecycle], [report]. Unknown tables or keys, wrong types and
// out-of-range values raise UsageError.
Config parse_config(std::string_view text, std::string_view source = "<config>");
Config load_config(const std::filesystem::path& path);
ordered_json to_json(const Config& c);

struct FileDigest {
    std::string path;
    std::string sha256;
};

struct RepoDigest {
    std::string path;
    std::string head; // commit id, empty for an unborn branch
};

struct RunManifest {
    std::string tool_version;
    std::vector<std::string> command;
    ordered_json config;
    std::vector<RepoDigest> repositories;
    std::vector<FileDigest> inputs;
    std::vector<FileDigest> outputs;
    std::uint64_t seed = 0;
    std::int64_t timestamp = 0; // UTC seconds
};

// SOURCE_DATE_EPOCH when set and numeric, otherwise the current time.
std::int64_t manifest_timestamp();

RunManifest make_manifest(std::vector<std::string> command, const Config& config,
                          const std::vector<std::filesystem::path>& inputs,
                          const std::vector<std::filesystem::path>& outputs);
ordered_json to_json(const RunManifest& m);

// `<output>.manifest.json` next to the given output.
std::filesystem::path manifest_path_for(const std::filesystem::path& output);
void write_manifest(const std::filesystem::path& path, const RunManifest& m);

} // namespace todolens
