// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The todolens Authors

#include "test_support.hpp"

#include "todolens/config.hpp"
#include "todolens/error.hpp"

#include <catch_amalgamated.hpp>

#include <cstdlib>

using namespace todolens;

TEST_CASE("empty config gives the defaults") {
    auto c = parse_config("");
    CHECK(c.seed == 7);
    CHECK(c.classifier.model == "rules");
    CHECK(c.classifier.min_content_tokens == 4);
    CHECK(c.classifier.cv_folds == 10);
    CHECK(c.lifecycle.alpha == 0.05);
    CHECK(c.report.format == "csv");
    CHECK(c.mining.extensions == std::vector<std::string>{".java"});
}

TEST_CASE("every table is read") {
    auto c = parse_config(R"(
seed = 11
[mining]
drop_merge_commits = false
english_ascii_ratio_threshold = 0.75
extensions = [".java", ".kt"]
[classifier]
model = "lexical"
cv_folds = 5
learning_rate = 0.5
epochs = 20
l2 = 0.001
bridge_cmd = "python3 serve.py"
bridge_timeout_ms = 1000
[lifecycle]
alpha = 0.01
overrides = "overrides.csv"
[report]
format = "markdown"
)");
    CHECK(c.seed == 11);
    CHECK_FALSE(c.mining.drop_merge_commits);
    CHECK(c.mining.english_ascii_ratio_threshold == 0.75);
    CHECK(c.mining.extensions.size() == 2);
    CHECK(c.classifier.model == "lexical");
    CHECK(c.classifier.cv_folds == 5);
    CHECK(c.classifier.lexical.learning_rate == 0.5);
    CHECK(c.classifier.lexical.epochs == 20);
    CHECK(c.classifier.lexical.seed == 11);
    CHECK(c.classifier.bridge_cmd == "python3 serve.py");
    CHECK(c.classifier.bridge_timeout_ms == 1000);
    CHECK(c.lifecycle.alpha == 0.01);
    CHECK(c.lifecycle.overrides == "overrides.csv");
    CHECK(c.report.format == "markdown");

    auto j = to_json(c);
    CHECK(j["classifier"]["model"] == "lexical");
    CHECK(j["seed"] == 11);
}

TEST_CASE("unknown keys and tables are rejected") {
    CHECK_THROWS_AS(parse_config("colour = 1"), UsageError);
    CHECK_THROWS_AS(parse_config("[mining]\nextension = [\".java\"]"), UsageError);
    CHECK_THROWS_AS(parse_config("[output]\nformat = \"csv\""), UsageError);
    CHECK_THROWS_WITH(parse_config("[report]\nfmt = 1", "my.toml"),
                      Catch::Matchers::ContainsSubstring("my.toml") && Catch::Matchers::ContainsSubstring("report.fmt"));
}

TEST_CASE("wrong types and out-of-range values are rejected") {
    CHECK_THROWS_AS(parse_config("seed = \"seven\""), UsageError);
    CHECK_THROWS_AS(parse_config("seed = -1"), UsageError);
    CHECK_THROWS_AS(parse_config("mining = 3"), UsageError);
    CHECK_THROWS_AS(parse_config("[mining]\ndedup = 1"), UsageError);
    CHECK_THROWS_AS(parse_config("[mining]\nextensions = [1]"), UsageError);
    CHECK_THROWS_AS(parse_config("[mining]\nenglish_ascii_ratio_threshold = 1.5"), UsageError);
    CHECK_THROWS_AS(parse_config("[classifier]\nmodel = \"bert\""), UsageError);
    CHECK_THROWS_AS(parse_config("[classifier]\ncv_folds = 1"), UsageError);
    CHECK_THROWS_AS(parse_config("[classifier]\ncv_folds = 2.5"), UsageError);
    CHECK_THROWS_AS(parse_config("[classifier]\nlearning_rate = 0"), UsageError);
    CHECK_THROWS_AS(parse_config("[lifecycle]\nalpha = 1.0"), UsageError);
    CHECK_THROWS_AS(parse_config("[report]\nformat = \"xml\""), UsageError);
}

TEST_CASE("TOML syntax errors carry a line number") {
    CHECK_THROWS_WITH(parse_config("seed = 1\n[mining\n", "bad.toml"), Catch::Matchers::StartsWith("bad.toml:2:"));
}

TEST_CASE("config files load from disk") {
    testing::TempDir d;
    write_file(d / "c.toml", "seed = 3\n");
    CHECK(load_config(d / "c.toml").seed == 3);
    CHECK_THROWS_AS(load_config(d / "missing.toml"), UsageError);
}

TEST_CASE("manifests record digests, config and a reproducible timestamp") {
    testing::TempDir d;
    write_file(d / "in.txt", "abc");
    write_file(d / "out.txt", "");
    setenv("SOURCE_DATE_EPOCH", "1700000000", 1);
    auto m = make_manifest({"todolens", "stats"}, Config{}, {d / "in.txt"}, {d / "out.txt"});
    unsetenv("SOURCE_DATE_EPOCH");
    CHECK(m.timestamp == 1700000000);
    CHECK(m.seed == 7);
    CHECK(m.tool_version == tool_version());
    REQUIRE(m.inputs.size() == 1);
    CHECK(m.inputs[0].sha256 == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(m.outputs[0].sha256 == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");

    auto j = to_json(m);
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"tool_version", "command", "config", "repositories", "inputs", "outputs",
                                           "seed", "timestamp"});

    CHECK(manifest_path_for(d / "x.jsonl") == d / "x.jsonl.manifest.json");
    write_manifest(manifest_path_for(d / "out.txt"), m);
    CHECK(json::parse(read_file(d / "out.txt.manifest.json"))["timestamp"] == 1700000000);
}

TEST_CASE("non-numeric SOURCE_DATE_EPOCH falls back to the clock") {
    setenv("SOURCE_DATE_EPOCH", "soon", 1);
    auto t = manifest_timestamp();
    unsetenv("SOURCE_DATE_EPOCH");
    CHECK(t > 1700000000);
}
