// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The todolens Authors

#include "test_support.hpp"

#include "todolens/io.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cstdlib>

using namespace todolens;
namespace fs = std::filesystem;

namespace {

fs::path golden_dir() { return testing::data_dir() / "golden" / "e2e"; }

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

} // namespace

TEST_CASE("pipeline output is byte-identical across runs and matches the goldens") {
    testing::TempDir d;
    auto first = testing::run_pipeline(d / "one");
    auto second = testing::run_pipeline(d / "two");
    REQUIRE(first.size() == second.size());
    for (const auto& [path, content] : first) {
        INFO(path);
        REQUIRE(second.count(path));
        CHECK(second.at(path) == content);
    }
    for (const char* expected : {"events.jsonl", "events.commits.jsonl", "verdicts.jsonl", "records.jsonl",
                                 "metrics.csv", "stats.jsonl", "report-md/report.md", "report-csv/distribution.csv",
                                 "events.jsonl.manifest.json", "report-md/report.manifest.json"}) {
        CHECK(first.count(expected));
    }

    if (std::getenv("TODOLENS_UPDATE_GOLDENS")) {
        for (const auto& [path, content] : first) {
            if (testing::is_manifest(path)) continue;
            fs::create_directories((golden_dir() / path).parent_path());
            write_file(golden_dir() / path, content);
        }
    }
    std::size_t compared = 0;
    for (const auto& entry : fs::recursive_directory_iterator(golden_dir())) {
        if (!entry.is_regular_file()) continue;
        auto rel = fs::relative(entry.path(), golden_dir()).generic_string();
        INFO(rel);
        REQUIRE(first.count(rel));
        CHECK(first.at(rel) == read_file(entry.path()));
        ++compared;
    }
    std::size_t produced = 0;
    for (const auto& [path, content] : first) produced += testing::is_manifest(path) ? 0 : 1;
    CHECK(compared == produced);
}

TEST_CASE("fixture pipeline counts") {
    testing::TempDir d;
    auto out = testing::run_pipeline(d / "run");
    CHECK(count_lines(out.at("events.jsonl")) == 15);
    CHECK(count_lines(out.at("events.commits.jsonl")) == 12);
    CHECK(count_lines(out.at("verdicts.jsonl")) == 9);
    CHECK(count_lines(out.at("records.jsonl")) == 9);
    CHECK(count_lines(out.at("stats.jsonl")) == 4);

    auto manifest = json::parse(out.at("events.jsonl.manifest.json"));
    CHECK(manifest["timestamp"] == 1700000000);
    REQUIRE(manifest["repositories"].size() == 1);
    CHECK(manifest["repositories"][0]["head"].get<std::string>().size() == 40);
    CHECK(manifest["outputs"].size() == 2);
}

TEST_CASE("usage errors exit with 1") {
    CHECK(testing::run_cli({"frobnicate"}).exit_code == 1);
    CHECK(testing::run_cli({"stats", "--no-such-flag"}).exit_code == 1);
    CHECK(testing::run_cli({}).exit_code == 1);
    CHECK(testing::run_cli({"--model", "bert", "classify"}).exit_code == 1);
    testing::TempDir d;
    write_file(d / "dataset.jsonl", "");
    CHECK(testing::run_cli({"train", "-d", (d / "dataset.jsonl").string(), "--cv", "1"}).exit_code == 1);
}

TEST_CASE("help and version exit with 0") {
    auto h = testing::run_cli({"--help"});
    CHECK(h.exit_code == 0);
    CHECK(h.out.find("mine") != std::string::npos);
    auto v = testing::run_cli({"--version"});
    CHECK(v.exit_code == 0);
    CHECK_FALSE(v.out.empty());
}

TEST_CASE("report on empty input is a data error") {
    testing::TempDir d;
    write_file(d / "verdicts.jsonl", "");
    auto r = testing::run_cli({"report", "--format", "csv", "--verdicts", "verdicts.jsonl", "--out-dir", "out"},
                              d.path());
    CHECK(r.exit_code == 2);
    CHECK_FALSE(r.err.empty());
    CHECK(testing::run_cli({"report", "--format", "csv"}, d.path()).exit_code == 2);
}

TEST_CASE("data errors exit with 2") {
    testing::TempDir d;
    write_file(d / "events.jsonl", "{not json}\n");
    auto r = testing::run_cli({"classify", "-e", "events.jsonl"}, d.path());
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("events.jsonl") != std::string::npos);
    CHECK(testing::run_cli({"mine", (d / "nowhere").string()}, d.path()).exit_code == 2);
}

TEST_CASE("classify reads events from stdin and writes verdicts to stdout") {
    testing::TempDir d;
    auto out = testing::run_pipeline(d / "run");
    auto cmd = "cat events.jsonl | '" + testing::cli_path() + "' --quiet classify --model pos -e - -o -";
    auto r = run_capture({"sh", "-c", cmd}, SpawnOptions{{}, (d / "run").string()});
    REQUIRE(r.exit_code == 0);
    CHECK(r.out == out.at("verdicts.jsonl"));
}

TEST_CASE("TODOLENS_BRIDGE_CMD overrides --bridge-cmd") {
    testing::TempDir d;
    write_file(d / "events.jsonl",
               R"({"kind":"Introduced","repo_id":"r","commit_id":"0000000000000000000000000000000000000001",)"
               R"("file_path":"A.java","raw_comment":"// TODO add retries","line_no":3,"author_time":1})"
               "\n");
    auto r = testing::run_cli({"--quiet", "--model", "bridge", "--bridge-cmd", "exit 3", "classify", "-e",
                               "events.jsonl"},
                              d.path(), {{"TODOLENS_BRIDGE_CMD", testing::bridge_stub_path() + " ok"}});
    INFO(r.err);
    REQUIRE(r.exit_code == 0);
    auto line = json::parse(r.out);
    CHECK(line["verdict"]["source"] == "bridge");
    CHECK(line["verdict"]["form_probs"][0] == 0.6);

    auto broken = testing::run_cli({"--quiet", "--model", "bridge", "--bridge-cmd", "exit 3", "classify", "-e",
                                    "events.jsonl"},
                                   d.path());
    CHECK(broken.exit_code == 2);
}

TEST_CASE("train cross-validates and writes a lexical bundle the classifier can load") {
    testing::TempDir d;
    auto dataset = (testing::data_dir() / "fixtures" / "lexical50.jsonl").string();
    auto cv = testing::run_cli({"--quiet", "--model", "pos", "train", "-d", dataset, "--cv", "5"}, d.path());
    REQUIRE(cv.exit_code == 0);
    auto evals = json::parse(cv.out)["evaluations"];
    REQUIRE(evals.size() == 2);
    CHECK(evals[0]["k"] == 5);

    auto tr = testing::run_cli({"--quiet", "--model", "lexical", "train", "-d", dataset, "-o", "model.json", "--eval",
                                "eval.json", "--cv", "5"},
                               d.path());
    INFO(tr.err);
    REQUIRE(tr.exit_code == 0);
    CHECK(fs::exists(d / "model.json"));
    CHECK(fs::exists(d / "eval.json.manifest.json"));

    write_file(d / "events.jsonl",
               R"({"kind":"Introduced","repo_id":"r","commit_id":"0000000000000000000000000000000000000001",)"
               R"("file_path":"A.java","raw_comment":"// TODO remove the config loader","line_no":3,"author_time":1})"
               "\n");
    auto cls = testing::run_cli({"--quiet", "--model", "lexical", "--model-path", "model.json", "classify", "-e",
                                 "events.jsonl"},
                                d.path());
    INFO(cls.err);
    REQUIRE(cls.exit_code == 0);
    CHECK(json::parse(cls.out)["verdict"]["source"] == "lexical");

    auto rp = testing::run_cli({"report", "--eval", "eval.json", "--format", "markdown", "--out-dir", "rep"},
                               d.path());
    REQUIRE(rp.exit_code == 0);
    CHECK(read_file(d / "rep" / "report.md").find("## Evaluation") != std::string::npos);
}

TEST_CASE("config file values apply unless a flag overrides them") {
    testing::TempDir d;
    write_file(d / "c.toml", "[report]\nformat = \"json\"\n");
    write_file(d / "verdicts.jsonl",
               R"({"intro":{"kind":"Introduced","repo_id":"r","commit_id":"0000000000000000000000000000000000000001",)"
               R"("file_path":"A.java","raw_comment":"// TODO x","line_no":3,"author_time":1},)"
               R"("verdict":{"form_probs":[0.2,0.8],"quality_probs":[0.2,0.8],"form":"Notice","quality":"Bad",)"
               R"("subcategory":null,"source":"rules"}})"
               "\n");
    auto r = testing::run_cli({"--config", "c.toml", "report", "--verdicts", "verdicts.jsonl", "--out-dir", "a"},
                              d.path());
    INFO(r.err);
    REQUIRE(r.exit_code == 0);
    CHECK(fs::exists(d / "a" / "report.json"));
    auto f = testing::run_cli({"--config", "c.toml", "report", "--verdicts", "verdicts.jsonl", "--format", "csv",
                               "--out-dir", "b"},
                              d.path());
    REQUIRE(f.exit_code == 0);
    CHECK(fs::exists(d / "b" / "distribution.csv"));
    write_file(d / "bad.toml", "[report]\nformat = 1\n");
    CHECK(testing::run_cli({"--config", "bad.toml", "report", "--verdicts", "verdicts.jsonl"}, d.path()).exit_code ==
          1);
}
