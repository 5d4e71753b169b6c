// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The todolens Authors

// Stand-in for an external model server. The first argument picks the
// behaviour:
//   ok            answer every request with (0.6, 0.4) / (0.2, 0.8)
//   echo          form favours Task when the TODO has more than two tokens
//   bad-sum       form probabilities sum to 1.2
//   out-of-range  a negative probability
//   near-sum      probabilities off by 1e-9, within tolerance
//   wrong-id      reply with id + 1
//   error         reply with an "error" field
//   garbage       reply with a line that is not JSON
//   silent        handshake, then never answer
//   crash         handshake, then exit on the first request
//   no-handshake  never send the handshake
//   old-protocol  handshake with protocol 0
//   transcript F  replay the responses of transcript F, failing on any
//                 request that differs from the recorded one

#include <nlohmann/json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

using json = nlohmann::json;

namespace {

void send(const json& j) {
    std::cout << j.dump() << "\n";
    std::cout.flush();
}

void sleep_forever() {
    for (;;) std::this_thread::sleep_for(std::chrono::seconds(60));
}

int run_transcript(const std::string& path) {
    std::ifstream in(path);
    if (!in) return 3;
    std::vector<json> entries;
    for (std::string line; std::getline(in, line);) {
        if (!line.empty()) entries.push_back(json::parse(line));
    }
    send({{"ready", true}, {"protocol", 1}});
    std::size_t next = 0;
    for (std::string line; std::getline(std::cin, line);) {
        auto request = json::parse(line);
        if (next >= entries.size() || entries[next].at("request") != request) {
            send({{"id", request.value("id", 0)}, {"error", "unexpected request"}});
            continue;
        }
        send(entries[next++].at("response"));
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    std::string mode = argc > 1 ? argv[1] : "ok";
    if (mode == "transcript") return argc > 2 ? run_transcript(argv[2]) : 3;
    if (mode == "no-handshake") sleep_forever();
    send({{"ready", true}, {"protocol", mode == "old-protocol" ? 0 : 1}});

    for (std::string line; std::getline(std::cin, line);) {
        auto request = json::parse(line);
        auto id = request.at("id").get<long long>();
        if (mode == "silent") sleep_forever();
        if (mode == "crash") return 1;
        json reply = {{"id", id}, {"form_probs", {0.6, 0.4}}, {"quality_probs", {0.2, 0.8}}};
        if (mode == "echo") {
            bool task = request.at("todo_tokens").size() > 2;
            reply["form_probs"] = task ? json{0.9, 0.1} : json{0.1, 0.9};
            reply["quality_probs"] = request.at("diff_tokens").empty() ? json{0.3, 0.7} : json{0.7, 0.3};
        } else if (mode == "bad-sum") {
            reply["form_probs"] = {0.7, 0.5};
        } else if (mode == "out-of-range") {
            reply["form_probs"] = {1.1, -0.1};
        } else if (mode == "near-sum") {
            reply["form_probs"] = {0.6, 0.4 + 1e-9};
        } else if (mode == "wrong-id") {
            reply["id"] = id + 1;
        } else if (mode == "error") {
            reply = {{"id", id}, {"error", "model not loaded"}};
        } else if (mode == "garbage") {
            std::cout << "this is not json\n";
            std::cout.flush();
            continue;
        }
        send(reply);
    }
    return 0;
}
