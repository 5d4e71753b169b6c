// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The todolens Authors

#include "todolens/bridge.hpp"

#include "todolens/error.hpp"

#include <cmath>

namespace todolens::classify {
namespace {

// Sums within this tolerance are renormalized; anything further off is a
// protocol violation.
constexpr double kSumTolerance = 1e-6;

json read_message(Subprocess& process, std::chrono::milliseconds timeout, const char* what) {
    auto line = process.read_line(timeout);
    if (!line) throw BrokenPipeError(std::string("bridge closed its output while waiting for ") + what);
    try {
        return json::parse(*line);
    } catch (const json::exception&) {
        throw ProtocolError(std::string("bridge sent malformed JSON as ") + what + ": " + line->substr(0, 200));
    }
}

ProbPair checked_pair(const json& reply, const char* name) {
    auto it = reply.find(name);
    if (it == reply.end() || !it->is_array() || it->size() != 2 || !(*it)[0].is_number() || !(*it)[1].is_number()) {
        throw ProtocolError(std::string("bridge reply lacks a two-number ") + name);
    }
    double a = (*it)[0].get<double>();
    double b = (*it)[1].get<double>();
    if (!(a >= 0.0 && a <= 1.0 && b >= 0.0 && b <= 1.0)) {
        throw ProtocolError(std::string("bridge ") + name + " outside [0, 1]");
    }
    double sum = a + b;
    if (std::abs(sum - 1.0) > kSumTolerance) {
        throw ProtocolError(std::string("bridge ") + name + " sums to " + std::to_string(sum));
    }
    return {a / sum, b / sum};
}

} // namespace

BridgeHandle::BridgeHandle(const std::string& command, std::chrono::milliseconds timeout)
    : process_(shell_command(command)), timeout_(timeout) {
    auto hello = read_message(process_, timeout_, "the handshake");
    if (!hello.is_object() || hello.value("ready", false) != true) {
        throw ProtocolError("bridge handshake is not {\"ready\": true, ...}");
    }
    auto protocol = hello.find("protocol");
    if (protocol == hello.end() || !protocol->is_number_integer() || protocol->get<int>() != kBridgeProtocol) {
        throw ProtocolError("bridge speaks an unsupported protocol version");
    }
}

Verdict BridgeHandle::classify(const text::NormalizedTodo& todo, const text::NormalizedDiff& diff) {
    if (broken_) throw ProtocolError("bridge is unusable after an earlier failure");
    // A late or partial reply would desynchronize ids, so any failure
    // retires the handle.
    broken_ = true;
    auto verdict = exchange(todo, diff);
    broken_ = false;
    return verdict;
}

Verdict BridgeHandle::exchange(const text::NormalizedTodo& todo, const text::NormalizedDiff& diff) {
    auto id = next_id_++;
    ordered_json request;
    request["id"] = id;
    request["todo_tokens"] = todo.tokens;
    request["diff_tokens"] = diff.tokens;
    process_.write_all(to_jsonl_line(request));

    auto reply = read_message(process_, timeout_, "a reply");
    if (!reply.is_object()) throw ProtocolError("bridge reply is not a JSON object");
    auto rid = reply.find("id");
    if (rid == reply.end() || !rid->is_number_integer() || rid->get<std::int64_t>() != id) {
        throw ProtocolError("bridge reply id does not match request id " + std::to_string(id));
    }
    if (auto err = reply.find("error"); err != reply.end()) {
        throw ProtocolError("bridge reported an error: " + err->dump());
    }
    return make_verdict(checked_pair(reply, "form_probs"), checked_pair(reply, "quality_probs"), Source::Bridge);
}

Verdict classify_bridge(BridgeHandle& handle, const text::NormalizedTodo& todo, const text::NormalizedDiff& diff) {
    return handle.classify(todo, diff);
}

} // namespace todolens::classify
