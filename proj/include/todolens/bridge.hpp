// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The todolens Authors

#pragma once

#include "todolens/classifier.hpp"
#include "todolens/subprocess.hpp"

#include <chrono>
#include <cstdint>
#include <string>

namespace todolens::classify {

inline constexpr int kBridgeProtocol = 1;
inline constexpr std::chrono::milliseconds kDefaultBridgeTimeout{30000};

// A running external model speaking newline-delimited JSON. One request is
// in flight at a time.
class BridgeHandle {
public:
    // Starts `command` through /bin/sh and waits for the ready handshake.
    explicit BridgeHandle(const std::string& command, std::chrono::milliseconds timeout = kDefaultBridgeTimeout);

    // Throws ProtocolError (malformed reply, id mismatch, bad probabilities),
    // TimeoutError or BrokenPipeError. After any failure the handle refuses
    // further requests.
    Verdict classify(const text::NormalizedTodo& todo, const text::NormalizedDiff& diff);

private:
    Verdict exchange(const text::NormalizedTodo& todo, const text::NormalizedDiff& diff);

    Subprocess process_;
    std::chrono::milliseconds timeout_;
    std::int64_t next_id_ = 1;
    bool broken_ = false;
};

Verdict classify_bridge(BridgeHandle& handle, const text::NormalizedTodo& todo, const text::NormalizedDiff& diff);

} // namespace todolens::classify
