// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The todolens Authors

#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <sys/types.h>

namespace todolens {

struct CaptureResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

struct SpawnOptions {
    std::vector<std::pair<std::string, std::string>> env; // added/overridden variables
    std::string cwd;                                      // empty: inherit
};

// Runs argv[0] (PATH lookup) to completion and captures stdout and stderr.
CaptureResult run_capture(const std::vector<std::string>& argv, const SpawnOptions& opts = {});

// A child process connected through stdin/stdout pipes. stderr is inherited.
// The destructor closes stdin, gives the child a moment to exit and then kills it.
class Subprocess {
public:
    Subprocess(const std::vector<std::string>& argv, const SpawnOptions& opts = {});
    ~Subprocess();

    Subprocess(const Subprocess&) = delete;
    Subprocess& operator=(const Subprocess&) = delete;
    Subprocess(Subprocess&& other) noexcept;
    Subprocess& operator=(Subprocess&& other) noexcept;

    // Throws BrokenPipeError when the child has closed its end.
    void write_all(std::string_view data);

    // Returns the next '\n'-terminated line without the terminator, or
    // std::nullopt at EOF. Throws TimeoutError after `timeout`.
    std::optional<std::string> read_line(std::chrono::milliseconds timeout);

    pid_t pid() const noexcept { return pid_; }
    void terminate() noexcept;

private:
    void close_fds() noexcept;

    pid_t pid_ = -1;
    int in_fd_ = -1;  // parent writes, child reads
    int out_fd_ = -1; // child writes, parent reads
    std::string buffer_;
    bool eof_ = false;
};

// Shell command form used for user supplied commands such as --bridge-cmd.
inline std::vector<std::string> shell_command(const std::string& cmd) {
    return {"/bin/sh", "-c", cmd};
}

} // namespace todolens
