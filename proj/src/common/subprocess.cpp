// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The todolens Authors

#include "todolens/subprocess.hpp"

#include "todolens/error.hpp"

#include <cerrno>
#include <csignal>
#include <cstring>
#include <fcntl.h>
#include <poll.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

extern char** environ;

namespace todolens {
namespace {

struct Pipe {
    int read_end = -1;
    int write_end = -1;
};

Pipe make_pipe() {
    int fds[2];
    if (::pipe2(fds, O_CLOEXEC) != 0) {
        throw Error(std::string("pipe: ") + std::strerror(errno));
    }
    return {fds[0], fds[1]};
}

void close_fd(int& fd) noexcept {
    if (fd >= 0) {
        ::close(fd);
        fd = -1;
    }
}

std::vector<std::string> merged_environment(const SpawnOptions& opts) {
    std::vector<std::string> env;
    for (char** e = environ; *e != nullptr; ++e) {
        std::string_view entry(*e);
        auto eq = entry.find('=');
        std::string_view name = entry.substr(0, eq);
        bool overridden = false;
        for (const auto& [k, v] : opts.env) {
            if (k == name) {
                overridden = true;
                break;
            }
        }
        if (!overridden) env.emplace_back(entry);
    }
    for (const auto& [k, v] : opts.env) env.push_back(k + "=" + v);
    return env;
}

std::vector<char*> c_strings(std::vector<std::string>& v) {
    std::vector<char*> out;
    out.reserve(v.size() + 1);
    for (auto& s : v) out.push_back(s.data());
    out.push_back(nullptr);
    return out;
}

// Spawns argv with the given fds as stdin/stdout/stderr (-1 = inherit).
pid_t spawn(const std::vector<std::string>& argv, const SpawnOptions& opts, int in_fd, int out_fd,
            int err_fd, bool own_group = false) {
    if (argv.empty()) throw InvalidArgument("spawn: empty argv");
    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    if (in_fd >= 0) posix_spawn_file_actions_adddup2(&actions, in_fd, STDIN_FILENO);
    if (out_fd >= 0) posix_spawn_file_actions_adddup2(&actions, out_fd, STDOUT_FILENO);
    if (err_fd >= 0) posix_spawn_file_actions_adddup2(&actions, err_fd, STDERR_FILENO);
    if (!opts.cwd.empty()) posix_spawn_file_actions_addchdir_np(&actions, opts.cwd.c_str());

    auto args = argv;
    auto env = merged_environment(opts);
    auto cargs = c_strings(args);
    auto cenv = c_strings(env);

    posix_spawnattr_t attr;
    posix_spawnattr_init(&attr);
    if (own_group) {
        posix_spawnattr_setpgroup(&attr, 0);
        posix_spawnattr_setflags(&attr, POSIX_SPAWN_SETPGROUP);
    }

    pid_t pid = -1;
    int rc = ::posix_spawnp(&pid, cargs[0], &actions, &attr, cargs.data(), cenv.data());
    posix_spawn_file_actions_destroy(&actions);
    posix_spawnattr_destroy(&attr);
    if (rc != 0) {
        throw Error("cannot start '" + argv[0] + "': " + std::strerror(rc));
    }
    return pid;
}

int wait_exit(pid_t pid) {
    int status = 0;
    while (::waitpid(pid, &status, 0) < 0) {
        if (errno != EINTR) return -1;
    }
    if (WIFEXITED(status)) return WEXITSTATUS(status);
    if (WIFSIGNALED(status)) return 128 + WTERMSIG(status);
    return -1;
}

} // namespace

CaptureResult run_capture(const std::vector<std::string>& argv, const SpawnOptions& opts) {
    Pipe out = make_pipe();
    Pipe err = make_pipe();
    pid_t pid = -1;
    try {
        pid = spawn(argv, opts, -1, out.write_end, err.write_end);
    } catch (...) {
        close_fd(out.read_end);
        close_fd(out.write_end);
        close_fd(err.read_end);
        close_fd(err.write_end);
        throw;
    }
    close_fd(out.write_end);
    close_fd(err.write_end);

    CaptureResult result;
    pollfd fds[2] = {{out.read_end, POLLIN, 0}, {err.read_end, POLLIN, 0}};
    std::string* sinks[2] = {&result.out, &result.err};
    int open_count = 2;
    char buf[1 << 16];
    while (open_count > 0) {
        if (::poll(fds, 2, -1) < 0) {
            if (errno == EINTR) continue;
            break;
        }
        for (int i = 0; i < 2; ++i) {
            if (fds[i].fd < 0 || fds[i].revents == 0) continue;
            ssize_t n = ::read(fds[i].fd, buf, sizeof buf);
            if (n > 0) {
                sinks[i]->append(buf, static_cast<size_t>(n));
            } else if (n == 0 || errno != EINTR) {
                ::close(fds[i].fd);
                fds[i].fd = -1;
                --open_count;
            }
        }
    }
    result.exit_code = wait_exit(pid);
    return result;
}

Subprocess::Subprocess(const std::vector<std::string>& argv, const SpawnOptions& opts) {
    // A dead child must surface as EPIPE on write, not kill us.
    std::signal(SIGPIPE, SIG_IGN);
    Pipe to_child = make_pipe();
    Pipe from_child = make_pipe();
    try {
        pid_ = spawn(argv, opts, to_child.read_end, from_child.write_end, -1, true);
    } catch (...) {
        close_fd(to_child.read_end);
        close_fd(to_child.write_end);
        close_fd(from_child.read_end);
        close_fd(from_child.write_end);
        throw;
    }
    close_fd(to_child.read_end);
    close_fd(from_child.write_end);
    in_fd_ = to_child.write_end;
    out_fd_ = from_child.read_end;
}

Subprocess::~Subprocess() { terminate(); }

Subprocess::Subprocess(Subprocess&& other) noexcept
    : pid_(std::exchange(other.pid_, -1)), in_fd_(std::exchange(other.in_fd_, -1)),
      out_fd_(std::exchange(other.out_fd_, -1)), buffer_(std::move(other.buffer_)), eof_(other.eof_) {}

Subprocess& Subprocess::operator=(Subprocess&& other) noexcept {
    if (this != &other) {
        terminate();
        pid_ = std::exchange(other.pid_, -1);
        in_fd_ = std::exchange(other.in_fd_, -1);
        out_fd_ = std::exchange(other.out_fd_, -1);
        buffer_ = std::move(other.buffer_);
        eof_ = other.eof_;
    }
    return *this;
}

void Subprocess::close_fds() noexcept {
    close_fd(in_fd_);
    close_fd(out_fd_);
}

void Subprocess::terminate() noexcept {
    if (pid_ < 0) {
        close_fds();
        return;
    }
    close_fd(in_fd_);
    // Grace period for a clean exit after stdin EOF. Whatever is left of the
    // child's process group (e.g. commands started by `sh -c`) is killed.
    int status = 0;
    bool reaped = false;
    for (int i = 0; i < 20 && !reaped; ++i) {
        pid_t r = ::waitpid(pid_, &status, WNOHANG);
        if (r == pid_ || r < 0) {
            reaped = true;
        } else {
            ::usleep(5000);
        }
    }
    ::kill(-pid_, SIGKILL);
    if (!reaped) {
        ::kill(pid_, SIGKILL);
        while (::waitpid(pid_, &status, 0) < 0 && errno == EINTR) {
        }
    }
    pid_ = -1;
    close_fds();
}

void Subprocess::write_all(std::string_view data) {
    if (in_fd_ < 0) throw BrokenPipeError("bridge stdin is closed");
    while (!data.empty()) {
        ssize_t n = ::write(in_fd_, data.data(), data.size());
        if (n < 0) {
            if (errno == EINTR) continue;
            if (errno == EPIPE) throw BrokenPipeError("broken pipe writing to child process");
            throw ProtocolError(std::string("write to child failed: ") + std::strerror(errno));
        }
        data.remove_prefix(static_cast<size_t>(n));
    }
}

std::optional<std::string> Subprocess::read_line(std::chrono::milliseconds timeout) {
    auto deadline = std::chrono::steady_clock::now() + timeout;
    for (;;) {
        auto nl = buffer_.find('\n');
        if (nl != std::string::npos) {
            std::string line = buffer_.substr(0, nl);
            buffer_.erase(0, nl + 1);
            return line;
        }
        if (eof_ || out_fd_ < 0) {
            if (buffer_.empty()) return std::nullopt;
            return std::exchange(buffer_, {});
        }
        auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
            deadline - std::chrono::steady_clock::now());
        if (remaining.count() <= 0) throw TimeoutError("timed out waiting for child process output");
        pollfd pfd{out_fd_, POLLIN, 0};
        int rc = ::poll(&pfd, 1, static_cast<int>(remaining.count()));
        if (rc < 0) {
            if (errno == EINTR) continue;
            throw ProtocolError(std::string("poll failed: ") + std::strerror(errno));
        }
        if (rc == 0) throw TimeoutError("timed out waiting for child process output");
        char buf[4096];
        ssize_t n = ::read(out_fd_, buf, sizeof buf);
        if (n < 0) {
            if (errno == EINTR) continue;
            throw ProtocolError(std::string("read from child failed: ") + std::strerror(errno));
        }
        if (n == 0) {
            eof_ = true;
        } else {
            buffer_.append(buf, static_cast<size_t>(n));
        }
    }
}

} // namespace todolens
