#pragma once

#include <cerrno>
#include <chrono>
#include <csignal>
#include <cstdlib>
#include <cstring>
#include <string>
#include <utility>
#include <vector>

#include <fcntl.h>
#include <poll.h>
#include <sched.h>
#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>

namespace skillaudit::detail {

struct RunLimits {
    double wall_clock_seconds = 120.0;
    std::size_t output_cap_bytes = 512ull * 1024 * 1024;
    std::size_t memory_bytes = 512ull * 1024 * 1024; // RLIMIT_AS; 0 = unlimited
};

// Namespace isolation drops all network reachability via a fresh user+net
// namespace; EnvBlackhole relies on proxy environment variables pointing at
// an unroutable address (set by the caller) and is the fallback on kernels
// that refuse unprivileged namespaces.
enum class NetIsolation { None, Namespace, EnvBlackhole };

struct RunResult {
    int exit_code = -1; // -1 until the child exits normally
    int term_signal = 0;
    bool timed_out = false;
    bool output_truncated = false;
    bool spawn_failed = false;
    std::string stdout_text;
    std::string stderr_text;
    double duration_seconds = 0.0;
};

// One-time probe: can this kernel give an unprivileged process its own
// network namespace?
inline bool netns_available() {
    static const bool ok = [] {
        pid_t pid = ::fork();
        if (pid < 0) return false;
        if (pid == 0) {
            int rc = ::unshare(CLONE_NEWUSER | CLONE_NEWNET);
            ::_exit(rc == 0 ? 0 : 1);
        }
        int status = 0;
        while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {}
        return WIFEXITED(status) && WEXITSTATUS(status) == 0;
    }();
    return ok;
}

// Runs argv in cwd with exactly the given environment, a wall-clock limit,
// and capped output capture. The child gets its own process group so a
// timeout kill sweeps up grandchildren.
inline RunResult run_process(const std::vector<std::string>& argv,
                             const std::string& cwd,
                             const std::vector<std::pair<std::string, std::string>>& env,
                             const RunLimits& limits,
                             NetIsolation iso) {
    RunResult res;
    if (argv.empty()) {
        res.spawn_failed = true;
        return res;
    }

    int out_pipe[2], err_pipe[2];
    if (::pipe2(out_pipe, O_CLOEXEC) != 0) {
        res.spawn_failed = true;
        return res;
    }
    if (::pipe2(err_pipe, O_CLOEXEC) != 0) {
        ::close(out_pipe[0]);
        ::close(out_pipe[1]);
        res.spawn_failed = true;
        return res;
    }

    auto start = std::chrono::steady_clock::now();
    pid_t pid = ::fork();
    if (pid < 0) {
        for (int fd : {out_pipe[0], out_pipe[1], err_pipe[0], err_pipe[1]}) ::close(fd);
        res.spawn_failed = true;
        return res;
    }

    if (pid == 0) {
        ::setpgid(0, 0);
        if (limits.memory_bytes > 0) {
            struct rlimit rl;
            rl.rlim_cur = rl.rlim_max = limits.memory_bytes;
            ::setrlimit(RLIMIT_AS, &rl);
        }
        if (iso == NetIsolation::Namespace) {
            if (::unshare(CLONE_NEWUSER | CLONE_NEWNET) != 0) ::_exit(126);
        }
        if (!cwd.empty() && ::chdir(cwd.c_str()) != 0) ::_exit(125);
        ::dup2(out_pipe[1], STDOUT_FILENO);
        ::dup2(err_pipe[1], STDERR_FILENO);

        std::vector<std::string> env_strings;
        env_strings.reserve(env.size());
        for (const auto& [k, v] : env) env_strings.push_back(k + "=" + v);
        std::vector<char*> envp;
        envp.reserve(env_strings.size() + 1);
        for (auto& s : env_strings) envp.push_back(s.data());
        envp.push_back(nullptr);

        std::vector<char*> cargv;
        cargv.reserve(argv.size() + 1);
        for (const auto& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
        cargv.push_back(nullptr);

        ::execvpe(cargv[0], cargv.data(), envp.data());
        ::_exit(127);
    }

    ::close(out_pipe[1]);
    ::close(err_pipe[1]);

    auto deadline = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                std::chrono::duration<double>(limits.wall_clock_seconds));
    struct Target {
        int fd;
        std::string* sink;
        bool open = true;
    };
    Target targets[2] = {{out_pipe[0], &res.stdout_text}, {err_pipe[0], &res.stderr_text}};
    char buf[65536];

    while (targets[0].open || targets[1].open) {
        auto now = std::chrono::steady_clock::now();
        if (now >= deadline) {
            res.timed_out = true;
            break;
        }
        struct pollfd fds[2];
        nfds_t n = 0;
        for (auto& t : targets) {
            if (!t.open) continue;
            fds[n].fd = t.fd;
            fds[n].events = POLLIN;
            fds[n].revents = 0;
            ++n;
        }
        int wait_ms = static_cast<int>(
            std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count());
        if (wait_ms < 1) wait_ms = 1;
        int rc = ::poll(fds, n, wait_ms);
        if (rc < 0) {
            if (errno == EINTR) continue;
            break;
        }
        if (rc == 0) continue; // deadline re-checked at loop head
        for (nfds_t i = 0; i < n; ++i) {
            if (!(fds[i].revents & (POLLIN | POLLHUP | POLLERR))) continue;
            Target& t = fds[i].fd == targets[0].fd ? targets[0] : targets[1];
            ssize_t got = ::read(t.fd, buf, sizeof buf);
            if (got > 0) {
                std::size_t total = res.stdout_text.size() + res.stderr_text.size();
                std::size_t room = total < limits.output_cap_bytes
                                       ? limits.output_cap_bytes - total
                                       : 0;
                std::size_t take = static_cast<std::size_t>(got);
                if (take > room) {
                    take = room;
                    res.output_truncated = true;
                }
                t.sink->append(buf, take);
            } else {
                ::close(t.fd);
                t.open = false;
            }
        }
    }
    for (auto& t : targets) {
        if (t.open) ::close(t.fd);
    }

    if (res.timed_out) {
        ::kill(-pid, SIGKILL);
        ::kill(pid, SIGKILL); // child may have missed setpgid's race window
    }
    int status = 0;
    while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {}
    res.duration_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (WIFEXITED(status)) {
        res.exit_code = WEXITSTATUS(status);
        if (res.exit_code == 127 || res.exit_code == 126 || res.exit_code == 125)
            res.spawn_failed = true;
    } else if (WIFSIGNALED(status)) {
        res.term_signal = WTERMSIG(status);
    }
    return res;
}

} // namespace skillaudit::detail
