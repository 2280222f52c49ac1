#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include <unistd.h>

#include "skillaudit/artifact.hpp"
#include "skillaudit/config.hpp"
#include "skillaudit/detail/fsutil.hpp"
#include "skillaudit/detail/sha256.hpp"
#include "skillaudit/detail/strings.hpp"
#include "skillaudit/detail/subprocess.hpp"
#include "skillaudit/errors.hpp"
#include "skillaudit/execution.hpp"
#include "skillaudit/judge.hpp"

namespace skillaudit {

namespace detail {

// Deterministic in-place Fisher-Yates; the bounded draw uses modulo on a
// 64-bit stream, so the bias is immaterial and the sequence is stable
// across platforms (mt19937_64 is fully specified by the standard).
template <typename T>
void seeded_shuffle(std::vector<T>& v, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng() % i);
        std::swap(v[i - 1], v[j]);
    }
}

inline std::filesystem::path fresh_run_dir() {
    static std::atomic<std::uint64_t> counter{0};
    auto base = std::filesystem::temp_directory_path() /
                ("skillaudit-run-" + std::to_string(::getpid()) + "-" +
                 std::to_string(counter.fetch_add(1)));
    std::error_code ec;
    std::filesystem::create_directories(base, ec);
    if (ec || !std::filesystem::is_directory(base))
        throw AuditError(ErrorCode::SandboxSetupFailure,
                         "cannot create sandbox working directory " + base.string());
    return base;
}

// Entry script: explicit `entrypoint` frontmatter wins, then a single bundled
// script, then the lexicographically first one.
inline const FileRecord& resolve_entry_script(const SkillArtifact& art) {
    if (art.script_files.empty())
        throw AuditError(ErrorCode::SandboxSetupFailure,
                         art.skill_id + ": no script to execute");
    auto declared = art.manifest.front("entrypoint");
    if (declared && !detail::trim(*declared).empty()) {
        std::string want = detail::trim(*declared);
        for (const auto& f : art.script_files) {
            if (f.path == want ||
                std::filesystem::path(f.path).filename().string() ==
                    std::filesystem::path(want).filename().string())
                return f;
        }
    }
    return art.script_files.front();
}

inline std::string endpoint_host(const std::string& url) {
    std::string rest = url;
    if (auto pos = rest.find("://"); pos != std::string::npos) rest = rest.substr(pos + 3);
    if (auto pos = rest.find_first_of("/?#"); pos != std::string::npos) rest = rest.substr(0, pos);
    if (auto pos = rest.rfind(':'); pos != std::string::npos && rest.find(']') == std::string::npos)
        rest = rest.substr(0, pos);
    return rest;
}

} // namespace detail

// Draws n prompts for the artifact's category from the configured bank.
// Selection is a seeded shuffle of the whole bank followed by taking the
// first n, so the same (artifact, seed) always yields the same inputs and
// a larger n extends rather than replaces a smaller one's prefix.
inline std::vector<TestInput> select_test_inputs(const SkillArtifact& artifact, int n,
                                                 std::uint64_t seed, const Config& cfg) {
    std::string prefix = "bank." + std::to_string(static_cast<int>(artifact.category));
    auto ids = detail::config_id_list(cfg, prefix + ".ids");
    if (ids.size() < 7)
        throw AuditError(ErrorCode::InsufficientBank,
                         prefix + " has " + std::to_string(ids.size()) +
                             " entries; at least 7 required");
    if (n < 1 || static_cast<std::size_t>(n) > ids.size())
        throw AuditError(ErrorCode::InsufficientBank,
                         "cannot draw " + std::to_string(n) + " inputs from a bank of " +
                             std::to_string(ids.size()));

    std::vector<std::string> order(ids.begin(), ids.end());
    detail::seeded_shuffle(order, seed ^ detail::fnv1a64(artifact.skill_id));

    std::vector<TestInput> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const std::string& id = order[static_cast<std::size_t>(i)];
        TestInput t;
        t.input_id = id;
        t.category = artifact.category;
        t.prompt = cfg.get(prefix + "." + id + ".prompt");
        if (auto args = cfg.get_or(prefix + "." + id + ".args", ""); !args.empty())
            t.args = detail::split_trimmed(args, ' ');
        out.push_back(std::move(t));
    }
    return out;
}

inline std::vector<TestInput> select_test_inputs(const SkillArtifact& artifact, int n,
                                                 std::uint64_t seed) {
    return select_test_inputs(artifact, n, seed, Config::defaults());
}

// Runs one test input against the artifact and captures everything the
// dynamic gate and scorecards need. Mode A goes through the judge backend's
// generator; Modes B and D run the entry script inside the sandbox with
// network isolation matching the declared surface.
inline ExecutionRecord execute_skill(const SkillArtifact& artifact, const TestInput& input,
                                     const SandboxLimits& limits, OutputJudge& judge,
                                     const Config& cfg) {
    ExecutionMode mode = classify_mode(artifact);

    if (mode == ExecutionMode::A) {
        ExecutionRecord rec;
        rec.input_id = input.input_id;
        rec.transcript = judge.generate_transcript(artifact, input);
        rec.exit_status = 0;
        rec.isolation = "none";
        return rec;
    }

    const FileRecord& entry = detail::resolve_entry_script(artifact);
    std::filesystem::path script_abs = artifact.root / entry.path;

    std::vector<std::string> argv;
    std::string interp = cfg.get_or("sandbox.interpreter." + entry.dialect, "");
    if (!interp.empty()) {
        argv.push_back(interp);
        argv.push_back(script_abs.string());
    } else if (detail::is_executable(script_abs)) {
        argv.push_back(script_abs.string());
    } else {
        throw AuditError(ErrorCode::SandboxSetupFailure,
                         entry.path + ": no interpreter configured for dialect '" +
                             entry.dialect + "' and file is not executable");
    }
    for (const auto& a : input.args) argv.push_back(a);

    auto workdir = detail::fresh_run_dir();
    for (const auto& fx : input.fixture_files) {
        std::error_code ec;
        std::filesystem::copy_file(artifact.root / fx, workdir / std::filesystem::path(fx).filename(),
                                   std::filesystem::copy_options::overwrite_existing, ec);
    }

    std::vector<std::pair<std::string, std::string>> env = {
        {"PATH", "/usr/local/bin:/usr/bin:/bin"},
        {"HOME", workdir.string()},
        {"TMPDIR", workdir.string()},
        {"LC_ALL", "C"},
        {"PYTHONHASHSEED", "0"},
        {"SKILLAUDIT_INPUT_ID", input.input_id},
    };

    detail::NetIsolation iso;
    std::string iso_label;
    if (mode == ExecutionMode::B && detail::netns_available()) {
        iso = detail::NetIsolation::Namespace;
        iso_label = "netns";
    } else {
        // Blackhole everything through an unroutable proxy. Mode D keeps its
        // declared endpoints reachable via no_proxy; Mode B allows nothing.
        iso = detail::NetIsolation::EnvBlackhole;
        iso_label = "env-blackhole";
        for (const char* k : {"http_proxy", "https_proxy", "HTTP_PROXY", "HTTPS_PROXY",
                              "ALL_PROXY", "all_proxy"})
            env.emplace_back(k, "http://127.0.0.1:1");
        if (mode == ExecutionMode::D) {
            std::vector<std::string> hosts;
            for (const auto& d : artifact.api_declarations) {
                if (d.kind != "endpoint") continue;
                auto h = detail::endpoint_host(d.value);
                if (!h.empty()) hosts.push_back(h);
            }
            if (!hosts.empty()) {
                env.emplace_back("no_proxy", detail::join(hosts, ","));
                env.emplace_back("NO_PROXY", detail::join(hosts, ","));
            }
        }
    }

    detail::RunLimits rl;
    rl.wall_clock_seconds = limits.wall_clock_seconds;
    rl.output_cap_bytes = limits.output_cap_bytes;
    rl.memory_bytes = limits.memory_bytes;
    auto res = detail::run_process(argv, workdir.string(), env, rl, iso);

    if (res.spawn_failed) {
        std::error_code ec;
        std::filesystem::remove_all(workdir, ec);
        throw AuditError(ErrorCode::SandboxSetupFailure,
                         artifact.skill_id + "/" + input.input_id + ": sandbox spawn failed (" +
                             (argv.empty() ? std::string("empty argv") : argv.front()) + ")");
    }

    ExecutionRecord rec;
    rec.input_id = input.input_id;
    rec.transcript = std::move(res.stdout_text);
    rec.stderr_text = std::move(res.stderr_text);
    rec.timed_out = res.timed_out;
    rec.exit_status = res.timed_out ? -1 : (res.term_signal != 0 ? 128 + res.term_signal
                                                                 : res.exit_code);
    rec.crashed = res.timed_out || res.term_signal != 0 || res.exit_code != 0;
    rec.duration_seconds = res.duration_seconds;
    rec.isolation = iso_label;

    for (const auto& rel : detail::list_files_sorted(workdir)) {
        // Fixtures copied in above are inputs, not products.
        bool was_fixture = false;
        for (const auto& fx : input.fixture_files)
            if (std::filesystem::path(fx).filename().string() == rel) was_fixture = true;
        if (was_fixture) continue;
        try {
            rec.produced_files.push_back({rel, detail::sha256_hex(detail::read_file(workdir / rel))});
        } catch (const AuditError&) {
        }
    }

    std::error_code ec;
    std::filesystem::remove_all(workdir, ec);
    return rec;
}

inline ExecutionRecord execute_skill(const SkillArtifact& artifact, const TestInput& input,
                                     OutputJudge& judge, const Config& cfg) {
    SandboxLimits limits;
    limits.wall_clock_seconds = cfg.get_double("sandbox.wall_clock_seconds");
    limits.output_cap_bytes = static_cast<std::size_t>(cfg.get_int("sandbox.output_cap_bytes"));
    return execute_skill(artifact, input, limits, judge, cfg);
}

// Post-hoc conformance checks on one captured execution. These are recorded
// in the report verbatim and are invisible to scoring: nothing downstream of
// aggregate_dynamic() accepts an AssertionCheck, so a failed assertion can
// never move a number.
inline std::vector<AssertionCheck> run_assertions(const ExecutionRecord& record,
                                                  const SkillManifest& manifest) {
    std::vector<AssertionCheck> checks;

    bool any_output = detail::word_count(record.transcript) > 0 || !record.produced_files.empty();
    checks.push_back({"non_empty_output", any_output,
                      any_output ? "transcript or produced files present"
                                 : "no transcript text and no produced files"});

    for (const auto& out : manifest.declared_outputs) {
        bool found = detail::contains_ci(record.transcript, out.name);
        std::string where = found ? "mentioned in transcript" : "";
        for (const auto& f : record.produced_files) {
            if (detail::contains_ci(f.path, out.name)) {
                found = true;
                where = where.empty() ? "produced file " + f.path : where + "; file " + f.path;
            }
        }
        checks.push_back({"output_present:" + out.name, found,
                          found ? where : "declared output never surfaced"});

        if (out.type.empty()) continue;
        // Format check only bites when a produced file claims this output's
        // name: its extension must agree with the declared type.
        bool mismatch = false;
        std::string detail_text = "no produced file claims this name; format unverified";
        for (const auto& f : record.produced_files) {
            if (!detail::contains_ci(f.path, out.name)) continue;
            auto ext = detail::to_lower(std::filesystem::path(f.path).extension().string());
            if (!ext.empty()) ext.erase(0, 1);
            std::string want = detail::to_lower(out.type);
            bool ok = ext == want || (want == "markdown" && ext == "md") ||
                      (want == "md" && ext == "markdown") || (want == "text" && ext == "txt");
            if (!ok) {
                mismatch = true;
                detail_text = f.path + " has extension ." + ext + ", declared type " + out.type;
            } else {
                detail_text = f.path + " matches declared type " + out.type;
            }
        }
        checks.push_back({"output_format:" + out.name, !mismatch, detail_text});
    }
    return checks;
}

} // namespace skillaudit
