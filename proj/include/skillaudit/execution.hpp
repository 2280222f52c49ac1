#pragma once

#include <string>
#include <utility>
#include <vector>

#include "skillaudit/artifact.hpp"

namespace skillaudit {

struct TestInput {
    std::string input_id;
    Category category = Category::Other;
    std::string prompt;
    std::vector<std::string> args;
    std::vector<std::string> fixture_files;
};

struct ProducedFile {
    std::string path;   // relative to the execution working directory
    std::string digest; // sha256 hex of contents
};

struct ExecutionRecord {
    std::string input_id;
    std::string transcript;
    std::vector<ProducedFile> produced_files;
    int exit_status = 0;
    bool timed_out = false;
    bool crashed = false; // nonzero exit, signal, or timeout
    double duration_seconds = 0.0;
    std::string isolation; // "none" | "netns" | "env-blackhole"
    std::string stderr_text;
};

// Boolean structural checks. Deliberately not a score carrier: the scoring
// aggregation refuses this type at compile time.
struct AssertionCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct SandboxLimits {
    double wall_clock_seconds = 120.0;
    std::size_t output_cap_bytes = 512ull * 1024 * 1024;
    std::size_t memory_bytes = 512ull * 1024 * 1024;
};

} // namespace skillaudit
