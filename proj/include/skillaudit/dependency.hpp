#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "skillaudit/artifact.hpp"
#include "skillaudit/config.hpp"
#include "skillaudit/detail/fsutil.hpp"
#include "skillaudit/detail/strings.hpp"

namespace skillaudit {

struct DepConstraint {
    std::string package; // lowercased
    std::string op;      // == >= <= > <
    std::vector<int> version;
    std::string raw;  // original line text
    std::string file; // manifest path relative to skill root
    int line = 0;
};

struct DepConflict {
    std::string package;
    std::string detail;
    const DepConstraint* a = nullptr;
    const DepConstraint* b = nullptr;
};

namespace detail {

inline std::vector<int> parse_version(std::string_view s) {
    std::vector<int> v;
    int cur = 0;
    bool have = false;
    for (char c : s) {
        if (c >= '0' && c <= '9') {
            cur = cur * 10 + (c - '0');
            have = true;
        } else if (c == '.' && have) {
            v.push_back(cur);
            cur = 0;
            have = false;
        } else {
            break; // suffixes (rc1, post) ignored
        }
    }
    if (have) v.push_back(cur);
    return v;
}

inline int compare_versions(const std::vector<int>& a, const std::vector<int>& b) {
    std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        int x = i < a.size() ? a[i] : 0;
        int y = i < b.size() ? b[i] : 0;
        if (x != y) return x < y ? -1 : 1;
    }
    return 0;
}

} // namespace detail

// requirements.txt subset: one requirement per line, `pkg` optionally
// followed by comma-separated comparator clauses. Unpinned names carry no
// constraint and can never conflict.
inline std::vector<DepConstraint> parse_requirements(const std::string& text,
                                                     const std::string& file) {
    std::vector<DepConstraint> out;
    auto lines = detail::split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        std::string line = std::string(detail::trim(lines[i]));
        auto hash = line.find('#');
        if (hash != std::string::npos) line = std::string(detail::trim(line.substr(0, hash)));
        if (line.empty()) continue;

        auto first_op = line.find_first_of("<>=!");
        std::string pkg = detail::to_lower(
            detail::trim(first_op == std::string::npos ? line : line.substr(0, first_op)));
        if (pkg.empty()) continue;
        if (first_op == std::string::npos) {
            out.push_back({pkg, "", {}, line, file, static_cast<int>(i + 1)});
            continue;
        }
        for (const auto& clause : detail::split_trimmed(line.substr(first_op), ',')) {
            if (clause.empty()) continue;
            std::string op;
            std::size_t p = 0;
            while (p < clause.size() && (clause[p] == '<' || clause[p] == '>' ||
                                         clause[p] == '=' || clause[p] == '!'))
                op += clause[p++];
            auto ver = detail::parse_version(detail::trim(clause.substr(p)));
            if (op == "!=" || ver.empty()) continue; // exclusions don't shrink intervals
            out.push_back({pkg, op, ver, line, file, static_cast<int>(i + 1)});
        }
    }
    return out;
}

inline std::vector<DepConstraint> collect_dependency_constraints(const SkillArtifact& art,
                                                                 const Config& cfg) {
    std::vector<DepConstraint> all;
    const auto& names = cfg.get_list("deps.manifest_name");
    for (const auto& rec : art.reference_files) {
        std::string base = fs::path(rec.path).filename().string();
        if (std::find(names.begin(), names.end(), base) == names.end()) continue;
        auto text = detail::read_file(art.root / rec.path);
        for (auto& c : parse_requirements(text, rec.path)) all.push_back(std::move(c));
    }
    return all;
}

// Interval intersection per package. A conflict is an empty intersection:
// two different pins, a pin outside a bound, or crossed lower/upper bounds.
inline std::vector<DepConflict> find_dependency_conflicts(
    const std::vector<DepConstraint>& constraints) {
    using detail::compare_versions;
    std::map<std::string, std::vector<const DepConstraint*>> by_pkg;
    for (const auto& c : constraints)
        if (!c.op.empty()) by_pkg[c.package].push_back(&c);

    std::vector<DepConflict> conflicts;
    for (const auto& [pkg, cs] : by_pkg) {
        const DepConstraint* pin = nullptr;
        const DepConstraint* lo = nullptr; // greatest lower bound
        bool lo_incl = true;
        const DepConstraint* hi = nullptr; // least upper bound
        bool hi_incl = true;

        auto conflict = [&](const DepConstraint* a, const DepConstraint* b,
                            const std::string& why) {
            conflicts.push_back({pkg, why, a, b});
        };

        for (const auto* c : cs) {
            if (c->op == "==") {
                if (pin && compare_versions(pin->version, c->version) != 0) {
                    conflict(pin, c, "pinned to two different versions");
                    goto next_pkg;
                }
                if (!pin) pin = c;
            } else if (c->op == ">=" || c->op == ">") {
                bool incl = c->op == ">=";
                if (!lo || compare_versions(c->version, lo->version) > 0 ||
                    (compare_versions(c->version, lo->version) == 0 && lo_incl && !incl)) {
                    lo = c;
                    lo_incl = incl;
                }
            } else if (c->op == "<=" || c->op == "<") {
                bool incl = c->op == "<=";
                if (!hi || compare_versions(c->version, hi->version) < 0 ||
                    (compare_versions(c->version, hi->version) == 0 && hi_incl && !incl)) {
                    hi = c;
                    hi_incl = incl;
                }
            }
        }
        if (pin && lo) {
            int cmp = compare_versions(pin->version, lo->version);
            if (cmp < 0 || (cmp == 0 && !lo_incl)) {
                conflict(pin, lo, "pin below lower bound");
                continue;
            }
        }
        if (pin && hi) {
            int cmp = compare_versions(pin->version, hi->version);
            if (cmp > 0 || (cmp == 0 && !hi_incl)) {
                conflict(pin, hi, "pin above upper bound");
                continue;
            }
        }
        if (lo && hi) {
            int cmp = compare_versions(lo->version, hi->version);
            if (cmp > 0 || (cmp == 0 && !(lo_incl && hi_incl))) {
                conflict(lo, hi, "lower bound exceeds upper bound");
                continue;
            }
        }
    next_pkg:;
    }
    return conflicts;
}

// Package names usable by import checks: everything any bundled manifest
// names, pinned or not.
inline std::vector<std::string> declared_packages(const std::vector<DepConstraint>& constraints) {
    std::vector<std::string> out;
    for (const auto& c : constraints)
        if (std::find(out.begin(), out.end(), c.package) == out.end()) out.push_back(c.package);
    return out;
}

} // namespace skillaudit
