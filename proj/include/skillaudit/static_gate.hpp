#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "skillaudit/artifact.hpp"
#include "skillaudit/config.hpp"
#include "skillaudit/dependency.hpp"
#include "skillaudit/detail/scan.hpp"
#include "skillaudit/execution.hpp"
#include "skillaudit/veto.hpp"

namespace skillaudit {

namespace detail {

inline Evidence to_evidence(const PatternHit& h) {
    return {h.rule, h.path, h.line, h.excerpt};
}

inline int frontmatter_key_line(const SkillManifest& m, std::string_view key) {
    auto lines = split_lines(m.raw);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        auto t = trim(lines[i]);
        if (t.starts_with(key) && t.size() > key.size() && t[key.size()] == ':')
            return static_cast<int>(i + 1);
    }
    return 0;
}

} // namespace detail

// T2: manifest self-consistency. Parse-level failures (missing fields, no
// frontmatter) surface earlier as thrown errors; the checks here cover a
// manifest that parsed but contradicts the bundled files.
inline VetoFinding check_t2(const SkillArtifact& art) {
    VetoFinding f;
    f.dimension = VetoDimension::T2;
    f.verdict = Verdict::Pass;
    const SkillManifest& m = art.manifest;

    if (detail::trim(m.name).empty())
        f.evidence.push_back({"t2.required_fields", "SKILL.md", 0, "name is empty"});
    if (detail::trim(m.description).empty())
        f.evidence.push_back({"t2.required_fields", "SKILL.md", 0, "description is empty"});

    for (std::size_t i = 0; i < m.declared_outputs.size(); ++i) {
        for (std::size_t j = i + 1; j < m.declared_outputs.size(); ++j) {
            const auto& a = m.declared_outputs[i];
            const auto& b = m.declared_outputs[j];
            if (a.name == b.name && !a.type.empty() && !b.type.empty() && a.type != b.type) {
                f.evidence.push_back({"t2.output_type_conflict", "SKILL.md",
                                      detail::frontmatter_key_line(m, "outputs"),
                                      "output '" + a.name + "' declared as both '" + a.type +
                                          "' and '" + b.type + "'"});
            }
        }
    }

    if (auto entry = m.front("entrypoint"); entry && !entry->empty()) {
        bool found = false;
        for (const auto& s : art.script_files)
            if (s.path == *entry || fs::path(s.path).filename() == *entry) found = true;
        if (!found)
            f.evidence.push_back({"t2.entrypoint_missing", "SKILL.md",
                                  detail::frontmatter_key_line(m, "entrypoint"),
                                  "declared entrypoint '" + *entry + "' has no matching script"});
    }

    bool body_references_scripts =
        detail::contains_ci(m.body, "scripts/") || m.front("entrypoint").has_value();
    if (body_references_scripts && art.script_files.empty()) {
        f.evidence.push_back({"t2.declared_scripts_missing", "SKILL.md", 0,
                              "manifest references executable scripts but the skill bundles none"});
    }

    if (!f.evidence.empty()) f.verdict = Verdict::Fail;
    return f;
}

inline VetoFinding check_t3(const std::vector<detail::ScriptText>& scripts, const Config& cfg) {
    VetoFinding f;
    f.dimension = VetoDimension::T3;
    f.verdict = Verdict::Pass;
    for (const auto& h : detail::unseeded_rng_hits(scripts, cfg))
        f.evidence.push_back(detail::to_evidence(h));
    for (const auto& h : detail::unbounded_loop_hits(scripts))
        f.evidence.push_back(detail::to_evidence(h));
    if (!f.evidence.empty()) f.verdict = Verdict::Fail;
    return f;
}

inline VetoFinding check_t4(const SkillArtifact& art,
                            const std::vector<detail::ScriptText>& scripts, const Config& cfg) {
    VetoFinding f;
    f.dimension = VetoDimension::T4;
    f.verdict = Verdict::Pass;
    for (const auto& h : detail::unsanitized_eval_hits(scripts, cfg))
        f.evidence.push_back(detail::to_evidence(h));
    for (const auto& h : detail::injection_hits(art.manifest.body, cfg))
        f.evidence.push_back(detail::to_evidence(h));
    if (!f.evidence.empty()) f.verdict = Verdict::Fail;
    return f;
}

inline void append_dependency_conflicts(VetoFinding& f, const SkillArtifact& art,
                                        const Config& cfg) {
    auto constraints = collect_dependency_constraints(art, cfg);
    for (const auto& c : find_dependency_conflicts(constraints)) {
        std::string excerpt = c.package + ": " + c.detail;
        if (c.a && c.b) excerpt += " (" + c.a->raw + " vs " + c.b->raw + ")";
        f.evidence.push_back({"t1.dependency_conflict", c.a ? c.a->file : "requirements.txt",
                              c.a ? c.a->line : 0, excerpt});
    }
}

// T1 = crash rate over smoke executions (strictly above threshold fails;
// the boundary value passes) plus dependency-conflict resolution. Pass
// smoke=nullptr for Mode A, where no execution evidence exists.
inline VetoFinding check_t1(const SkillArtifact& art,
                            const std::vector<ExecutionRecord>* smoke, const Config& cfg) {
    VetoFinding f;
    f.dimension = VetoDimension::T1;
    f.verdict = Verdict::Pass;

    ExecutionMode mode = classify_mode(art);
    if (mode != ExecutionMode::A) {
        if (!smoke || smoke->empty())
            throw AuditError(ErrorCode::MissingSmokeRuns,
                             "T1 on mode " + std::string(mode_name(mode)) +
                                 " requires at least one smoke execution");
        int crashes = 0;
        for (const auto& r : *smoke) {
            if (!r.crashed) continue;
            ++crashes;
            std::string what = r.timed_out ? "timed out"
                                           : "exit status " + std::to_string(r.exit_status);
            std::string tail(detail::truncate_utf8(
                detail::trim(r.stderr_text.empty() ? r.transcript : r.stderr_text), 200));
            f.evidence.push_back({"t1.crash", r.input_id, 0, what + ": " + tail});
        }
        double rate = static_cast<double>(crashes) / static_cast<double>(smoke->size());
        f.crash_rate = rate;
        if (rate <= cfg.get_double("t1.crash_rate_threshold")) {
            // below or at threshold: crash evidence is informational
            if (crashes > 0)
                f.notes.push_back("crash rate " + std::to_string(crashes) + "/" +
                                  std::to_string(smoke->size()) + " within tolerance");
            f.evidence.clear();
        }
    }

    append_dependency_conflicts(f, art, cfg);
    if (!f.evidence.empty()) f.verdict = Verdict::Fail;
    return f;
}

inline VetoFinding check_structural_dimension(const SkillArtifact& art, VetoDimension dim,
                                              const std::vector<ExecutionRecord>* smoke,
                                              const Config& cfg) {
    switch (dim) {
    case VetoDimension::T1: return check_t1(art, smoke, cfg);
    case VetoDimension::T2: return check_t2(art);
    case VetoDimension::T3: {
        auto scripts = detail::load_script_texts(art);
        return check_t3(scripts, cfg);
    }
    case VetoDimension::T4: {
        auto scripts = detail::load_script_texts(art);
        return check_t4(art, scripts, cfg);
    }
    default:
        throw AuditError(ErrorCode::InternalError, "not a gate-1 dimension");
    }
}

// Cheap static scans run first; smoke executions happen only when T2-T4 are
// clean, so a skill vetoed on structure or security is never executed. In
// that case T1 still reports its dependency-resolution half.
inline GateResult run_gate1(
    const SkillArtifact& art, const Config& cfg,
    const std::function<const std::vector<ExecutionRecord>&()>& smoke_provider) {
    auto scripts = detail::load_script_texts(art);
    VetoFinding t2 = check_t2(art);
    VetoFinding t3 = check_t3(scripts, cfg);
    VetoFinding t4 = check_t4(art, scripts, cfg);

    bool static_veto = t2.verdict == Verdict::Fail || t3.verdict == Verdict::Fail ||
                       t4.verdict == Verdict::Fail;
    VetoFinding t1;
    if (classify_mode(art) == ExecutionMode::A) {
        t1 = check_t1(art, nullptr, cfg);
    } else if (static_veto) {
        t1.dimension = VetoDimension::T1;
        append_dependency_conflicts(t1, art, cfg);
        if (!t1.evidence.empty()) {
            t1.verdict = Verdict::Fail;
        } else {
            t1.verdict = Verdict::NotApplicable;
            t1.notes.push_back("smoke executions skipped: static scan already vetoed");
        }
    } else {
        const auto& smoke = smoke_provider();
        t1 = check_t1(art, &smoke, cfg);
    }

    return make_gate_result(1, {std::move(t1), std::move(t2), std::move(t3), std::move(t4)});
}

} // namespace skillaudit
