#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "skillaudit/artifact.hpp"
#include "skillaudit/config.hpp"
#include "skillaudit/detail/fsutil.hpp"
#include "skillaudit/errors.hpp"
#include "skillaudit/harness.hpp"
#include "skillaudit/judge.hpp"
#include "skillaudit/report.hpp"
#include "skillaudit/research_gate.hpp"
#include "skillaudit/rubric.hpp"
#include "skillaudit/scoring.hpp"
#include "skillaudit/static_gate.hpp"

namespace skillaudit {

struct AuditOptions {
    std::uint64_t seed = 0;
    bool deterministic = false;
    std::string framework_version = "1.0"; // "1.0" | "1.1.0"
    std::optional<Category> category;      // overrides the manifest's own declaration
};

namespace detail {

inline Category category_for(const std::filesystem::path& dir, const AuditOptions& opts) {
    if (opts.category) return *opts.category;
    try {
        auto m = parse_manifest(read_file(dir / "SKILL.md"));
        if (auto c = m.front("category"))
            if (auto parsed = parse_category(*c)) return *parsed;
    } catch (const AuditError&) {
    }
    return Category::Other;
}

// A manifest that cannot be parsed, or an artifact whose execution surface is
// contradictory, is itself a structural-consistency violation: the audit does
// not abort, it records a T2 veto.
inline AuditReport structural_reject_report(const std::string& skill_id, Category category,
                                            const AuditError& err, const Config& cfg,
                                            const ReportOptions& ropts) {
    VetoFinding t2;
    t2.dimension = VetoDimension::T2;
    t2.verdict = Verdict::Fail;
    t2.evidence.push_back({err.code() == ErrorCode::UnclassifiableMode
                               ? "t2.unclassifiable_mode"
                               : "t2.manifest_unparseable",
                           "SKILL.md", 0, truncate_utf8(err.what(), 200)});

    GateResult g1;
    g1.gate = 1;
    for (auto dim : {VetoDimension::T1, VetoDimension::T3, VetoDimension::T4}) {
        VetoFinding f;
        f.dimension = dim;
        f.verdict = Verdict::NotApplicable;
        f.notes.push_back("not evaluated: structural veto precedes all other checks");
        g1.findings.push_back(std::move(f));
    }
    g1.findings.insert(g1.findings.begin() + 1, std::move(t2));
    g1.passed = false;

    GateResult g2;
    g2.gate = 2;
    for (auto dim :
         {VetoDimension::M1, VetoDimension::M2, VetoDimension::M3, VetoDimension::M4}) {
        VetoFinding f;
        f.dimension = dim;
        f.verdict = Verdict::NotApplicable;
        f.notes.push_back("not evaluated: release gate vetoed upstream");
        g2.findings.push_back(std::move(f));
    }
    g2.passed = true;

    FinalAssessment fa;
    fa.final_score = 0.0;
    fa.disposition = Disposition::Reject;
    fa.gate1 = g1;
    fa.gate2 = g2;
    fa.vetoed = true;

    SkillArtifact shell;
    shell.skill_id = skill_id;
    shell.category = category;
    EffectiveRubric empty_rubric;
    empty_rubric.category = category;
    AuditReport r = build_report(shell, ExecutionMode::A, ComplexityTier::Simple, empty_rubric,
                                 fa, {}, {}, std::nullopt, cfg, ropts);
    r.mode = "unknown";
    r.tier = "unknown";
    r.dynamic_test_count = 0;
    r.notes.push_back("audit aborted before execution: " +
                      std::string(error_code_name(err.code())));
    return r;
}

} // namespace detail

// End-to-end audit of one skill directory. Throws only for auditor-side
// faults (sandbox setup, judge transport, bank exhaustion, bad config);
// artifact defects always come back as a report.
inline AuditReport audit_skill(const std::filesystem::path& dir, OutputJudge& judge,
                               const Config& cfg, const AuditOptions& opts = {}) {
    ReportOptions ropts;
    ropts.framework = framework_version_string(opts.framework_version);
    ropts.seed = opts.seed;
    ropts.deterministic = opts.deterministic;

    Category category = detail::category_for(dir, opts);
    std::string fallback_id = dir.filename().string();

    SkillArtifact artifact;
    ExecutionMode mode;
    try {
        artifact = discover_skill(dir, category, cfg);
        mode = classify_mode(artifact);
    } catch (const AuditError& e) {
        switch (e.code()) {
        case ErrorCode::EmptyFile:
        case ErrorCode::MissingFrontmatter:
        case ErrorCode::MissingRequiredField:
        case ErrorCode::NoManifest:
        case ErrorCode::UnclassifiableMode:
            return detail::structural_reject_report(fallback_id, category, e, cfg, ropts);
        default:
            throw;
        }
    }

    ComplexityTier tier = estimate_complexity(artifact, cfg);
    int n = dynamic_test_count(tier);

    auto rubric = apply_scene_overrides(load_rubric(cfg),
                                        load_scene_overrides(cfg, opts.framework_version),
                                        category, mode);

    auto inputs = select_test_inputs(artifact, n, opts.seed, cfg);

    SandboxLimits limits;
    limits.wall_clock_seconds = cfg.get_double("sandbox.wall_clock_seconds");
    limits.output_cap_bytes = static_cast<std::size_t>(cfg.get_int("sandbox.output_cap_bytes"));

    // Smoke runs double as the dynamic-phase executions: each input runs
    // exactly once and both T1 and the scorecards read the same records.
    std::vector<ExecutionRecord> records;
    bool executed = false;
    auto provider = [&]() -> const std::vector<ExecutionRecord>& {
        if (!executed) {
            for (const auto& in : inputs)
                records.push_back(execute_skill(artifact, in, limits, judge, cfg));
            executed = true;
        }
        return records;
    };

    GateResult gate1 = run_gate1(artifact, cfg, provider);

    FinalAssessment fa;
    fa.gate1 = gate1;

    if (!gate1.passed) {
        GateResult g2;
        g2.gate = 2;
        for (auto dim :
             {VetoDimension::M1, VetoDimension::M2, VetoDimension::M3, VetoDimension::M4}) {
            VetoFinding f;
            f.dimension = dim;
            f.verdict = Verdict::NotApplicable;
            f.notes.push_back("not evaluated: technical gate vetoed upstream");
            g2.findings.push_back(std::move(f));
        }
        g2.passed = true;
        fa.gate2 = g2;
        fa.final_score = 0.0;
        fa.disposition = Disposition::Reject;
        fa.vetoed = true;
        return build_report(artifact, mode, tier, rubric, fa, records, {}, std::nullopt, cfg,
                            ropts);
    }

    provider(); // Mode A artifacts have no smoke trigger inside gate 1

    StaticScorecard static_card = compute_static_score(artifact, rubric, judge);
    double s_static = static_card.s_static;

    std::vector<DynamicScorecard> cards;
    cards.reserve(records.size());
    for (const auto& rec : records) cards.push_back(judge.judge_output(rec, rubric, artifact));
    double d_bar = aggregate_dynamic(cards);

    GateResult gate2 = run_gate2(records, category, artifact, cfg);
    fa.gate2 = gate2;

    fa.s_static = s_static;
    fa.d_bar = d_bar;
    fa.final_score = compute_final(s_static, d_bar, cfg.get_double("scoring.static_weight"),
                                   cfg.get_double("scoring.dynamic_weight"));
    fa.disposition =
        assign_disposition(fa.final_score, gate1, gate2, DispositionThresholds::from_config(cfg));
    fa.vetoed = !gate2.passed;

    return build_report(artifact, mode, tier, rubric, fa, records, cards, static_card, cfg,
                        ropts);
}

struct BatchFailure {
    std::string skill_id;
    std::string error;
};

struct BatchResult {
    std::vector<std::string> audited; // skill ids, in directory order
    std::vector<BatchFailure> failures;
};

// Audits every direct subdirectory of root that carries a SKILL.md and
// writes <out>/<skill_id>.json and .md. Worker count comes from config;
// output is byte-identical regardless of parallelism.
inline BatchResult run_batch(const std::filesystem::path& root,
                             const std::filesystem::path& out_dir,
                             const std::function<std::unique_ptr<OutputJudge>()>& judge_factory,
                             const Config& cfg, const AuditOptions& opts = {}) {
    std::vector<std::filesystem::path> dirs;
    for (const auto& entry : std::filesystem::directory_iterator(root))
        if (entry.is_directory() && std::filesystem::exists(entry.path() / "SKILL.md"))
            dirs.push_back(entry.path());
    std::sort(dirs.begin(), dirs.end());

    std::filesystem::create_directories(out_dir);

    long workers = cfg.get_int("batch.workers");
    if (workers < 1) workers = 1;
    if (static_cast<std::size_t>(workers) > dirs.size() && !dirs.empty())
        workers = static_cast<long>(dirs.size());

    BatchResult result;
    result.audited.resize(dirs.size());
    std::mutex failures_mu;
    std::atomic<std::size_t> next{0};

    auto work = [&] {
        auto judge = judge_factory();
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= dirs.size()) break;
            std::string id = dirs[i].filename().string();
            try {
                AuditReport r = audit_skill(dirs[i], *judge, cfg, opts);
                detail::write_file(out_dir / (r.skill_id + ".json"), emit_json(r));
                detail::write_file(out_dir / (r.skill_id + ".md"), emit_markdown(r));
                result.audited[i] = r.skill_id;
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(failures_mu);
                result.failures.push_back({id, e.what()});
            }
        }
    };

    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (long w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    // Erase slots left empty by failures.
    std::vector<std::string> audited;
    for (auto& id : result.audited)
        if (!id.empty()) audited.push_back(std::move(id));
    result.audited = std::move(audited);
    return result;
}

} // namespace skillaudit
