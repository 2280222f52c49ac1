#pragma once

#include <cstdint>
#include <ctime>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "skillaudit/artifact.hpp"
#include "skillaudit/detail/numfmt.hpp"
#include "skillaudit/detail/strings.hpp"
#include "skillaudit/errors.hpp"
#include "skillaudit/execution.hpp"
#include "skillaudit/harness.hpp"
#include "skillaudit/rubric.hpp"
#include "skillaudit/scorecards.hpp"
#include "skillaudit/scoring.hpp"
#include "skillaudit/veto.hpp"

namespace skillaudit {

struct ExecutionSummary {
    std::string input_id;
    int exit_status = 0;
    bool timed_out = false;
    bool crashed = false;
    double duration_seconds = 0.0;
    std::string isolation;
    long transcript_words = 0;
    std::vector<ProducedFile> produced_files;
};

struct AssertionSet {
    std::string input_id;
    std::vector<AssertionCheck> checks;
};

// Everything the auditor concluded about one artifact, with every number
// already canonicalized: scores carry one decimal, statistics nine
// significant digits, so parse(emit_json(r)) reproduces r field for field.
struct AuditReport {
    std::string skill_id;
    std::string framework;
    std::string generated_at;
    int category = 5;
    std::string category_name;
    std::string mode;
    std::string tier;
    int dynamic_test_count = 0;
    std::uint64_t seed = 0;
    bool generated_transcripts = false; // Mode A caveat: outputs are generator-backed
    std::vector<std::string> annotations;
    std::vector<std::string> applied_override_ids;
    std::vector<std::string> notes;

    GateResult gate1;
    GateResult gate2;

    std::optional<StaticScorecard> static_scorecard;
    std::vector<DynamicScorecard> dynamic_scorecards;
    std::vector<ExecutionSummary> executions;
    std::vector<AssertionSet> assertions;

    std::optional<double> s_static;
    std::optional<double> d_bar;
    double final_score = 0.0;       // one-decimal display value
    double final_score_exact = 0.0; // nine-sig-digit value the disposition used
    std::string disposition;
    bool vetoed = false;
    std::vector<std::string> guidance;
};

namespace detail {

inline double canon_stat(double x) { return std::stod(format_stat(x)); }

using ordered = nlohmann::json; // nlohmann objects iterate in sorted key order

inline ordered evidence_json(const Evidence& e) {
    return {{"rule", e.rule}, {"location", e.location}, {"line", e.line}, {"excerpt", e.excerpt}};
}

inline Evidence evidence_from(const ordered& j) {
    return {j.at("rule").get<std::string>(), j.at("location").get<std::string>(),
            j.at("line").get<int>(), j.at("excerpt").get<std::string>()};
}

inline ordered gate_json(const GateResult& g) {
    ordered findings = ordered::array();
    for (const auto& f : g.findings) {
        ordered fj;
        fj["dimension"] = dimension_id(f.dimension);
        fj["title"] = dimension_title(f.dimension);
        fj["verdict"] = verdict_name(f.verdict);
        if (f.crash_rate) fj["crash_rate"] = canon_stat(*f.crash_rate);
        ordered ev = ordered::array();
        for (const auto& e : f.evidence) ev.push_back(evidence_json(e));
        fj["evidence"] = std::move(ev);
        ordered wa = ordered::array();
        for (const auto& e : f.warnings) wa.push_back(evidence_json(e));
        fj["warnings"] = std::move(wa);
        fj["notes"] = f.notes;
        findings.push_back(std::move(fj));
    }
    return {{"gate", g.gate}, {"passed", g.passed}, {"findings", std::move(findings)}};
}

inline VetoDimension dimension_from_id(const std::string& id) {
    for (auto d : {VetoDimension::T1, VetoDimension::T2, VetoDimension::T3, VetoDimension::T4,
                   VetoDimension::M1, VetoDimension::M2, VetoDimension::M3, VetoDimension::M4})
        if (dimension_id(d) == id) return d;
    throw AuditError(ErrorCode::InternalError, "unknown dimension id " + id);
}

inline Verdict verdict_from_name(const std::string& s) {
    if (s == "PASS") return Verdict::Pass;
    if (s == "FAIL") return Verdict::Fail;
    if (s == "NOT_APPLICABLE") return Verdict::NotApplicable;
    throw AuditError(ErrorCode::InternalError, "unknown verdict " + s);
}

inline GateResult gate_from(const ordered& j) {
    GateResult g;
    g.gate = j.at("gate").get<int>();
    g.passed = j.at("passed").get<bool>();
    for (const auto& fj : j.at("findings")) {
        VetoFinding f;
        f.dimension = dimension_from_id(fj.at("dimension").get<std::string>());
        f.verdict = verdict_from_name(fj.at("verdict").get<std::string>());
        if (fj.contains("crash_rate")) f.crash_rate = fj.at("crash_rate").get<double>();
        for (const auto& e : fj.at("evidence")) f.evidence.push_back(evidence_from(e));
        for (const auto& e : fj.at("warnings")) f.warnings.push_back(evidence_from(e));
        f.notes = fj.at("notes").get<std::vector<std::string>>();
        g.findings.push_back(std::move(f));
    }
    return g;
}

inline ordered criterion_json(const CriterionScore& c) {
    return {{"id", c.id},
            {"name", c.name},
            {"points", detail::quantize_score(c.points)},
            {"max_points", detail::quantize_score(c.max_points)},
            {"rationale", c.rationale}};
}

inline CriterionScore criterion_from(const ordered& j) {
    return {j.at("id").get<std::string>(), j.at("name").get<std::string>(),
            j.at("points").get<double>(), j.at("max_points").get<double>(),
            j.at("rationale").get<std::string>()};
}

} // namespace detail

struct ReportOptions {
    std::string framework = "skill-auditor@1.0";
    std::uint64_t seed = 0;
    bool deterministic = false; // zero timestamps and durations
    std::string timestamp;      // override; empty = wall clock (or epoch if deterministic)
};

namespace detail {

inline std::string iso8601_now() {
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline void append_deficit_guidance(std::vector<std::string>& out, const CriterionScore& c,
                                    const std::string& guidance_text, double fraction) {
    if (c.max_points <= 0 || c.points >= fraction * c.max_points) return;
    std::string g = guidance_text.empty() ? "raise this criterion above the deficit line"
                                          : guidance_text;
    out.push_back(c.id + " " + c.name + ": " + g);
}

} // namespace detail

// Assembles the report and freezes every floating-point field through the
// canonical formatter, so later JSON emission is a pure rendering step.
inline AuditReport build_report(const SkillArtifact& artifact, ExecutionMode mode,
                                ComplexityTier tier, const EffectiveRubric& rubric,
                                const FinalAssessment& assessment,
                                const std::vector<ExecutionRecord>& records,
                                const std::vector<DynamicScorecard>& cards,
                                const std::optional<StaticScorecard>& static_card,
                                const Config& cfg, const ReportOptions& opts) {
    AuditReport r;
    r.skill_id = artifact.skill_id;
    r.framework = opts.framework;
    r.generated_at = !opts.timestamp.empty()
                         ? opts.timestamp
                         : (opts.deterministic ? "1970-01-01T00:00:00Z" : detail::iso8601_now());
    r.category = static_cast<int>(artifact.category);
    r.category_name = category_name(artifact.category);
    r.mode = mode_name(mode);
    r.tier = tier_name(tier);
    r.dynamic_test_count = dynamic_test_count(tier);
    r.seed = opts.seed;
    r.generated_transcripts = mode == ExecutionMode::A;
    r.annotations = rubric.annotations;
    r.applied_override_ids = rubric.applied_override_ids;

    r.gate1 = assessment.gate1;
    r.gate2 = assessment.gate2;
    for (auto* g : {&r.gate1, &r.gate2})
        for (auto& f : g->findings)
            if (f.crash_rate) f.crash_rate = detail::canon_stat(*f.crash_rate);

    if (static_card) {
        StaticScorecard sc = *static_card;
        for (auto& e : sc.entries) {
            e.points = detail::quantize_score(e.points);
            e.max_points = detail::quantize_score(e.max_points);
        }
        for (auto& [k, v] : sc.dimension_subtotals) v = detail::quantize_score(v);
        sc.s_static = detail::quantize_score(sc.s_static);
        r.static_scorecard = std::move(sc);
    }
    for (auto card : cards) {
        for (auto* side : {&card.layer1_entries, &card.layer2_entries})
            for (auto& e : *side) {
                e.points = detail::quantize_score(e.points);
                e.max_points = detail::quantize_score(e.max_points);
            }
        card.layer1_points = detail::quantize_score(card.layer1_points);
        card.layer2_points = detail::quantize_score(card.layer2_points);
        card.total = detail::quantize_score(card.total);
        r.dynamic_scorecards.push_back(std::move(card));
    }

    for (const auto& rec : records) {
        ExecutionSummary s;
        s.input_id = rec.input_id;
        s.exit_status = rec.exit_status;
        s.timed_out = rec.timed_out;
        s.crashed = rec.crashed;
        s.duration_seconds =
            opts.deterministic ? 0.0 : detail::canon_stat(rec.duration_seconds);
        s.isolation = rec.isolation;
        s.transcript_words = static_cast<long>(detail::word_count(rec.transcript));
        s.produced_files = rec.produced_files;
        r.executions.push_back(std::move(s));

        r.assertions.push_back({rec.input_id, run_assertions(rec, artifact.manifest)});
    }

    if (assessment.s_static) r.s_static = detail::quantize_score(*assessment.s_static);
    if (assessment.d_bar) r.d_bar = detail::quantize_score(*assessment.d_bar);
    r.final_score = detail::quantize_score(assessment.final_score);
    r.final_score_exact = detail::canon_stat(assessment.final_score);
    r.disposition = disposition_name(assessment.disposition);
    r.vetoed = assessment.vetoed;

    double fraction = cfg.get_double("guidance.deficit_fraction");
    std::map<std::string, std::pair<std::string, std::string>> guidance_by_id;
    for (const auto& c : rubric.static_criteria) guidance_by_id[c.id] = {c.name, c.guidance};
    for (const auto& c : rubric.layer1) guidance_by_id[c.id] = {c.name, c.guidance};
    for (const auto& c : rubric.layer2) guidance_by_id[c.id] = {c.name, c.guidance};

    if (r.static_scorecard)
        for (const auto& e : r.static_scorecard->entries)
            detail::append_deficit_guidance(r.guidance, e, guidance_by_id[e.id].second, fraction);

    if (!r.dynamic_scorecards.empty()) {
        // Mean per dynamic criterion across all scorecards; one line per deficit.
        std::vector<std::string> order;
        std::map<std::string, std::pair<double, double>> acc; // id -> (sum points, max)
        for (const auto& card : r.dynamic_scorecards)
            for (auto* side : {&card.layer1_entries, &card.layer2_entries})
                for (const auto& e : *side) {
                    if (!acc.count(e.id)) order.push_back(e.id);
                    acc[e.id].first += e.points;
                    acc[e.id].second = e.max_points;
                }
        double n = static_cast<double>(r.dynamic_scorecards.size());
        for (const auto& id : order) {
            CriterionScore mean{id, guidance_by_id[id].first, acc[id].first / n, acc[id].second,
                                ""};
            detail::append_deficit_guidance(r.guidance, mean, guidance_by_id[id].second, fraction);
        }
    }

    for (const auto* g : {&r.gate1, &r.gate2})
        for (const auto& f : g->findings) {
            if (f.verdict != Verdict::Fail) continue;
            std::string line = "resolve " + std::string(dimension_id(f.dimension)) + " (" +
                               dimension_title(f.dimension) + ") veto";
            if (!f.evidence.empty())
                line += ": " + f.evidence.front().rule + " at " + f.evidence.front().location +
                        ":" + std::to_string(f.evidence.front().line);
            r.guidance.push_back(std::move(line));
        }

    if (r.guidance.empty() && assessment.disposition != Disposition::ProductionReady)
        r.guidance.push_back(
            "no single criterion fell below its deficit line; raise the weakest scored "
            "criteria to reach the next release band");

    return r;
}

inline std::string emit_json(const AuditReport& r) {
    using detail::ordered;
    ordered j;
    j["skill_id"] = r.skill_id;
    j["framework"] = r.framework;
    j["generated_at"] = r.generated_at;
    j["category"] = r.category;
    j["category_name"] = r.category_name;
    j["mode"] = r.mode;
    j["tier"] = r.tier;
    j["dynamic_test_count"] = r.dynamic_test_count;
    j["seed"] = r.seed;
    j["generated_transcripts"] = r.generated_transcripts;
    j["annotations"] = r.annotations;
    j["applied_override_ids"] = r.applied_override_ids;
    j["notes"] = r.notes;
    j["gate1"] = detail::gate_json(r.gate1);
    j["gate2"] = detail::gate_json(r.gate2);

    if (r.static_scorecard) {
        ordered sj;
        ordered entries = ordered::array();
        for (const auto& e : r.static_scorecard->entries)
            entries.push_back(detail::criterion_json(e));
        sj["entries"] = std::move(entries);
        ordered subtotals;
        for (const auto& [k, v] : r.static_scorecard->dimension_subtotals) subtotals[k] = v;
        sj["dimension_subtotals"] = std::move(subtotals);
        sj["s_static"] = r.static_scorecard->s_static;
        j["static_scorecard"] = std::move(sj);
    } else {
        j["static_scorecard"] = nullptr;
    }

    ordered cards = ordered::array();
    for (const auto& c : r.dynamic_scorecards) {
        ordered cj;
        cj["input_id"] = c.input_id;
        ordered l1 = ordered::array(), l2 = ordered::array();
        for (const auto& e : c.layer1_entries) l1.push_back(detail::criterion_json(e));
        for (const auto& e : c.layer2_entries) l2.push_back(detail::criterion_json(e));
        cj["layer1_entries"] = std::move(l1);
        cj["layer2_entries"] = std::move(l2);
        cj["layer1_points"] = c.layer1_points;
        cj["layer2_points"] = c.layer2_points;
        cj["total"] = c.total;
        cards.push_back(std::move(cj));
    }
    j["dynamic_scorecards"] = std::move(cards);

    ordered execs = ordered::array();
    for (const auto& e : r.executions) {
        ordered ej;
        ej["input_id"] = e.input_id;
        ej["exit_status"] = e.exit_status;
        ej["timed_out"] = e.timed_out;
        ej["crashed"] = e.crashed;
        ej["duration_seconds"] = e.duration_seconds;
        ej["isolation"] = e.isolation;
        ej["transcript_words"] = e.transcript_words;
        ordered files = ordered::array();
        for (const auto& f : e.produced_files)
            files.push_back({{"path", f.path}, {"digest", f.digest}});
        ej["produced_files"] = std::move(files);
        execs.push_back(std::move(ej));
    }
    j["executions"] = std::move(execs);

    ordered asserts = ordered::array();
    for (const auto& a : r.assertions) {
        ordered aj;
        aj["input_id"] = a.input_id;
        ordered checks = ordered::array();
        for (const auto& c : a.checks)
            checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        aj["checks"] = std::move(checks);
        asserts.push_back(std::move(aj));
    }
    j["assertions"] = std::move(asserts);

    j["s_static"] = r.s_static ? ordered(*r.s_static) : ordered(nullptr);
    j["d_bar"] = r.d_bar ? ordered(*r.d_bar) : ordered(nullptr);
    j["final_score"] = r.final_score;
    j["final_score_exact"] = r.final_score_exact;
    j["disposition"] = r.disposition;
    j["vetoed"] = r.vetoed;
    j["guidance"] = r.guidance;

    return j.dump(2) + "\n";
}

namespace detail {

inline AuditReport report_from_json(const ordered& j) {
    AuditReport r;
    r.skill_id = j.at("skill_id").get<std::string>();
    r.framework = j.at("framework").get<std::string>();
    r.generated_at = j.at("generated_at").get<std::string>();
    r.category = j.at("category").get<int>();
    r.category_name = j.at("category_name").get<std::string>();
    r.mode = j.at("mode").get<std::string>();
    r.tier = j.at("tier").get<std::string>();
    r.dynamic_test_count = j.at("dynamic_test_count").get<int>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.generated_transcripts = j.at("generated_transcripts").get<bool>();
    r.annotations = j.at("annotations").get<std::vector<std::string>>();
    r.applied_override_ids = j.at("applied_override_ids").get<std::vector<std::string>>();
    r.notes = j.at("notes").get<std::vector<std::string>>();
    r.gate1 = detail::gate_from(j.at("gate1"));
    r.gate2 = detail::gate_from(j.at("gate2"));

    if (!j.at("static_scorecard").is_null()) {
        const auto& sj = j.at("static_scorecard");
        StaticScorecard sc;
        for (const auto& e : sj.at("entries")) sc.entries.push_back(detail::criterion_from(e));
        for (const auto& [k, v] : sj.at("dimension_subtotals").items())
            sc.dimension_subtotals[k] = v.get<double>();
        sc.s_static = sj.at("s_static").get<double>();
        r.static_scorecard = std::move(sc);
    }
    for (const auto& cj : j.at("dynamic_scorecards")) {
        DynamicScorecard c;
        c.input_id = cj.at("input_id").get<std::string>();
        for (const auto& e : cj.at("layer1_entries"))
            c.layer1_entries.push_back(detail::criterion_from(e));
        for (const auto& e : cj.at("layer2_entries"))
            c.layer2_entries.push_back(detail::criterion_from(e));
        c.layer1_points = cj.at("layer1_points").get<double>();
        c.layer2_points = cj.at("layer2_points").get<double>();
        c.total = cj.at("total").get<double>();
        r.dynamic_scorecards.push_back(std::move(c));
    }
    for (const auto& ej : j.at("executions")) {
        ExecutionSummary e;
        e.input_id = ej.at("input_id").get<std::string>();
        e.exit_status = ej.at("exit_status").get<int>();
        e.timed_out = ej.at("timed_out").get<bool>();
        e.crashed = ej.at("crashed").get<bool>();
        e.duration_seconds = ej.at("duration_seconds").get<double>();
        e.isolation = ej.at("isolation").get<std::string>();
        e.transcript_words = ej.at("transcript_words").get<long>();
        for (const auto& f : ej.at("produced_files"))
            e.produced_files.push_back(
                {f.at("path").get<std::string>(), f.at("digest").get<std::string>()});
        r.executions.push_back(std::move(e));
    }
    for (const auto& aj : j.at("assertions")) {
        AssertionSet a;
        a.input_id = aj.at("input_id").get<std::string>();
        for (const auto& c : aj.at("checks"))
            a.checks.push_back({c.at("name").get<std::string>(), c.at("passed").get<bool>(),
                                c.at("detail").get<std::string>()});
        r.assertions.push_back(std::move(a));
    }
    if (!j.at("s_static").is_null()) r.s_static = j.at("s_static").get<double>();
    if (!j.at("d_bar").is_null()) r.d_bar = j.at("d_bar").get<double>();
    r.final_score = j.at("final_score").get<double>();
    r.final_score_exact = j.at("final_score_exact").get<double>();
    r.disposition = j.at("disposition").get<std::string>();
    r.vetoed = j.at("vetoed").get<bool>();
    r.guidance = j.at("guidance").get<std::vector<std::string>>();
    return r;
}

} // namespace detail

// Rejects text that is not a complete well-formed report. Report files are
// caller input, so both failure shapes surface as UnreadableFile.
inline AuditReport parse_report(const std::string& text) {
    detail::ordered j;
    try {
        j = detail::ordered::parse(text);
    } catch (const std::exception& e) {
        throw AuditError(ErrorCode::UnreadableFile, std::string("report parse: ") + e.what());
    }
    try {
        return detail::report_from_json(j);
    } catch (const AuditError&) {
        throw;
    } catch (const std::exception& e) {
        throw AuditError(ErrorCode::UnreadableFile, std::string("report structure: ") + e.what());
    }
}

inline std::string emit_markdown(const AuditReport& r) {
    std::ostringstream md;
    md << "# Audit: " << r.skill_id << "\n\n";
    md << "- Framework: " << r.framework << "\n";
    md << "- Generated: " << r.generated_at << "\n";
    md << "- Category: " << r.category << " (" << r.category_name << ")\n";
    md << "- Mode: " << r.mode << (r.generated_transcripts ? " (transcripts generator-backed)" : "")
       << "\n";
    md << "- Complexity: " << r.tier << " (" << r.dynamic_test_count << " dynamic tests, seed "
       << r.seed << ")\n\n";

    md << "## Disposition\n\n";
    if (r.vetoed)
        md << "**REJECT (veto)** — a gate failure overrides all scoring.\n\n";
    else
        md << "**" << r.disposition << "** at final score " << detail::format_score(r.final_score)
           << "\n\n";
    if (r.s_static)
        md << "- Static score: " << detail::format_score(*r.s_static) << "\n";
    if (r.d_bar) md << "- Dynamic mean: " << detail::format_score(*r.d_bar) << "\n";
    md << "- Final: " << detail::format_score(r.final_score) << " (exact "
       << detail::format_stat(r.final_score_exact) << ")\n\n";

    for (const auto* g : {&r.gate1, &r.gate2}) {
        md << "## Gate " << g->gate << ": " << (g->passed ? "PASS" : "FAIL") << "\n\n";
        md << "| Dimension | Verdict | Evidence |\n|---|---|---|\n";
        for (const auto& f : g->findings) {
            md << "| " << dimension_id(f.dimension) << " " << dimension_title(f.dimension) << " | "
               << verdict_name(f.verdict) << " | ";
            if (f.crash_rate) md << "crash rate " << detail::format_stat(*f.crash_rate) << ". ";
            for (const auto& e : f.evidence)
                md << e.rule << " at " << e.location << ":" << e.line << ". ";
            for (const auto& e : f.warnings)
                md << "warning " << e.rule << " at " << e.location << ":" << e.line << ". ";
            md << " |\n";
        }
        md << "\n";
    }

    if (r.static_scorecard) {
        md << "## Static scorecard\n\n";
        md << "| Criterion | Points | Max |\n|---|---|---|\n";
        for (const auto& e : r.static_scorecard->entries)
            md << "| " << e.id << " " << e.name << " | " << detail::format_score(e.points)
               << " | " << detail::format_score(e.max_points) << " |\n";
        md << "\n";
    }
    if (!r.dynamic_scorecards.empty()) {
        md << "## Dynamic scorecards\n\n";
        md << "| Input | Layer 1 | Layer 2 | Total |\n|---|---|---|---|\n";
        for (const auto& c : r.dynamic_scorecards)
            md << "| " << c.input_id << " | " << detail::format_score(c.layer1_points) << " | "
               << detail::format_score(c.layer2_points) << " | "
               << detail::format_score(c.total) << " |\n";
        md << "\n";
    }
    if (!r.annotations.empty()) {
        md << "## Annotations\n\n";
        for (const auto& a : r.annotations) md << "- " << a << "\n";
        md << "\n";
    }
    if (!r.guidance.empty()) {
        md << "## Remediation guidance\n\n";
        for (const auto& g : r.guidance) md << "- [ ] " << g << "\n";
        md << "\n";
    }
    return md.str();
}

} // namespace skillaudit
