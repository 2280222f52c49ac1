#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "skillaudit/artifact.hpp"
#include "skillaudit/config.hpp"
#include "skillaudit/judge.hpp"
#include "skillaudit/rubric.hpp"
#include "skillaudit/scorecards.hpp"
#include "skillaudit/veto.hpp"

namespace skillaudit {

enum class Disposition : int {
    Reject = 0,
    BetaOnly = 1,
    LimitedRelease = 2,
    ProductionReady = 3,
};

inline const char* disposition_name(Disposition d) {
    switch (d) {
    case Disposition::Reject: return "Reject";
    case Disposition::BetaOnly: return "BetaOnly";
    case Disposition::LimitedRelease: return "LimitedRelease";
    case Disposition::ProductionReady: return "ProductionReady";
    }
    return "?";
}

inline int disposition_rank(Disposition d) { return static_cast<int>(d); }

inline std::optional<Disposition> parse_disposition(std::string_view s) {
    std::string t = detail::to_lower(detail::trim(s));
    std::string compact;
    for (char c : t)
        if (c != ' ' && c != '_' && c != '-') compact += c;
    if (compact == "0" || compact == "reject") return Disposition::Reject;
    if (compact == "1" || compact == "betaonly" || compact == "beta") return Disposition::BetaOnly;
    if (compact == "2" || compact == "limitedrelease" || compact == "limited")
        return Disposition::LimitedRelease;
    if (compact == "3" || compact == "productionready" || compact == "production")
        return Disposition::ProductionReady;
    return std::nullopt;
}

struct DispositionThresholds {
    double production_ready = 85.0;
    double limited_release = 75.0;
    double beta_only = 60.0;

    static DispositionThresholds from_config(const Config& cfg) {
        return {cfg.get_double("scoring.threshold.production_ready"),
                cfg.get_double("scoring.threshold.limited_release"),
                cfg.get_double("scoring.threshold.beta_only")};
    }
};

// Half-open bands: [85,100] / [75,85) / [60,75) / [0,60).
inline Disposition disposition_from_score(double score, const DispositionThresholds& t = {}) {
    if (score >= t.production_ready) return Disposition::ProductionReady;
    if (score >= t.limited_release) return Disposition::LimitedRelease;
    if (score >= t.beta_only) return Disposition::BetaOnly;
    return Disposition::Reject;
}

inline double band_midpoint(Disposition d, const DispositionThresholds& t = {}) {
    switch (d) {
    case Disposition::Reject: return t.beta_only / 2.0;
    case Disposition::BetaOnly: return (t.beta_only + t.limited_release) / 2.0;
    case Disposition::LimitedRelease: return (t.limited_release + t.production_ready) / 2.0;
    case Disposition::ProductionReady: return (t.production_ready + 100.0) / 2.0;
    }
    return 0.0;
}

struct FinalAssessment {
    std::optional<double> s_static; // absent when gate 1 vetoed
    std::optional<double> d_bar;    // absent when gate 1 vetoed
    double final_score = 0.0;
    Disposition disposition = Disposition::Reject;
    GateResult gate1;
    GateResult gate2;
    bool vetoed = false;
};

inline StaticScorecard compute_static_score(const SkillArtifact& artifact,
                                            const EffectiveRubric& rubric, OutputJudge& judge) {
    StaticScorecard card;
    card.entries = judge.score_static(artifact, rubric);
    if (card.entries.size() != rubric.static_criteria.size())
        throw AuditError(ErrorCode::MalformedJudgeResponse,
                         "judge returned " + std::to_string(card.entries.size()) +
                             " static scores for " +
                             std::to_string(rubric.static_criteria.size()) + " criteria");

    double points = 0.0, max = 0.0;
    std::map<std::string, std::pair<double, double>> by_dim;
    for (std::size_t i = 0; i < card.entries.size(); ++i) {
        const auto& e = card.entries[i];
        const auto& c = rubric.static_criteria[i];
        if (e.id != c.id)
            throw AuditError(ErrorCode::MalformedJudgeResponse,
                             "judge response misaligned at criterion " + c.id);
        points += e.points;
        max += e.max_points;
        by_dim[c.dimension].first += e.points;
        by_dim[c.dimension].second += e.max_points;
    }
    card.s_static = max > 0 ? 100.0 * points / max : 0.0;
    for (const auto& [dim, pm] : by_dim)
        card.dimension_subtotals[dim] = pm.second > 0 ? 100.0 * pm.first / pm.second : 0.0;
    return card;
}

// Mean dynamic score. The argument type is the firewall: assertion checks
// have no overload and cannot reach a numeric score.
inline double aggregate_dynamic(const std::vector<DynamicScorecard>& cards) {
    auto n = cards.size();
    if (n != 3 && n != 5 && n != 7)
        throw AuditError(ErrorCode::WrongCardinality,
                         "dynamic scorecard count must be 3, 5, or 7; got " + std::to_string(n));
    double sum = 0.0;
    for (const auto& c : cards) sum += c.total;
    return sum / static_cast<double>(n);
}

inline double compute_final(double s_static, double d_bar, double static_weight = 0.4,
                            double dynamic_weight = 0.6) {
    if (!(s_static >= 0.0 && s_static <= 100.0))
        throw AuditError(ErrorCode::OutOfRange, "static score outside [0,100]");
    if (!(d_bar >= 0.0 && d_bar <= 100.0))
        throw AuditError(ErrorCode::OutOfRange, "dynamic mean outside [0,100]");
    return static_weight * s_static + dynamic_weight * d_bar;
}

inline Disposition assign_disposition(double final_score, const GateResult& gate1,
                                      const GateResult& gate2,
                                      const DispositionThresholds& t = {}) {
    if (!gate1.passed || !gate2.passed) return Disposition::Reject;
    return disposition_from_score(final_score, t);
}

} // namespace skillaudit
