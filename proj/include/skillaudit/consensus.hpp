#pragma once

#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "skillaudit/detail/csv.hpp"
#include "skillaudit/detail/fsutil.hpp"
#include "skillaudit/detail/strings.hpp"
#include "skillaudit/errors.hpp"
#include "skillaudit/scoring.hpp"

namespace skillaudit {

enum class RiskFlag { No = 0, Yes = 1, Unclear = 2 };

inline const char* risk_flag_name(RiskFlag f) {
    switch (f) {
    case RiskFlag::No: return "N";
    case RiskFlag::Yes: return "Y";
    case RiskFlag::Unclear: return "Unclear";
    }
    return "?";
}

// Rater input is binary; Unclear exists only as a consensus outcome.
inline std::optional<RiskFlag> parse_risk_flag(std::string_view s) {
    std::string t = detail::to_lower(detail::trim(s));
    if (t == "y" || t == "yes") return RiskFlag::Yes;
    if (t == "n" || t == "no") return RiskFlag::No;
    if (t == "unclear") return RiskFlag::Unclear;
    return std::nullopt;
}

struct RatingRecord {
    std::string skill_id;
    std::string rater_id;
    std::optional<double> score; // absent when the rater declined to score
    Disposition disposition = Disposition::Reject;
    RiskFlag high_risk = RiskFlag::No;
};

struct ConsensusRecord {
    std::string skill_id;
    double score = 0.0;
    Disposition disposition = Disposition::Reject;
    RiskFlag high_risk = RiskFlag::No;
    bool adjudicated = false; // true iff the two rater dispositions differed
};

inline double derive_consensus_score(std::optional<double> s1, std::optional<double> s2) {
    if (s1 && s2) return (*s1 + *s2) / 2.0;
    if (s1) return *s1;
    if (s2) return *s2;
    throw AuditError(ErrorCode::BothAbsent, "no rater supplied a score");
}

namespace detail {

inline double band_midpoint(Disposition d, const DispositionThresholds& t) {
    switch (d) {
    case Disposition::Reject: return t.beta_only / 2.0;
    case Disposition::BetaOnly: return (t.beta_only + t.limited_release) / 2.0;
    case Disposition::LimitedRelease: return (t.limited_release + t.production_ready) / 2.0;
    case Disposition::ProductionReady: return (t.production_ready + 100.0) / 2.0;
    }
    return 0.0;
}

} // namespace detail

// One-rank disagreements resolve toward the disposition the consensus score
// itself lands in; if the score lands in neither rater's band, whichever band
// midpoint is nearer wins, and an exact tie goes to the lower release rank.
// Two or more ranks apart always resolves to the more conservative rating.
inline std::pair<Disposition, bool> adjudicate_disposition(Disposition d1, Disposition d2,
                                                           double consensus_score,
                                                           const DispositionThresholds& t = {}) {
    if (d1 == d2) return {d1, false};
    int gap = disposition_rank(d1) - disposition_rank(d2);
    if (gap < 0) gap = -gap;
    if (gap >= 2) {
        Disposition lower = disposition_rank(d1) < disposition_rank(d2) ? d1 : d2;
        return {lower, true};
    }
    Disposition implied = disposition_from_score(consensus_score, t);
    if (implied == d1) return {d1, true};
    if (implied == d2) return {d2, true};
    double e1 = std::fabs(detail::band_midpoint(d1, t) - consensus_score);
    double e2 = std::fabs(detail::band_midpoint(d2, t) - consensus_score);
    if (e1 < e2) return {d1, true};
    if (e2 < e1) return {d2, true};
    return {disposition_rank(d1) < disposition_rank(d2) ? d1 : d2, true};
}

inline RiskFlag consensus_high_risk(RiskFlag f1, RiskFlag f2) {
    if (f1 == RiskFlag::Yes && f2 == RiskFlag::Yes) return RiskFlag::Yes;
    if (f1 == RiskFlag::No && f2 == RiskFlag::No) return RiskFlag::No;
    return RiskFlag::Unclear;
}

inline ConsensusRecord derive_consensus(const RatingRecord& r1, const RatingRecord& r2,
                                        const DispositionThresholds& t = {}) {
    if (r1.skill_id != r2.skill_id)
        throw AuditError(ErrorCode::SkillMismatch,
                         "rating pair spans two skills: " + r1.skill_id + " vs " + r2.skill_id);
    ConsensusRecord c;
    c.skill_id = r1.skill_id;
    c.score = derive_consensus_score(r1.score, r2.score);
    auto [d, adjudicated] = adjudicate_disposition(r1.disposition, r2.disposition, c.score, t);
    c.disposition = d;
    c.adjudicated = adjudicated;
    c.high_risk = consensus_high_risk(r1.high_risk, r2.high_risk);
    return c;
}

enum class OptimizationFlag {
    ConsensusReject = 1,      // C1
    BetaBelow65 = 2,          // C2
    AdjudicationRequired = 3, // C3
    RankGapTwoPlus = 4,       // C4
    HighRiskOrUnclear = 5,    // C5
};

inline const char* optimization_flag_name(OptimizationFlag f) {
    switch (f) {
    case OptimizationFlag::ConsensusReject: return "C1";
    case OptimizationFlag::BetaBelow65: return "C2";
    case OptimizationFlag::AdjudicationRequired: return "C3";
    case OptimizationFlag::RankGapTwoPlus: return "C4";
    case OptimizationFlag::HighRiskOrUnclear: return "C5";
    }
    return "?";
}

struct OptimizationFlags {
    std::string skill_id;
    std::set<OptimizationFlag> flags;

    bool flagged() const { return !flags.empty(); }
};

// beta_cutoff is the C2 score bound; the criterion is strict (64.999 flags,
// 65.0 does not).
inline OptimizationFlags flag_optimization(const ConsensusRecord& consensus,
                                           const std::string& system_skill_id,
                                           const FinalAssessment& system,
                                           double beta_cutoff = 65.0) {
    if (consensus.skill_id != system_skill_id)
        throw AuditError(ErrorCode::SkillMismatch, "consensus " + consensus.skill_id +
                                                       " paired with system report for " +
                                                       system_skill_id);
    OptimizationFlags out;
    out.skill_id = consensus.skill_id;
    if (consensus.disposition == Disposition::Reject)
        out.flags.insert(OptimizationFlag::ConsensusReject);
    if (consensus.disposition == Disposition::BetaOnly && consensus.score < beta_cutoff)
        out.flags.insert(OptimizationFlag::BetaBelow65);
    if (consensus.adjudicated) out.flags.insert(OptimizationFlag::AdjudicationRequired);
    int gap = disposition_rank(system.disposition) - disposition_rank(consensus.disposition);
    if (gap < 0) gap = -gap;
    if (gap >= 2) out.flags.insert(OptimizationFlag::RankGapTwoPlus);
    if (consensus.high_risk != RiskFlag::No)
        out.flags.insert(OptimizationFlag::HighRiskOrUnclear);
    return out;
}

// Ratings arrive as CSV with header skill_id,rater_id,score,disposition,high_risk.
// An empty score cell means the rater declined to score; dispositions are
// accepted by name or ordinal.
inline std::vector<RatingRecord> load_ratings(const std::string& path) {
    auto rows = detail::parse_csv(detail::read_file(path));
    if (rows.empty())
        throw AuditError(ErrorCode::IncompleteRatings, "ratings file is empty: " + path);
    const std::vector<std::string> expected = {"skill_id", "rater_id", "score", "disposition",
                                               "high_risk"};
    if (rows.front().size() != expected.size())
        throw AuditError(ErrorCode::IncompleteRatings,
                         "ratings header has " + std::to_string(rows.front().size()) +
                             " columns; expected 5");
    for (std::size_t i = 0; i < expected.size(); ++i)
        if (detail::to_lower(detail::trim(rows.front()[i])) != expected[i])
            throw AuditError(ErrorCode::IncompleteRatings,
                             "ratings header column " + std::to_string(i + 1) + " is '" +
                                 rows.front()[i] + "'; expected '" + expected[i] + "'");

    std::vector<RatingRecord> out;
    for (std::size_t row = 1; row < rows.size(); ++row) {
        const auto& r = rows[row];
        if (r.size() == 1 && detail::trim(r[0]).empty()) continue;
        if (r.size() != expected.size())
            throw AuditError(ErrorCode::IncompleteRatings,
                             "ratings row " + std::to_string(row + 1) + " has " +
                                 std::to_string(r.size()) + " columns; expected 5");
        RatingRecord rec;
        rec.skill_id = detail::trim(r[0]);
        rec.rater_id = detail::trim(r[1]);
        if (rec.skill_id.empty() || rec.rater_id.empty())
            throw AuditError(ErrorCode::IncompleteRatings,
                             "ratings row " + std::to_string(row + 1) +
                                 " is missing skill_id or rater_id");
        std::string score_text = detail::trim(r[2]);
        if (!score_text.empty()) {
            double v = 0.0;
            try {
                v = std::stod(score_text);
            } catch (const std::exception&) {
                throw AuditError(ErrorCode::IncompleteRatings,
                                 "ratings row " + std::to_string(row + 1) +
                                     " has non-numeric score '" + score_text + "'");
            }
            if (!(v >= 0.0 && v <= 100.0))
                throw AuditError(ErrorCode::OutOfRange, "ratings row " + std::to_string(row + 1) +
                                                            " score " + score_text +
                                                            " outside [0,100]");
            rec.score = v;
        }
        auto d = parse_disposition(r[3]);
        if (!d)
            throw AuditError(ErrorCode::IncompleteRatings,
                             "ratings row " + std::to_string(row + 1) +
                                 " has unrecognized disposition '" + detail::trim(r[3]) + "'");
        rec.disposition = *d;
        auto f = parse_risk_flag(r[4]);
        if (!f || *f == RiskFlag::Unclear)
            throw AuditError(ErrorCode::IncompleteRatings,
                             "ratings row " + std::to_string(row + 1) +
                                 " has unrecognized high_risk '" + detail::trim(r[4]) +
                                 "'; raters record Y or N");
        rec.high_risk = *f;
        out.push_back(std::move(rec));
    }
    return out;
}

} // namespace skillaudit
