#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "skillaudit/consensus.hpp"
#include "skillaudit/detail/numfmt.hpp"
#include "skillaudit/errors.hpp"
#include "skillaudit/report.hpp"
#include "skillaudit/stats.hpp"

namespace skillaudit {

// One skill joined across its sources: two rater records, the consensus they
// imply, and the system's published verdict.
struct StudyRow {
    std::string skill_id;
    RatingRecord rater1; // raters ordered by rater_id, not CSV position
    RatingRecord rater2;
    ConsensusRecord consensus;
    double system_score = 0.0; // exact value, not the one-decimal display copy
    Disposition system_disposition = Disposition::Reject;
    int category = 5;
    std::string category_name;
};

// Every statistic is optional because strata can be too small or too uniform
// to support it; the flag strings say why a value is missing or suspect.
struct AgreementSummary {
    std::string label;
    std::size_t n_scores = 0; // complete score pairs (listwise)
    std::size_t n_ranks = 0;  // disposition pairs (always complete)
    std::optional<double> bias;
    std::optional<double> sd_signed;
    std::optional<DiffSummary> abs_diff;
    std::optional<IccResult> icc;
    std::string icc_flag;
    std::optional<KappaResult> kappa;
    std::string kappa_flag;
    std::optional<WilcoxonResult> wilcoxon;
    std::optional<BlandAltmanResult> limits;
    RankConfusion confusion;
};

struct CategoryAgreement {
    int category = 5;
    std::string category_name;
    AgreementSummary stats;
};

struct StudyResult {
    std::vector<StudyRow> rows; // sorted by skill_id
    AgreementSummary expert_baseline;
    AgreementSummary system_vs_consensus;
    std::vector<CategoryAgreement> by_category;
    std::vector<OptimizationFlags> flags; // parallel to rows
    std::size_t flagged_count = 0;
    std::vector<std::string> written; // file names created under out_dir
};

namespace detail {

inline std::string fmt1(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.1f", v);
    return buf;
}

inline std::string fmt3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

// Score agreement over complete pairs; rank agreement over all pairs. The
// two sample sizes differ whenever a rater declined to score a skill.
inline AgreementSummary summarize_agreement(const std::string& label,
                                            const std::vector<double>& scores_a,
                                            const std::vector<double>& scores_b,
                                            const std::vector<int>& ranks_a,
                                            const std::vector<int>& ranks_b, bool directional,
                                            std::size_t wilcoxon_exact_max) {
    AgreementSummary s;
    s.label = label;
    s.n_scores = scores_a.size();
    s.n_ranks = ranks_a.size();

    if (!scores_a.empty()) {
        s.abs_diff = abs_diff_summary(scores_a, scores_b);
        if (directional) {
            std::vector<double> delta(scores_a.size());
            for (std::size_t i = 0; i < scores_a.size(); ++i) delta[i] = scores_a[i] - scores_b[i];
            s.bias = mean_of(delta);
            if (delta.size() >= 2) s.sd_signed = sample_sd(delta);
            s.wilcoxon = wilcoxon_signed_rank(scores_a, scores_b, wilcoxon_exact_max);
            if (scores_a.size() >= 2) s.limits = bland_altman(scores_a, scores_b);
        }
    }

    try {
        std::vector<std::vector<double>> matrix(scores_a.size());
        for (std::size_t i = 0; i < scores_a.size(); ++i) matrix[i] = {scores_a[i], scores_b[i]};
        s.icc = icc_2_1(matrix);
    } catch (const AuditError& e) {
        if (e.code() != ErrorCode::DegenerateMatrix) throw;
        s.icc_flag = std::string("degenerate: ") + e.what();
    }

    try {
        auto kap = weighted_kappa_linear(ranks_a, ranks_b);
        s.kappa = kap;
        if (kap.degenerate) s.kappa_flag = "degenerate: no expected disagreement";
    } catch (const AuditError& e) {
        if (e.code() != ErrorCode::DegenerateMatrix) throw;
        s.kappa_flag = std::string("degenerate: ") + e.what();
    }

    s.confusion = rank_confusion(ranks_a, ranks_b);
    return s;
}

inline std::string csv_opt(const std::optional<double>& v) {
    return v ? format_stat(*v) : std::string();
}

inline void write_text(const fs::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw AuditError(ErrorCode::UnreadableFile, "cannot write " + path.string());
    f << text;
}

inline void append_agreement_csv_row(std::string& out, const AgreementSummary& s) {
    out += s.label + ",";
    out += std::to_string(s.n_scores) + "," + std::to_string(s.n_ranks) + ",";
    out += csv_opt(s.bias) + "," + csv_opt(s.sd_signed) + ",";
    if (s.abs_diff) {
        out += format_stat(s.abs_diff->mean_abs) + "," + format_stat(s.abs_diff->median_abs) +
               "," + format_stat(s.abs_diff->max_abs) + "," + format_stat(s.abs_diff->sd_abs) +
               ",";
    } else {
        out += ",,,,";
    }
    if (s.icc) {
        out += format_stat(s.icc->value) + "," + format_stat(s.icc->ci_low) + "," +
               format_stat(s.icc->ci_high) + ",";
    } else {
        out += ",,,";
    }
    out += s.icc_flag + ",";
    out += (s.kappa ? format_stat(s.kappa->value) : std::string()) + "," + s.kappa_flag + ",";
    if (s.wilcoxon) {
        out += format_stat(s.wilcoxon->statistic) + "," + format_stat(s.wilcoxon->p_value) + "," +
               s.wilcoxon->method + ",";
    } else {
        out += ",,,";
    }
    out += format_stat(s.confusion.exact_agreement) + "," + format_stat(s.confusion.within_one);
    out += "\n";
}

inline const char* kAgreementCsvHeader =
    "comparison,n_scores,n_ranks,bias,sd_signed,mean_abs_diff,median_abs_diff,max_abs_diff,"
    "sd_abs_diff,icc,icc_ci_low,icc_ci_high,icc_flag,kappa,kappa_flag,wilcoxon_w,wilcoxon_p,"
    "wilcoxon_method,exact_agreement,within_one\n";

inline std::string confusion_csv(const RankConfusion& rc, const char* row_role,
                                 const char* col_role) {
    std::string out = std::string(row_role) + "\\" + col_role;
    for (int j = 0; j < 4; ++j) out += std::string(",") + disposition_name(static_cast<Disposition>(j));
    out += "\n";
    for (int i = 0; i < 4; ++i) {
        out += disposition_name(static_cast<Disposition>(i));
        for (int j = 0; j < 4; ++j) out += "," + std::to_string(rc.counts[i][j]);
        out += "\n";
    }
    return out;
}

inline void append_markdown_agreement(std::string& md, const AgreementSummary& s) {
    md += "| " + s.label + " | " + std::to_string(s.n_scores) + " | ";
    md += (s.bias ? fmt1(*s.bias) : std::string("-")) + " | ";
    md += (s.sd_signed ? fmt1(*s.sd_signed) : std::string("-")) + " | ";
    md += (s.abs_diff ? fmt1(s.abs_diff->sd_abs) : std::string("-")) + " | ";
    if (s.icc)
        md += fmt3(s.icc->value) + " [" + fmt3(s.icc->ci_low) + ", " + fmt3(s.icc->ci_high) + "]";
    else
        md += s.icc_flag.empty() ? std::string("-") : s.icc_flag;
    md += " | ";
    md += (s.kappa ? fmt3(s.kappa->value) : (s.kappa_flag.empty() ? std::string("-") : s.kappa_flag));
    md += " | ";
    md += (s.wilcoxon ? fmt3(s.wilcoxon->p_value) : std::string("-"));
    md += " | " + fmt3(s.confusion.exact_agreement) + " | " + fmt3(s.confusion.within_one) + " |\n";
}

} // namespace detail

// Joins ratings with published system reports. Exactly two rater records per
// skill and a bijection between rated skills and reports is required; rank
// statistics use every pair while score statistics drop incomplete pairs.
inline StudyResult run_study(const std::string& ratings_csv, const std::string& reports_dir,
                             const std::string& out_dir, const Config& cfg) {
    auto ratings = load_ratings(ratings_csv);
    std::map<std::string, std::vector<RatingRecord>> by_skill;
    for (auto& r : ratings) by_skill[r.skill_id].push_back(r);
    for (auto& [skill, recs] : by_skill)
        if (recs.size() != 2)
            throw AuditError(ErrorCode::IncompleteRatings,
                             skill + " has " + std::to_string(recs.size()) +
                                 " rater records; expected exactly 2");

    std::map<std::string, AuditReport> reports;
    if (!fs::is_directory(reports_dir))
        throw AuditError(ErrorCode::UnreadableFile, "report directory missing: " + reports_dir);
    for (const auto& entry : fs::directory_iterator(reports_dir)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".json") continue;
        auto rep = parse_report(detail::read_file(entry.path().string()));
        reports[rep.skill_id] = std::move(rep);
    }
    for (const auto& [skill, rep] : reports)
        if (!by_skill.count(skill))
            throw AuditError(ErrorCode::UnknownSkillInReports,
                             "report bundle contains " + skill + " but the ratings file does not");
    for (const auto& [skill, recs] : by_skill)
        if (!reports.count(skill))
            throw AuditError(ErrorCode::IncompleteRatings,
                             skill + " was rated but has no system report");

    auto thresholds = DispositionThresholds::from_config(cfg);
    std::size_t wilcoxon_max = static_cast<std::size_t>(cfg.get_int("stats.wilcoxon_exact_max_n"));

    StudyResult result;
    for (auto& [skill, recs] : by_skill) {
        std::sort(recs.begin(), recs.end(),
                  [](const RatingRecord& a, const RatingRecord& b) { return a.rater_id < b.rater_id; });
        const AuditReport& rep = reports.at(skill);
        StudyRow row;
        row.skill_id = skill;
        row.rater1 = recs[0];
        row.rater2 = recs[1];
        row.consensus = derive_consensus(recs[0], recs[1], thresholds);
        row.system_score = rep.final_score_exact;
        auto d = parse_disposition(rep.disposition);
        if (!d)
            throw AuditError(ErrorCode::InternalError,
                             "report for " + skill + " carries unknown disposition '" +
                                 rep.disposition + "'");
        row.system_disposition = *d;
        row.category = rep.category;
        row.category_name = rep.category_name;
        result.rows.push_back(std::move(row));
    }

    // (a) rater-vs-rater baseline
    {
        std::vector<double> s1, s2;
        std::vector<int> r1, r2;
        for (const auto& row : result.rows) {
            if (row.rater1.score && row.rater2.score) {
                s1.push_back(*row.rater1.score);
                s2.push_back(*row.rater2.score);
            }
            r1.push_back(disposition_rank(row.rater1.disposition));
            r2.push_back(disposition_rank(row.rater2.disposition));
        }
        result.expert_baseline =
            detail::summarize_agreement("rater1_vs_rater2", s1, s2, r1, r2, false, wilcoxon_max);
    }

    // (b) system vs consensus
    {
        std::vector<double> sys, con;
        std::vector<int> rs, rc;
        for (const auto& row : result.rows) {
            sys.push_back(row.system_score);
            con.push_back(row.consensus.score);
            rs.push_back(disposition_rank(row.system_disposition));
            rc.push_back(disposition_rank(row.consensus.disposition));
        }
        result.system_vs_consensus =
            detail::summarize_agreement("system_vs_consensus", sys, con, rs, rc, true, wilcoxon_max);
    }

    // (c) stratified by category, ordinal order, descriptive only
    {
        std::map<int, std::vector<const StudyRow*>> strata;
        for (const auto& row : result.rows) strata[row.category].push_back(&row);
        for (const auto& [cat, rows] : strata) {
            std::vector<double> sys, con;
            std::vector<int> rs, rc;
            for (const auto* row : rows) {
                sys.push_back(row->system_score);
                con.push_back(row->consensus.score);
                rs.push_back(disposition_rank(row->system_disposition));
                rc.push_back(disposition_rank(row->consensus.disposition));
            }
            CategoryAgreement ca;
            ca.category = cat;
            ca.category_name = rows.front()->category_name;
            ca.stats = detail::summarize_agreement(ca.category_name, sys, con, rs, rc, true,
                                                   wilcoxon_max);
            result.by_category.push_back(std::move(ca));
        }
    }

    // (d) optimization flags
    for (const auto& row : result.rows) {
        FinalAssessment system;
        system.disposition = row.system_disposition;
        system.final_score = row.system_score;
        result.flags.push_back(flag_optimization(row.consensus, row.skill_id, system));
        if (result.flags.back().flagged()) ++result.flagged_count;
    }

    // (e) files
    fs::create_directories(out_dir);
    auto emit = [&](const std::string& name, const std::string& text) {
        detail::write_text(fs::path(out_dir) / name, text);
        result.written.push_back(name);
    };

    {
        std::string csv = detail::kAgreementCsvHeader;
        detail::append_agreement_csv_row(csv, result.expert_baseline);
        detail::append_agreement_csv_row(csv, result.system_vs_consensus);
        emit("agreement_summary.csv", csv);
    }
    {
        std::string csv = "category,category_name,";
        csv += detail::kAgreementCsvHeader;
        for (const auto& ca : result.by_category) {
            std::string row;
            detail::append_agreement_csv_row(row, ca.stats);
            csv += std::to_string(ca.category) + "," + row;
        }
        emit("stratified_agreement.csv", csv);
    }
    {
        std::string csv = "skill_id,consensus_score,consensus_disposition,high_risk,adjudicated,"
                          "system_score,system_disposition,flags\n";
        for (std::size_t i = 0; i < result.rows.size(); ++i) {
            const auto& row = result.rows[i];
            const auto& fl = result.flags[i];
            csv += row.skill_id + "," + detail::format_stat(row.consensus.score) + "," +
                   disposition_name(row.consensus.disposition) + "," +
                   risk_flag_name(row.consensus.high_risk) + "," +
                   (row.consensus.adjudicated ? "true" : "false") + "," +
                   detail::format_stat(row.system_score) + "," +
                   disposition_name(row.system_disposition) + ",";
            std::string joined;
            for (auto f : fl.flags) {
                if (!joined.empty()) joined += "|";
                joined += optimization_flag_name(f);
            }
            csv += joined + "\n";
        }
        emit("optimization_flags.csv", csv);
    }
    {
        // Fixed-width bins aligned to multiples of the configured width so the
        // histogram is stable under reruns.
        double width = cfg.get_double("stats.delta_hist_bin_width");
        if (width <= 0.0)
            throw AuditError(ErrorCode::ConfigError, "stats.delta_hist_bin_width must be > 0");
        std::map<long, long> bins;
        for (const auto& row : result.rows) {
            double delta = row.system_score - row.consensus.score;
            bins[static_cast<long>(std::floor(delta / width))]++;
        }
        std::string csv = "bin_low,bin_high,count\n";
        if (!bins.empty()) {
            for (long b = bins.begin()->first; b <= bins.rbegin()->first; ++b) {
                long count = bins.count(b) ? bins.at(b) : 0;
                csv += detail::format_stat(static_cast<double>(b) * width) + "," +
                       detail::format_stat(static_cast<double>(b + 1) * width) + "," +
                       std::to_string(count) + "\n";
            }
        }
        emit("delta_histogram.csv", csv);
    }
    {
        std::string csv = "skill_id,mean_score,delta\n";
        for (const auto& row : result.rows) {
            double mean = (row.system_score + row.consensus.score) / 2.0;
            double delta = row.system_score - row.consensus.score;
            csv += row.skill_id + "," + detail::format_stat(mean) + "," +
                   detail::format_stat(delta) + "\n";
        }
        emit("bland_altman_points.csv", csv);
    }
    emit("confusion_raters.csv",
         detail::confusion_csv(result.expert_baseline.confusion, "rater1", "rater2"));
    {
        // Consensus is the reference: rows are the expert verdict, columns are
        // what the system said.
        std::vector<int> rc, rs;
        for (const auto& row : result.rows) {
            rc.push_back(disposition_rank(row.consensus.disposition));
            rs.push_back(disposition_rank(row.system_disposition));
        }
        emit("confusion_system.csv",
             detail::confusion_csv(rank_confusion(rc, rs), "consensus", "system"));
    }
    {
        std::string md = "# Agreement study\n\n";
        md += "Skills: " + std::to_string(result.rows.size()) + "\n\n";
        md += "## Agreement summary\n\n";
        md += "| Comparison | n | Bias | SD (signed) | SD (abs diff) | ICC(2,1) [95% CI] | "
              "Weighted kappa | Wilcoxon p | Exact | Within 1 |\n";
        md += "|---|---|---|---|---|---|---|---|---|---|\n";
        detail::append_markdown_agreement(md, result.expert_baseline);
        detail::append_markdown_agreement(md, result.system_vs_consensus);
        md += "\nScore rows use complete pairs only; rank columns use all " +
              std::to_string(result.expert_baseline.n_ranks) + " pairs.\n";
        md += "\n## Stratified by category (descriptive)\n\n";
        md += "| Category | n | Bias | SD (signed) | SD (abs diff) | ICC(2,1) [95% CI] | "
              "Weighted kappa | Wilcoxon p | Exact | Within 1 |\n";
        md += "|---|---|---|---|---|---|---|---|---|---|\n";
        for (const auto& ca : result.by_category) detail::append_markdown_agreement(md, ca.stats);
        md += "\nStratified rows are descriptive; no confirmatory claims are made at this "
              "sample size.\n";
        md += "\n## Optimization flags\n\n";
        md += "Flagged " + std::to_string(result.flagged_count) + " of " +
              std::to_string(result.rows.size()) + " skills.\n\n";
        std::map<OptimizationFlag, int> tally;
        for (const auto& fl : result.flags)
            for (auto f : fl.flags) tally[f]++;
        md += "| Criterion | Skills |\n|---|---|\n";
        for (auto f :
             {OptimizationFlag::ConsensusReject, OptimizationFlag::BetaBelow65,
              OptimizationFlag::AdjudicationRequired, OptimizationFlag::RankGapTwoPlus,
              OptimizationFlag::HighRiskOrUnclear}) {
            md += std::string("| ") + optimization_flag_name(f) + " | " +
                  std::to_string(tally.count(f) ? tally.at(f) : 0) + " |\n";
        }
        md += "\nPer-skill detail: optimization_flags.csv\n";
        emit("study_summary.md", md);
    }

    return result;
}

} // namespace skillaudit
