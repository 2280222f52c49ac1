#pragma once

#include <optional>
#include <regex>
#include <set>
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

// Canonical identifier form: lowercase, "doi:" prefix stripped, PMIDs
// collapsed to pmid:<digits>. Bundle entries pass through the same function.
inline std::string normalize_identifier(std::string_view raw) {
    std::string s = to_lower(trim(raw));
    if (s.rfind("doi:", 0) == 0) s = std::string(trim(std::string_view(s).substr(4)));
    if (s.rfind("pmid", 0) == 0) {
        std::string digits;
        for (char c : s)
            if (c >= '0' && c <= '9') digits += c;
        return "pmid:" + digits;
    }
    return s;
}

// Known-valid identifiers for this run, one per line in a bundled
// identifiers.txt, stored in canonical form.
inline std::optional<std::set<std::string>> load_reference_bundle(const SkillArtifact& art) {
    for (const auto& rec : art.reference_files) {
        if (fs::path(rec.path).filename() != "identifiers.txt") continue;
        std::set<std::string> ids;
        for (const auto& line : split_lines(read_file(art.root / rec.path))) {
            auto t = trim(line);
            if (!t.empty()) ids.insert(normalize_identifier(t));
        }
        return ids;
    }
    return std::nullopt;
}

struct IdentifierHit {
    std::string id;         // as seen in the text, punctuation trimmed
    std::string normalized; // canonical form used for bundle lookup
    int line = 0;
    std::string excerpt;
};

inline std::vector<IdentifierHit> find_identifiers(const std::string& transcript,
                                                   const Config& cfg) {
    std::vector<IdentifierHit> out;
    std::set<std::pair<int, std::string>> seen;
    auto lines = split_lines(transcript);
    for (const auto& pat : cfg.get_list("m1.identifier_pattern")) {
        std::regex re = make_regex(pat);
        for (std::size_t i = 0; i < lines.size(); ++i) {
            std::string l(lines[i]);
            for (auto it = std::sregex_iterator(l.begin(), l.end(), re);
                 it != std::sregex_iterator(); ++it) {
                std::string id = it->str();
                // trailing sentence punctuation is not part of an identifier
                while (!id.empty() && (id.back() == '.' || id.back() == ',' ||
                                       id.back() == ';' || id.back() == ')'))
                    id.pop_back();
                std::string norm = normalize_identifier(id);
                if (!seen.insert({static_cast<int>(i + 1), norm}).second) continue;
                out.push_back({id, norm, static_cast<int>(i + 1),
                               std::string(truncate_utf8(trim(lines[i]), 200))});
            }
        }
    }
    return out;
}

inline std::set<long long> extract_numbers(const std::string& text, const std::regex& re,
                                           int group) {
    std::set<long long> vals;
    for (auto it = std::sregex_iterator(text.begin(), text.end(), re);
         it != std::sregex_iterator(); ++it) {
        try {
            vals.insert(std::stoll((*it)[group].str()));
        } catch (...) {
        }
    }
    return vals;
}

} // namespace detail

inline VetoFinding check_m1(const std::vector<ExecutionRecord>& records,
                            const SkillArtifact& art, const Config& cfg) {
    VetoFinding f;
    f.dimension = VetoDimension::M1;
    f.verdict = Verdict::Pass;

    auto bundle = detail::load_reference_bundle(art);
    std::regex doi_valid = detail::make_regex(cfg.get("m1.doi_valid_pattern"), false);
    std::regex pmid_valid = detail::make_regex(cfg.get("m1.pmid_valid_pattern"), false);
    std::regex pvalue = detail::make_regex(cfg.get("m1.pvalue_pattern"));
    std::regex phrase = detail::make_regex(cfg.get("m1.sample_phrase_pattern"));
    std::regex symbol = detail::make_regex(cfg.get("m1.sample_symbol_pattern"));

    for (const auto& rec : records) {
        for (const auto& hit : detail::find_identifiers(rec.transcript, cfg)) {
            bool is_pmid = hit.normalized.rfind("pmid:", 0) == 0;
            bool well_formed = is_pmid ? std::regex_match(hit.normalized, pmid_valid)
                                       : std::regex_match(hit.normalized, doi_valid);
            if (!well_formed) {
                f.evidence.push_back({"m1.invalid_identifier", rec.input_id, hit.line,
                                      "malformed identifier '" + hit.id + "': " + hit.excerpt});
                continue;
            }
            if (bundle) {
                if (!bundle->count(hit.normalized))
                    f.evidence.push_back({"m1.unknown_identifier", rec.input_id, hit.line,
                                          "identifier '" + hit.id +
                                              "' absent from reference bundle"});
            } else {
                f.warnings.push_back({"m1.unverified_identifier", rec.input_id, hit.line,
                                      "identifier '" + hit.id +
                                          "' well-formed but unverifiable offline"});
            }
        }

        auto lines = detail::split_lines(rec.transcript);
        for (std::size_t i = 0; i < lines.size(); ++i) {
            std::string l(lines[i]);
            for (auto it = std::sregex_iterator(l.begin(), l.end(), pvalue);
                 it != std::sregex_iterator(); ++it) {
                double v = 2.0;
                try {
                    std::string num = it->str();
                    v = std::stod(num.substr(num.find_first_of("=<>") + 1));
                } catch (...) {
                    continue;
                }
                if (v <= 0.0 || v > 1.0)
                    f.evidence.push_back(
                        {"m1.impossible_pvalue", rec.input_id, static_cast<int>(i + 1),
                         std::string(detail::truncate_utf8(detail::trim(lines[i]), 200))});
            }
        }

        auto phrase_vals = detail::extract_numbers(rec.transcript, phrase, 2);
        auto symbol_vals = detail::extract_numbers(rec.transcript, symbol, 1);
        if (!phrase_vals.empty() && !symbol_vals.empty()) {
            bool overlap = false;
            for (auto v : phrase_vals)
                if (symbol_vals.count(v)) overlap = true;
            if (!overlap)
                f.evidence.push_back({"m1.sample_size_mismatch", rec.input_id, 0,
                                      "stated sample sizes disagree between prose and symbols"});
        }
    }

    if (!f.evidence.empty()) f.verdict = Verdict::Fail;
    return f;
}

inline VetoFinding check_m2(const std::vector<ExecutionRecord>& records, Category category,
                            const Config& cfg) {
    VetoFinding f;
    f.dimension = VetoDimension::M2;
    f.verdict = Verdict::Pass;

    const auto& diagnostic = cfg.get_list("m2.diagnostic_pattern");
    const auto& disclaimer = cfg.get_list("m2.disclaimer_pattern");
    std::string key = "m2.require_disclaimer." + std::to_string(static_cast<int>(category));
    bool need_disclaimer = cfg.has(key) && cfg.get_bool(key);

    for (const auto& rec : records) {
        for (const auto& h :
             detail::scan_lines(rec.transcript, rec.input_id, "m2.diagnostic_claim", diagnostic))
            f.evidence.push_back({h.rule, rec.input_id, h.line, h.excerpt});
        if (need_disclaimer && !detail::any_pattern_matches(rec.transcript, disclaimer))
            f.evidence.push_back({"m2.missing_disclaimer", rec.input_id, 0,
                                  "required medical-research disclaimer absent"});
    }
    if (!f.evidence.empty()) f.verdict = Verdict::Fail;
    return f;
}

inline VetoFinding check_m3(const std::vector<ExecutionRecord>& records, const Config& cfg) {
    VetoFinding f;
    f.dimension = VetoDimension::M3;
    f.verdict = Verdict::Pass;

    std::regex causal = detail::make_regex(cfg.get("m3.causal_pattern"));
    std::regex hedge = detail::make_regex(cfg.get("m3.hedge_pattern"));
    std::regex correlational = detail::make_regex(cfg.get("m3.correlational_pattern"));

    for (const auto& rec : records) {
        if (!std::regex_search(rec.transcript, correlational)) continue;
        auto lines = detail::split_lines(rec.transcript);
        for (std::size_t i = 0; i < lines.size(); ++i) {
            std::string l(lines[i]);
            if (!std::regex_search(l, causal)) continue;
            if (std::regex_search(l, hedge)) continue; // hedged claims stay permissible
            f.evidence.push_back(
                {"m3.causal_from_correlational", rec.input_id, static_cast<int>(i + 1),
                 std::string(detail::truncate_utf8(detail::trim(lines[i]), 200))});
        }
    }
    if (!f.evidence.empty()) f.verdict = Verdict::Fail;
    return f;
}

inline VetoFinding check_m4(const std::vector<ExecutionRecord>& records, Category category,
                            const SkillArtifact& art, const Config& cfg) {
    VetoFinding f;
    f.dimension = VetoDimension::M4;
    f.verdict = Verdict::Pass;

    bool any_code = false;
    auto declared = declared_packages(collect_dependency_constraints(art, cfg));
    const auto& stdlib = cfg.get_list("m4.stdlib_module");

    for (const auto& rec : records) {
        for (const auto& b : detail::extract_code_blocks(rec.transcript)) {
            any_code = true;
            if (!b.lang.empty() && b.lang != "python" && b.lang != "py" && b.lang != "python3")
                continue; // only python-style blocks are validated
            if (!detail::balanced_delimiters(b.text)) {
                f.evidence.push_back({"m4.syntax_error", rec.input_id, b.start_line,
                                      "generated code block has unbalanced delimiters"});
                continue;
            }
            for (const auto& mod : detail::imported_modules(b.text)) {
                bool known =
                    std::find(stdlib.begin(), stdlib.end(), mod) != stdlib.end() ||
                    std::find(declared.begin(), declared.end(), detail::to_lower(mod)) !=
                        declared.end();
                if (!known)
                    f.evidence.push_back({"m4.undeclared_import", rec.input_id, b.start_line,
                                          "generated code imports undeclared module '" + mod +
                                              "'"});
            }
        }
    }

    if (!any_code &&
        (category == Category::EvidenceInsight || category == Category::AcademicWriting)) {
        f.verdict = Verdict::NotApplicable;
        f.notes.push_back("no generated code in any output");
        return f;
    }
    if (!f.evidence.empty()) f.verdict = Verdict::Fail;
    return f;
}

inline VetoFinding check_research_dimension(const std::vector<ExecutionRecord>& records,
                                            Category category, VetoDimension dim,
                                            const SkillArtifact& art, const Config& cfg) {
    switch (dim) {
    case VetoDimension::M1: return check_m1(records, art, cfg);
    case VetoDimension::M2: return check_m2(records, category, cfg);
    case VetoDimension::M3: return check_m3(records, cfg);
    case VetoDimension::M4: return check_m4(records, category, art, cfg);
    default:
        throw AuditError(ErrorCode::InternalError, "not a gate-2 dimension");
    }
}

// Categories 1-4 only; Category 5 (Other) bypasses with every dimension
// marked NOT_APPLICABLE and the gate passing.
inline GateResult run_gate2(const std::vector<ExecutionRecord>& records, Category category,
                            const SkillArtifact& art, const Config& cfg) {
    if (category == Category::Other) {
        std::vector<VetoFinding> findings;
        for (auto dim : {VetoDimension::M1, VetoDimension::M2, VetoDimension::M3,
                         VetoDimension::M4}) {
            VetoFinding f;
            f.dimension = dim;
            f.verdict = Verdict::NotApplicable;
            f.notes.push_back("research-integrity gate applies to categories 1-4 only");
            findings.push_back(std::move(f));
        }
        return make_gate_result(2, std::move(findings));
    }
    return make_gate_result(2, {check_m1(records, art, cfg), check_m2(records, category, cfg),
                                check_m3(records, cfg), check_m4(records, category, art, cfg)});
}

} // namespace skillaudit
