#pragma once

#include <filesystem>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "skillaudit/artifact.hpp"
#include "skillaudit/config.hpp"
#include "skillaudit/dependency.hpp"
#include "skillaudit/detail/fsutil.hpp"
#include "skillaudit/detail/scan.hpp"
#include "skillaudit/execution.hpp"
#include "skillaudit/rubric.hpp"
#include "skillaudit/scorecards.hpp"

namespace skillaudit {

// Two interchangeable implementations: RuleJudge (deterministic local
// predicates, the test default) and RemoteJudge (wire client, separate
// header). Static criteria are judged against the artifact itself; dynamic
// criteria against one captured execution.
class OutputJudge {
public:
    virtual ~OutputJudge() = default;
    virtual std::string kind() const = 0;
    virtual std::vector<CriterionScore> score_static(const SkillArtifact& artifact,
                                                     const EffectiveRubric& rubric) = 0;
    virtual DynamicScorecard judge_output(const ExecutionRecord& record,
                                          const EffectiveRubric& rubric,
                                          const SkillArtifact& artifact) = 0;
    // Mode A has no script to run: the judge backend generates the skill's
    // response to a prompt, and that text is what gets audited.
    virtual std::string generate_transcript(const SkillArtifact& artifact,
                                            const TestInput& input) = 0;
};

struct PredicateResult {
    bool ok = false;
    std::string rationale;
};

namespace detail {

inline std::pair<std::string, std::string> split_predicate(std::string_view pred) {
    auto colon = pred.find(':');
    if (colon == std::string_view::npos) return {std::string(pred), ""};
    return {std::string(pred.substr(0, colon)), std::string(pred.substr(colon + 1))};
}

inline bool contains_any_ci(const std::string& text, const std::string& alternatives) {
    for (const auto& needle : split(alternatives, '|'))
        if (!needle.empty() && contains_ci(text, needle)) return true;
    return false;
}

inline std::string first_match_ci(const std::string& text, const std::string& alternatives) {
    for (const auto& needle : split(alternatives, '|'))
        if (!needle.empty() && contains_ci(text, needle)) return std::string(needle);
    return "";
}

inline int count_section_headers(const std::string& text) {
    int n = 0;
    for (const auto& line : split_lines(text))
        if (std::regex_search(std::string(line), make_regex(R"(^#{1,6}\s+\S)", false))) ++n;
    return n;
}

} // namespace detail

// ---------------------------------------------------------------- static predicates

inline PredicateResult eval_static_predicate(std::string_view predicate,
                                             const SkillArtifact& art,
                                             const std::vector<detail::ScriptText>& scripts,
                                             const Config& cfg) {
    using namespace detail;
    auto [head, arg] = split_predicate(predicate);
    const SkillManifest& m = art.manifest;

    auto any_script = [&](const std::string& pattern) -> const ScriptText* {
        for (const auto& s : scripts)
            if (std::regex_search(s.text, make_regex(pattern))) return &s;
        return nullptr;
    };
    auto no_script_matches = [&](const std::string& pattern, const std::string& why_hit) {
        for (const auto& s : scripts)
            if (std::regex_search(s.text, make_regex(pattern)))
                return PredicateResult{false, why_hit + " in " + s.path};
        return PredicateResult{true, "no occurrence in any script"};
    };
    auto ok = [](std::string why) { return PredicateResult{true, std::move(why)}; };
    auto no = [](std::string why) { return PredicateResult{false, std::move(why)}; };

    if (head == "description_min_words") {
        auto n = word_count(m.description);
        std::size_t want = std::stoul(arg);
        return n >= want ? ok("description has " + std::to_string(n) + " words")
                         : no("description has " + std::to_string(n) + " words, needs " + arg);
    }
    if (head == "description_max_words") {
        auto n = word_count(m.description);
        std::size_t cap = std::stoul(arg);
        return n <= cap ? ok("description within " + arg + " words")
                        : no("description has " + std::to_string(n) + " words, cap " + arg);
    }
    if (head == "body_min_words") {
        auto n = word_count(m.body);
        std::size_t want = std::stoul(arg);
        return n >= want ? ok("body has " + std::to_string(n) + " words")
                         : no("body has " + std::to_string(n) + " words, needs " + arg);
    }
    if (head == "body_contains_any") {
        auto hit = first_match_ci(m.body, arg);
        return hit.empty() ? no("body matches none of: " + arg) : ok("body mentions '" + hit + "'");
    }
    if (head == "declares_io") {
        if (m.declared_inputs.empty()) return no("no declared inputs");
        if (m.declared_outputs.empty()) return no("no declared outputs");
        return ok("inputs and outputs declared");
    }
    if (head == "manifest_has_key")
        return m.front(arg) ? ok("frontmatter has '" + arg + "'")
                            : no("frontmatter lacks '" + arg + "'");
    if (head == "graceful_degradation") {
        if (scripts.empty())
            return contains_any_ci(m.body, "error handling|fallback|graceful|degrade")
                       ? ok("instructions describe error handling")
                       : no("no error-handling guidance in instructions");
        if (const auto* s = any_script(R"(\b(try|except|catch|trap|rescue)\b)"))
            return ok("error handling present in " + s->path);
        return no("no error-handling construct in any script");
    }
    if (head == "strict_input_validation") {
        if (scripts.empty())
            return contains_any_ci(m.body, "invalid|malformed") &&
                           contains_any_ci(m.body, "halt|stop|reject|abort|refuse")
                       ? ok("instructions demand hard stops on invalid input")
                       : no("no hard-stop validation policy in instructions");
        for (const auto& s : scripts) {
            bool names_bad_input =
                std::regex_search(s.text, make_regex(R"(invalid|malformed|validat)"));
            bool halts = std::regex_search(
                s.text, make_regex(R"(sys\.exit|raise SystemExit|\bexit\s+1\b|\bexit\(1\))"));
            if (names_bad_input && halts)
                return ok("hard stop on invalid input in " + s.path);
        }
        return no("no script halts on invalid input");
    }
    if (head == "rng_discipline") {
        auto hits = unseeded_rng_hits(scripts, cfg);
        return hits.empty() ? ok("all random sources seeded")
                            : no("unseeded random source at " + hits[0].path + ":" +
                                 std::to_string(hits[0].line));
    }
    if (head == "inline_recovery_guidance") {
        if (scripts.empty())
            return contains_any_ci(m.body, "recover|on error|if this fails|retry")
                       ? ok("instructions include recovery guidance")
                       : no("no recovery guidance in instructions");
        if (const auto* s = any_script(R"(retry|please check|expected format|try again)"))
            return ok("recovery message in " + s->path);
        return no("no human-readable recovery message in scripts");
    }
    if (head == "machine_parseable_errors") {
        const std::string pat = R"("code"\s*:|error_code|\bE\d{3}\b|machine.readable)";
        if (scripts.empty())
            return std::regex_search(m.body, make_regex(pat))
                       ? ok("instructions specify structured error codes")
                       : no("no structured error codes in instructions");
        if (const auto* s = any_script(pat)) return ok("structured error codes in " + s->path);
        return no("no machine-parseable error codes in scripts");
    }
    if (head == "declares_resource_bounds") {
        for (const char* key : {"timeout", "memory", "runtime", "time_limit"})
            if (m.front(key)) return ok(std::string("frontmatter declares ") + key);
        return contains_any_ci(m.body, "timeout|time limit|memory limit|resource limit")
                   ? ok("instructions state a resource bound")
                   : no("no declared resource bounds");
    }
    if (head == "bounded_loops") {
        auto hits = unbounded_loop_hits(scripts);
        return hits.empty() ? ok("no unbounded loop detected")
                            : no("unbounded loop at " + hits[0].path + ":" +
                                 std::to_string(hits[0].line));
    }
    if (head == "deps_pinned") {
        auto constraints = collect_dependency_constraints(art, cfg);
        for (const auto& c : constraints)
            if (c.op.empty())
                return no("unpinned dependency '" + c.package + "' in " + c.file);
        return ok(constraints.empty() ? "no dependency manifest to pin"
                                      : "all declared dependencies pinned");
    }
    if (head == "platform_neutral") {
        const std::string pat = R"(cmd\.exe|powershell|\.bat\b|\.exe\b)";
        if (std::regex_search(m.body, make_regex(pat))) return no("OS-specific reference in instructions");
        auto r = no_script_matches(pat, "OS-specific invocation");
        return r.ok ? ok("no platform-specific invocations") : r;
    }
    if (head == "output_types_known") {
        if (m.declared_outputs.empty()) return no("no declared outputs");
        static const std::vector<std::string> known = {"text", "csv",      "json", "md",
                                                       "markdown", "tsv", "html"};
        for (const auto& f : m.declared_outputs) {
            if (f.type.empty()) return no("output '" + f.name + "' has no declared type");
            if (std::find(known.begin(), known.end(), to_lower(f.type)) == known.end())
                return no("output '" + f.name + "' has nonstandard type '" + f.type + "'");
        }
        return ok("all declared outputs carry standard types");
    }
    if (head == "has_example_block") {
        if (m.body.find("```") != std::string::npos) return ok("fenced example present");
        if (std::regex_search(m.body, make_regex(R"(^#{1,6}\s.*example|example:)")))
            return ok("example section present");
        return no("no example block or section");
    }
    if (head == "auto_correction") {
        const std::string alts = "auto-correct|autocorrect|did you mean|closest match|normaliz";
        if (contains_any_ci(m.body, alts)) return ok("instructions describe input auto-correction");
        for (const auto& s : scripts)
            if (contains_any_ci(s.text, alts)) return ok("auto-correction logic in " + s.path);
        return no("no auto-correction of malformed inputs");
    }
    if (head == "no_fuzzy_autocorrection") {
        const std::string alts = "exact match required|reject ambiguous|no auto-correction|refuse fuzzy";
        if (contains_any_ci(m.body, alts)) return ok("instructions refuse fuzzy auto-correction");
        for (const auto& s : scripts)
            if (contains_any_ci(s.text, alts)) return ok("fuzzy correction refused in " + s.path);
        return no("fuzzy auto-correction not explicitly refused");
    }
    if (head == "no_dynamic_eval") {
        auto hits = unsanitized_eval_hits(scripts, cfg);
        return hits.empty() ? ok("no unsanitized dynamic evaluation")
                            : no("dynamic evaluation at " + hits[0].path + ":" +
                                 std::to_string(hits[0].line));
    }
    if (head == "no_hardcoded_credentials") {
        const std::string pat = R"((api_key|apikey|secret|token|password)\s*=\s*["'][A-Za-z0-9])";
        if (std::regex_search(m.raw, make_regex(pat))) return no("credential literal in manifest");
        auto r = no_script_matches(pat, "credential literal");
        return r.ok ? ok("no hardcoded credentials") : r;
    }
    if (head == "injection_free") {
        auto hits = injection_hits(m.body, cfg);
        return hits.empty() ? ok("no instruction-override phrasing")
                            : no("injection phrasing at line " + std::to_string(hits[0].line));
    }
    if (head == "scripts_in_subdir") {
        for (const auto& s : scripts)
            if (!s.path.starts_with("scripts/"))
                return no("script outside scripts/: " + s.path);
        return ok(scripts.empty() ? "no scripts bundled" : "all scripts under scripts/");
    }
    if (head == "scripts_commented") {
        for (const auto& s : scripts) {
            auto lines = split_lines(s.text);
            bool commented = false;
            for (std::size_t i = 0; i < lines.size() && i < 10; ++i) {
                auto t = trim(lines[i]);
                if (t.starts_with("#") && !t.starts_with("#!")) {
                    commented = true;
                    break;
                }
            }
            if (!commented) return no("no header comment in " + s.path);
        }
        return ok(scripts.empty() ? "no scripts to document" : "all scripts carry header comments");
    }
    if (head == "no_absolute_paths") {
        const std::string pat = R"((/home/|/users/|/var/|/tmp/|/root/|[a-z]:\\))";
        for (const auto& s : scripts) {
            auto lines = split_lines(s.text);
            for (std::size_t i = 0; i < lines.size(); ++i) {
                if (trim(lines[i]).starts_with("#!")) continue;
                if (std::regex_search(std::string(lines[i]), make_regex(pat)))
                    return no("absolute path in " + s.path + ":" + std::to_string(i + 1));
            }
        }
        if (std::regex_search(m.body, make_regex(pat)))
            return no("absolute path in instructions");
        return ok("no absolute filesystem paths");
    }
    if (head == "no_env_specific_refs") {
        const std::string pat = R"(\$HOME\b|%userprofile%|/home/\w+|~/)";
        if (std::regex_search(m.body, make_regex(pat)))
            return no("environment-specific reference in instructions");
        auto r = no_script_matches(pat, "environment-specific reference");
        return r.ok ? ok("no environment-specific references") : r;
    }
    if (head == "install_instructions_present") {
        return contains_any_ci(m.body,
                               "pip install|install |requirements|no installation|no dependencies|standard library")
                   ? ok("installation guidance present")
                   : no("no installation guidance");
    }

    throw AuditError(ErrorCode::ConfigError,
                     "unknown static predicate: " + std::string(predicate));
}

// ---------------------------------------------------------------- dynamic predicates

inline PredicateResult eval_dynamic_predicate(std::string_view predicate,
                                              const ExecutionRecord& rec,
                                              const SkillArtifact& art, const Config& cfg) {
    using namespace detail;
    auto [head, arg] = split_predicate(predicate);
    auto ok = [](std::string why) { return PredicateResult{true, std::move(why)}; };
    auto no = [](std::string why) { return PredicateResult{false, std::move(why)}; };

    if (head == "transcript_min_words") {
        auto n = word_count(rec.transcript);
        std::size_t want = std::stoul(arg);
        return n >= want ? ok("transcript has " + std::to_string(n) + " words")
                         : no("transcript has " + std::to_string(n) + " words, needs " + arg);
    }
    if (head == "transcript_word_limit") {
        auto n = word_count(rec.transcript);
        std::size_t cap = std::stoul(arg);
        return n <= cap ? ok("transcript within " + arg + " words")
                        : no("transcript has " + std::to_string(n) + " words, cap " + arg);
    }
    if (head == "no_crash")
        return rec.crashed ? no(rec.timed_out ? "run timed out" : "run crashed, exit " +
                                                                       std::to_string(rec.exit_status))
                           : ok("run completed");
    if (head == "completed_without_crash")
        return (!rec.crashed && rec.exit_status == 0) ? ok("completed with exit 0")
                                                      : no("did not complete cleanly");
    if (head == "mentions_declared_output") {
        const auto& outs = art.manifest.declared_outputs;
        if (outs.empty()) return ok("no declared outputs to cover");
        for (const auto& f : outs) {
            bool found = contains_ci(rec.transcript, f.name);
            for (const auto& p : rec.produced_files)
                if (!found && contains_ci(p.path, f.name)) found = true;
            if (!found) return no("declared output '" + f.name + "' absent from the run");
        }
        return ok("all declared outputs covered");
    }
    if (head == "contains_any") {
        auto hit = first_match_ci(rec.transcript, arg);
        return hit.empty() ? no("transcript matches none of: " + arg)
                           : ok("transcript mentions '" + hit + "'");
    }
    if (head == "not_contains_any") {
        auto hit = first_match_ci(rec.transcript, arg);
        return hit.empty() ? ok("no banned phrasing")
                           : no("transcript contains '" + hit + "'");
    }
    if (head == "has_citation_marker") {
        return any_pattern_matches(rec.transcript, cfg.get_list("m1.identifier_pattern"))
                   ? ok("identifier-backed citation present")
                   : no("no DOI or PMID style citation");
    }
    if (head == "has_section_headers") {
        int n = count_section_headers(rec.transcript);
        return n >= 2 ? ok(std::to_string(n) + " section headers")
                      : no("fewer than 2 section headers");
    }
    if (head == "structured_output") {
        if (count_section_headers(rec.transcript) >= 2) return ok("sectioned output");
        if (!rec.produced_files.empty()) return ok("files produced");
        if (rec.transcript.find("```") != std::string::npos) return ok("fenced block present");
        return no("no structure detected in output");
    }
    if (head == "generated_code_clean") {
        auto blocks = extract_code_blocks(rec.transcript);
        if (blocks.empty()) return no("no generated code block");
        auto declared = declared_packages(collect_dependency_constraints(art, cfg));
        const auto& stdlib = cfg.get_list("m4.stdlib_module");
        for (const auto& b : blocks) {
            if (!balanced_delimiters(b.text))
                return no("code block at transcript line " + std::to_string(b.start_line) +
                          " has unbalanced delimiters");
            for (const auto& mod : imported_modules(b.text)) {
                bool known = std::find(stdlib.begin(), stdlib.end(), mod) != stdlib.end() ||
                             std::find(declared.begin(), declared.end(), to_lower(mod)) !=
                                 declared.end();
                if (!known) return no("code imports undeclared module '" + mod + "'");
            }
        }
        return ok("generated code parses and imports only declared modules");
    }

    throw AuditError(ErrorCode::ConfigError,
                     "unknown dynamic predicate: " + std::string(predicate));
}

// ---------------------------------------------------------------- RuleJudge

class RuleJudge final : public OutputJudge {
public:
    explicit RuleJudge(Config cfg) : cfg_(std::move(cfg)) {}

    std::string kind() const override { return "rule"; }

    std::vector<CriterionScore> score_static(const SkillArtifact& artifact,
                                             const EffectiveRubric& rubric) override {
        auto scripts = detail::load_script_texts(artifact);
        std::vector<CriterionScore> out;
        out.reserve(rubric.static_criteria.size());
        for (const auto& c : rubric.static_criteria) {
            auto r = eval_static_predicate(c.predicate, artifact, scripts, cfg_);
            out.push_back({c.id, c.name, r.ok ? c.weight : 0.0, c.weight, r.rationale});
        }
        return out;
    }

    DynamicScorecard judge_output(const ExecutionRecord& record, const EffectiveRubric& rubric,
                                  const SkillArtifact& artifact) override {
        DynamicScorecard card;
        card.input_id = record.input_id;
        for (const auto& c : rubric.layer1) {
            auto r = eval_dynamic_predicate(c.predicate, record, artifact, cfg_);
            card.layer1_entries.push_back(
                {c.id, c.name, r.ok ? c.max_points : 0.0, c.max_points, r.rationale});
            card.layer1_points += card.layer1_entries.back().points;
        }
        for (const auto& c : rubric.layer2) {
            auto r = eval_dynamic_predicate(c.predicate, record, artifact, cfg_);
            card.layer2_entries.push_back(
                {c.id, c.name, r.ok ? c.max_points : 0.0, c.max_points, r.rationale});
            card.layer2_points += card.layer2_entries.back().points;
        }
        card.total = card.layer1_points + card.layer2_points;
        return card;
    }

    // Deterministic text synthesis: depends only on the manifest and the input.
    std::string generate_transcript(const SkillArtifact& artifact, const TestInput& input) override {
        const auto& m = artifact.manifest;
        std::string citation = "doi: 10.1234/audit.2024.0001";
        for (const auto& f : artifact.reference_files) {
            if (std::filesystem::path(f.path).filename() != "identifiers.txt") continue;
            try {
                for (auto& line : detail::split_lines(detail::read_file(artifact.root / f.path))) {
                    auto t = detail::trim(line);
                    if (t.empty()) continue;
                    citation = detail::starts_with(detail::to_lower(t), "10.") ? "doi: " + t : t;
                    break;
                }
            } catch (const AuditError&) {
            }
            break;
        }

        std::ostringstream out;
        out << "## Approach\n\n"
            << m.name << " handled the request \"" << input.prompt << "\"";
        if (!input.args.empty()) out << " with arguments " << detail::join(input.args, " ");
        out << ".\nSearch strategy: structured database query (PubMed) with explicit inclusion "
               "criteria,\nfollowing the declared scope: "
            << m.description << "\n\n"
            << "## Findings\n\n"
            << "Across a sample size of 120 participants (n = 120), the pooled estimate was "
               "associated with\na modest shift in the primary endpoint (p = 0.012 after "
               "multiple-comparison correction).\nEvidence level: moderate (one systematic review "
               "in the hierarchy). Randomization, power\nanalysis, blinding, and a control group "
               "were assessed during validation against the\npre-registered threshold; "
               "normalization preceded each statistical test.\n\n"
            << "```python\nimport json\nprint(json.dumps({\"records\": 120}))\n```\n\n"
            << "Results are summarized in the table below. Source: " << citation << "\n\n"
            << "## Summary\n\n";
        if (!m.declared_outputs.empty()) {
            out << "Declared outputs produced:";
            for (const auto& o : m.declared_outputs) out << " " << o.name;
            out << ".\n";
        }
        out << "This material is for research purposes only and is not a substitute for medical "
               "advice.\n";
        return out.str();
    }

private:
    Config cfg_;
};

} // namespace skillaudit
