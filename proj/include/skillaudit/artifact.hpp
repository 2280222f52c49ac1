#pragma once

#include <filesystem>
#include <optional>
#include <regex>
#include <string>
#include <utility>
#include <vector>

#include "skillaudit/config.hpp"
#include "skillaudit/detail/fsutil.hpp"
#include "skillaudit/detail/strings.hpp"
#include "skillaudit/errors.hpp"

namespace skillaudit {

namespace fs = std::filesystem;

enum class Category : int {
    EvidenceInsight = 1,
    ProtocolDesign = 2,
    DataAnalysis = 3,
    AcademicWriting = 4,
    Other = 5,
};

inline const char* category_name(Category c) {
    switch (c) {
    case Category::EvidenceInsight: return "Evidence Insight";
    case Category::ProtocolDesign: return "Protocol Design";
    case Category::DataAnalysis: return "Data Analysis";
    case Category::AcademicWriting: return "Academic Writing";
    case Category::Other: return "Other";
    }
    return "Other";
}

inline std::optional<Category> parse_category(std::string_view s) {
    std::string t = detail::to_lower(detail::trim(s));
    for (char& c : t)
        if (c == '_' || c == '-') c = ' ';
    if (t == "1" || t == "evidence insight" || t == "evidenceinsight") return Category::EvidenceInsight;
    if (t == "2" || t == "protocol design" || t == "protocoldesign") return Category::ProtocolDesign;
    if (t == "3" || t == "data analysis" || t == "dataanalysis") return Category::DataAnalysis;
    if (t == "4" || t == "academic writing" || t == "academicwriting") return Category::AcademicWriting;
    if (t == "5" || t == "other") return Category::Other;
    return std::nullopt;
}

// No mode C exists in this model: endpoint declarations without any script
// to call them are surfaced as UnclassifiableMode instead of being guessed.
enum class ExecutionMode { A, B, D };

inline const char* mode_name(ExecutionMode m) {
    switch (m) {
    case ExecutionMode::A: return "A";
    case ExecutionMode::B: return "B";
    case ExecutionMode::D: return "D";
    }
    return "?";
}

enum class ComplexityTier { Simple, Moderate, Complex };

inline const char* tier_name(ComplexityTier t) {
    switch (t) {
    case ComplexityTier::Simple: return "Simple";
    case ComplexityTier::Moderate: return "Moderate";
    case ComplexityTier::Complex: return "Complex";
    }
    return "?";
}

inline int dynamic_test_count(ComplexityTier t) {
    switch (t) {
    case ComplexityTier::Simple: return 3;
    case ComplexityTier::Moderate: return 5;
    case ComplexityTier::Complex: return 7;
    }
    return 3;
}

struct OutputField {
    std::string name;
    std::string type; // empty when undeclared
    friend bool operator==(const OutputField&, const OutputField&) = default;
};

struct SkillManifest {
    std::string name;
    std::string description;
    std::string body; // everything after the closing delimiter line
    std::vector<std::string> declared_inputs;
    std::vector<OutputField> declared_outputs;
    // Ordered key/value pairs exactly as parsed, duplicates preserved.
    std::vector<std::pair<std::string, std::string>> frontmatter_raw;
    std::string raw; // original file text, untouched

    std::optional<std::string> front(std::string_view key) const {
        for (const auto& [k, v] : frontmatter_raw)
            if (k == key) return v;
        return std::nullopt;
    }
    std::vector<std::string> front_all(std::string_view key) const {
        std::vector<std::string> out;
        for (const auto& [k, v] : frontmatter_raw)
            if (k == key) out.push_back(v);
        return out;
    }
};

struct FileRecord {
    std::string path; // relative to the skill root, generic separators
    std::size_t size = 0;
    std::string dialect; // scripts only; "unknown" for unrecognized executables
};

struct ApiDeclaration {
    std::string kind; // "endpoint" or "credential"
    std::string value;
};

struct SkillArtifact {
    std::string skill_id;
    fs::path root;
    SkillManifest manifest;
    std::vector<FileRecord> script_files;
    std::vector<FileRecord> reference_files;
    std::vector<ApiDeclaration> api_declarations;
    Category category = Category::Other;
};

// Frontmatter is a leading block delimited by lines of exactly three dashes,
// one `key: value` per line. Keys survive verbatim and in order so
// emit_manifest can reproduce the document.
inline SkillManifest parse_manifest(const std::string& text) {
    if (text.empty()) throw AuditError(ErrorCode::EmptyFile, "manifest is empty");

    SkillManifest m;
    m.raw = text;

    auto lines = detail::split_lines(text);
    if (lines.empty() || detail::trim(lines[0]) != "---")
        throw AuditError(ErrorCode::MissingFrontmatter, "manifest has no frontmatter block");

    std::size_t close = 0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (detail::trim(lines[i]) == "---") {
            close = i;
            break;
        }
    }
    if (close == 0)
        throw AuditError(ErrorCode::MissingFrontmatter, "frontmatter block never closes");

    for (std::size_t i = 1; i < close; ++i) {
        const std::string& line = lines[i];
        auto colon = line.find(':');
        if (colon == std::string::npos) continue; // not a pair; carries no data
        std::string key = std::string(detail::trim(line.substr(0, colon)));
        std::string value = std::string(detail::trim(line.substr(colon + 1)));
        if (key.empty()) continue;
        m.frontmatter_raw.emplace_back(std::move(key), std::move(value));
    }

    // Body starts on the line after the closing delimiter.
    std::size_t body_pos = 0;
    for (std::size_t i = 0, seen = 0; i < text.size(); ++i) {
        if (text[i] == '\n' && ++seen == close + 1) {
            body_pos = i + 1;
            break;
        }
    }
    m.body = body_pos ? text.substr(body_pos) : std::string();

    if (auto v = m.front("name"); v && !v->empty()) m.name = *v;
    else throw AuditError(ErrorCode::MissingRequiredField, "manifest missing required field: name");
    if (auto v = m.front("description"); v && !v->empty()) m.description = *v;
    else throw AuditError(ErrorCode::MissingRequiredField, "manifest missing required field: description");

    for (const auto& v : m.front_all("inputs"))
        for (const auto& item : detail::split_trimmed(v, ','))
            if (!item.empty()) m.declared_inputs.push_back(item);

    // outputs: comma-separated `name(type)` or bare `name`
    for (const auto& v : m.front_all("outputs")) {
        for (const auto& item : detail::split_trimmed(v, ',')) {
            if (item.empty()) continue;
            OutputField f;
            auto open = item.find('(');
            if (open != std::string::npos && item.back() == ')') {
                f.name = std::string(detail::trim(item.substr(0, open)));
                f.type = std::string(detail::trim(item.substr(open + 1, item.size() - open - 2)));
            } else {
                f.name = item;
            }
            if (!f.name.empty()) m.declared_outputs.push_back(std::move(f));
        }
    }
    return m;
}

inline std::string emit_manifest(const SkillManifest& m) {
    std::string out = "---\n";
    for (const auto& [k, v] : m.frontmatter_raw) {
        out += k;
        out += ": ";
        out += v;
        out += '\n';
    }
    out += "---\n";
    out += m.body;
    return out;
}

namespace detail {

inline std::string detect_dialect(const fs::path& abs, const std::string& rel,
                                  const Config& cfg) {
    std::string ext = to_lower(fs::path(rel).extension().string());
    for (const auto& pair : cfg.get_list("scripts.extension")) {
        auto colon = pair.rfind(':');
        if (colon == std::string::npos) continue;
        if (to_lower(trim(pair.substr(0, colon))) == ext)
            return std::string(trim(pair.substr(colon + 1)));
    }
    if (ext.empty() && is_executable(abs)) {
        std::string text;
        try {
            text = read_file(abs);
        } catch (const AuditError&) {
            return "unknown";
        }
        auto first_nl = text.find('\n');
        std::string first = text.substr(0, first_nl);
        if (first.rfind("#!", 0) == 0) {
            for (const auto& pair : cfg.get_list("scripts.shebang")) {
                auto colon = pair.rfind(':');
                if (colon == std::string::npos) continue;
                if (first.find(trim(pair.substr(0, colon))) != std::string::npos)
                    return std::string(trim(pair.substr(colon + 1)));
            }
        }
        return "unknown";
    }
    return ""; // not a script
}

} // namespace detail

inline SkillArtifact discover_skill(const fs::path& dir, Category category, const Config& cfg) {
    if (!fs::exists(dir / "SKILL.md"))
        throw AuditError(ErrorCode::NoManifest, "no SKILL.md in " + dir.string());

    SkillArtifact art;
    art.root = dir;
    art.skill_id = dir.filename().string();
    if (art.skill_id.empty()) art.skill_id = dir.parent_path().filename().string();
    art.category = category;
    art.manifest = parse_manifest(detail::read_file(dir / "SKILL.md"));

    for (const auto& rel : detail::list_files_sorted(dir)) {
        std::string rel_str = rel.generic_string();
        if (rel_str == "SKILL.md") continue;
        FileRecord rec;
        rec.path = rel_str;
        std::error_code ec;
        rec.size = static_cast<std::size_t>(fs::file_size(dir / rel, ec));
        if (ec) rec.size = 0;
        std::string dialect = detail::detect_dialect(dir / rel, rel_str, cfg);
        if (!dialect.empty()) {
            rec.dialect = dialect;
            art.script_files.push_back(std::move(rec));
        } else {
            art.reference_files.push_back(std::move(rec));
        }
    }

    std::string endpoint_key = cfg.get_or("api.endpoint_key", "api_endpoints");
    std::string credential_key = cfg.get_or("api.credential_key", "api_credentials");
    for (const auto& v : art.manifest.front_all(endpoint_key))
        for (const auto& item : detail::split_trimmed(v, ','))
            if (!item.empty()) art.api_declarations.push_back({"endpoint", item});
    for (const auto& v : art.manifest.front_all(credential_key))
        for (const auto& item : detail::split_trimmed(v, ','))
            if (!item.empty()) art.api_declarations.push_back({"credential", item});
    return art;
}

inline ExecutionMode classify_mode(const SkillArtifact& art) {
    bool scripts = !art.script_files.empty();
    bool apis = !art.api_declarations.empty();
    if (!scripts && !apis) return ExecutionMode::A;
    if (scripts && !apis) return ExecutionMode::B;
    if (scripts && apis) return ExecutionMode::D;
    throw AuditError(ErrorCode::UnclassifiableMode,
                     "endpoint declarations without scripts match no defined execution mode");
}

// Branching depth: one count per (body line, pattern) pair so a marker
// repeated on one line is not double-counted.
inline int branching_depth(const std::string& body, const Config& cfg) {
    int depth = 0;
    auto lines = detail::split_lines(body);
    for (const auto& pat : cfg.get_list("branching.pattern")) {
        std::regex re(pat, std::regex::ECMAScript | std::regex::icase);
        for (const auto& line : lines)
            if (std::regex_search(line, re)) ++depth;
    }
    return depth;
}

inline ComplexityTier complexity_from_features(int refs, int words, int depth, const Config& cfg) {
    int s_refs = cfg.get_int("complexity.simple.max_refs");
    int s_words = cfg.get_int("complexity.simple.max_words");
    int s_depth = cfg.get_int("complexity.simple.max_depth");
    int c_refs = cfg.get_int("complexity.complex.min_refs");
    int c_words = cfg.get_int("complexity.complex.min_words");
    int c_depth = cfg.get_int("complexity.complex.min_depth");
    if (refs >= c_refs || words >= c_words || depth >= c_depth) return ComplexityTier::Complex;
    if (refs <= s_refs && words < s_words && depth <= s_depth) return ComplexityTier::Simple;
    return ComplexityTier::Moderate;
}

inline ComplexityTier estimate_complexity(const SkillArtifact& art, const Config& cfg) {
    int refs = static_cast<int>(art.reference_files.size());
    int words = static_cast<int>(detail::word_count(art.manifest.raw));
    int depth = branching_depth(art.manifest.body, cfg);
    return complexity_from_features(refs, words, depth, cfg);
}

} // namespace skillaudit
