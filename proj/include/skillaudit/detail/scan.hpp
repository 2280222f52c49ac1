#pragma once

#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "skillaudit/artifact.hpp"
#include "skillaudit/config.hpp"
#include "skillaudit/detail/fsutil.hpp"
#include "skillaudit/detail/strings.hpp"

namespace skillaudit::detail {

struct ScriptText {
    std::string path;
    std::string dialect;
    std::string text;
};

inline std::vector<ScriptText> load_script_texts(const SkillArtifact& art) {
    std::vector<ScriptText> out;
    out.reserve(art.script_files.size());
    for (const auto& rec : art.script_files)
        out.push_back({rec.path, rec.dialect, read_file(art.root / rec.path)});
    return out;
}

struct PatternHit {
    std::string rule;
    std::string path;
    int line = 0; // 1-based
    std::string excerpt;
};

inline std::regex make_regex(const std::string& pattern, bool icase = true) {
    auto flags = std::regex::ECMAScript;
    if (icase) flags |= std::regex::icase;
    return std::regex(pattern, flags);
}

// One hit per (line, pattern): repeats of one pattern within a line do not
// multiply the count.
inline std::vector<PatternHit> scan_lines(const std::string& text, const std::string& path,
                                          const std::string& rule,
                                          const std::vector<std::string>& patterns,
                                          bool icase = true) {
    std::vector<PatternHit> hits;
    auto lines = split_lines(text);
    for (const auto& pat : patterns) {
        std::regex re = make_regex(pat, icase);
        for (std::size_t i = 0; i < lines.size(); ++i) {
            if (std::regex_search(lines[i], re))
                hits.push_back({rule, path, static_cast<int>(i + 1),
                                std::string(truncate_utf8(trim(lines[i]), 200))});
        }
    }
    return hits;
}

inline bool any_pattern_matches(const std::string& text,
                                const std::vector<std::string>& patterns, bool icase = true) {
    for (const auto& pat : patterns)
        if (std::regex_search(text, make_regex(pat, icase))) return true;
    return false;
}

struct CodeBlock {
    std::string lang; // fence tag, lowercased; may be empty
    std::string text;
    int start_line = 0; // line of the opening fence, 1-based
};

// Fenced blocks only; an unterminated fence yields no block.
inline std::vector<CodeBlock> extract_code_blocks(const std::string& text) {
    std::vector<CodeBlock> blocks;
    auto lines = split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        auto t = trim(lines[i]);
        if (!t.starts_with("```")) continue;
        CodeBlock b;
        b.lang = to_lower(trim(t.substr(3)));
        b.start_line = static_cast<int>(i + 1);
        std::size_t j = i + 1;
        bool closed = false;
        for (; j < lines.size(); ++j) {
            if (trim(lines[j]).starts_with("```")) {
                closed = true;
                break;
            }
            b.text += lines[j];
            b.text += '\n';
        }
        if (closed) {
            blocks.push_back(std::move(b));
            i = j;
        } else {
            break;
        }
    }
    return blocks;
}

// Delimiter balance over code with #-comments and quoted strings skipped.
// Triple quotes are treated as plain string delimiters of length three.
inline bool balanced_delimiters(const std::string& code) {
    std::vector<char> stack;
    bool in_string = false;
    char quote = 0;
    bool triple = false;
    for (std::size_t i = 0; i < code.size(); ++i) {
        char c = code[i];
        if (in_string) {
            if (c == '\\') {
                ++i;
                continue;
            }
            if (c == quote) {
                if (triple) {
                    if (i + 2 < code.size() && code[i + 1] == quote && code[i + 2] == quote) {
                        in_string = false;
                        i += 2;
                    }
                } else {
                    in_string = false;
                }
            }
            continue;
        }
        switch (c) {
        case '#':
            while (i < code.size() && code[i] != '\n') ++i;
            break;
        case '\'':
        case '"':
            in_string = true;
            quote = c;
            triple = i + 2 < code.size() && code[i + 1] == c && code[i + 2] == c;
            if (triple) i += 2;
            break;
        case '(': case '[': case '{':
            stack.push_back(c);
            break;
        case ')':
            if (stack.empty() || stack.back() != '(') return false;
            stack.pop_back();
            break;
        case ']':
            if (stack.empty() || stack.back() != '[') return false;
            stack.pop_back();
            break;
        case '}':
            if (stack.empty() || stack.back() != '{') return false;
            stack.pop_back();
            break;
        default:
            break;
        }
    }
    return stack.empty() && !in_string;
}

// Unseeded randomness: any random-source call in a script that contains no
// seeding statement anywhere. Seeding is per script file.
inline std::vector<PatternHit> unseeded_rng_hits(const std::vector<ScriptText>& scripts,
                                                 const Config& cfg) {
    std::vector<PatternHit> hits;
    const auto& rng = cfg.get_list("t3.rng_pattern");
    const auto& seed = cfg.get_list("t3.seed_pattern");
    for (const auto& s : scripts) {
        if (any_pattern_matches(s.text, seed, false)) continue;
        auto h = scan_lines(s.text, s.path, "t3.rng_pattern", rng, false);
        hits.insert(hits.end(), h.begin(), h.end());
    }
    return hits;
}

// Constant-true loop with no break/return/exit pattern anywhere after it in
// the same file. Scoped to end-of-file on purpose: conservative, favors
// false negatives over false vetoes.
inline std::vector<PatternHit> unbounded_loop_hits(const std::vector<ScriptText>& scripts) {
    static const std::regex loop_re(
        R"(\bwhile\s*(\(\s*)?(true|True|1|:)\s*(\))?\s*(:|;|do)?\s*$)");
    static const std::regex exit_re(R"(\b(break|return|exit|sys\.exit|raise)\b)");
    std::vector<PatternHit> hits;
    for (const auto& s : scripts) {
        auto lines = split_lines(s.text);
        for (std::size_t i = 0; i < lines.size(); ++i) {
            std::string l(lines[i]);
            if (!std::regex_search(l, loop_re)) continue;
            bool bounded = false;
            for (std::size_t j = i + 1; j < lines.size() && !bounded; ++j) {
                std::string rest(lines[j]);
                if (std::regex_search(rest, exit_re)) bounded = true;
            }
            if (!bounded)
                hits.push_back({"t3.unbounded_loop", s.path, static_cast<int>(i + 1),
                                std::string(truncate_utf8(trim(lines[i]), 200))});
        }
    }
    return hits;
}

// Dynamic-evaluation sinks whose first argument is not a string literal.
inline std::vector<PatternHit> unsanitized_eval_hits(const std::vector<ScriptText>& scripts,
                                                     const Config& cfg) {
    std::vector<PatternHit> hits;
    for (const auto& s : scripts) {
        auto lines = split_lines(s.text);
        for (const auto& pat : cfg.get_list("t4.eval_pattern")) {
            std::regex re = make_regex(pat, false);
            for (std::size_t i = 0; i < lines.size(); ++i) {
                std::string l(lines[i]);
                std::smatch m;
                if (!std::regex_search(l, m, re)) continue;
                auto open = l.find('(', static_cast<std::size_t>(m.position(0)));
                bool literal = false;
                if (open != std::string::npos) {
                    auto p = l.find_first_not_of(" \t", open + 1);
                    literal = p != std::string::npos && (l[p] == '"' || l[p] == '\'');
                }
                if (!literal)
                    hits.push_back({"t4.eval_pattern", s.path, static_cast<int>(i + 1),
                                    std::string(truncate_utf8(trim(lines[i]), 200))});
            }
        }
    }
    return hits;
}

inline std::vector<PatternHit> injection_hits(const std::string& body, const Config& cfg) {
    return scan_lines(body, "SKILL.md", "t4.injection_pattern",
                      cfg.get_list("t4.injection_pattern"));
}

// Top-level module names pulled from import statements, python style.
inline std::vector<std::string> imported_modules(const std::string& code) {
    std::vector<std::string> mods;
    static const std::regex import_re(R"(^\s*import\s+(.+))");
    static const std::regex from_re(R"(^\s*from\s+([A-Za-z_][A-Za-z0-9_]*))");
    for (const auto& line : split_lines(code)) {
        std::smatch m;
        std::string l(line);
        if (std::regex_search(l, m, from_re)) {
            mods.push_back(m[1].str());
        } else if (std::regex_search(l, m, import_re)) {
            for (const auto& part : split_trimmed(m[1].str(), ',')) {
                auto name = part.substr(0, part.find_first_of(" ."));
                if (!name.empty()) mods.push_back(std::string(trim(name)));
            }
        }
    }
    return mods;
}

} // namespace skillaudit::detail
