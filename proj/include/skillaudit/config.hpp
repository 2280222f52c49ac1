#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "skillaudit/default_config.hpp"
#include "skillaudit/detail/strings.hpp"
#include "skillaudit/errors.hpp"

namespace skillaudit {

/// Key-value configuration document.
///
/// Syntax: one `key = value` pair per line; `#` starts a comment; blank
/// lines ignored. Repeating a key within one document appends to a list.
/// Overlaying a document on top of another replaces each key it mentions
/// wholesale (so a user file can shrink or replace a default pattern list,
/// not just extend it).
class Config {
public:
    /// Built-in defaults (thresholds, scanners' pattern lists, the rubric
    /// manifest, scene overrides, and the per-category input banks).
    static Config defaults() {
        Config c;
        c.merge_text(kDefaultConfigText, "<defaults>");
        return c;
    }

    static Config empty() { return Config{}; }

    void merge_text(std::string_view text, const std::string& origin) {
        std::map<std::string, std::vector<std::string>> doc;
        int lineno = 0;
        for (const auto& raw : detail::split_lines(text)) {
            ++lineno;
            auto line = detail::trim(raw);
            if (line.empty() || line[0] == '#') continue;
            auto eq = line.find('=');
            if (eq == std::string::npos)
                throw AuditError(ErrorCode::ConfigError,
                                 origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
            auto key = detail::trim(line.substr(0, eq));
            auto value = detail::trim(line.substr(eq + 1));
            if (key.empty())
                throw AuditError(ErrorCode::ConfigError,
                                 origin + ":" + std::to_string(lineno) + ": empty key");
            doc[key].push_back(value);
        }
        for (auto& [k, v] : doc) entries_[k] = std::move(v);
    }

    bool has(const std::string& key) const { return entries_.count(key) > 0; }

    std::optional<std::string> find(const std::string& key) const {
        auto it = entries_.find(key);
        if (it == entries_.end() || it->second.empty()) return std::nullopt;
        return it->second.back();
    }

    std::string get(const std::string& key) const {
        auto v = find(key);
        if (!v) throw AuditError(ErrorCode::ConfigError, "missing config key: " + key);
        return *v;
    }

    std::string get_or(const std::string& key, const std::string& fallback) const {
        return find(key).value_or(fallback);
    }

    const std::vector<std::string>& get_list(const std::string& key) const {
        static const std::vector<std::string> kEmpty;
        auto it = entries_.find(key);
        return it == entries_.end() ? kEmpty : it->second;
    }

    double get_double(const std::string& key) const {
        try {
            return std::stod(get(key));
        } catch (const std::invalid_argument&) {
            throw AuditError(ErrorCode::ConfigError, "config key " + key + " is not numeric");
        }
    }

    long get_int(const std::string& key) const {
        try {
            return std::stol(get(key));
        } catch (const std::invalid_argument&) {
            throw AuditError(ErrorCode::ConfigError, "config key " + key + " is not an integer");
        }
    }

    bool get_bool(const std::string& key) const {
        auto v = detail::to_lower(get(key));
        if (v == "true" || v == "yes" || v == "1") return true;
        if (v == "false" || v == "no" || v == "0") return false;
        throw AuditError(ErrorCode::ConfigError, "config key " + key + " is not boolean");
    }

    /// All keys with the given prefix, sorted (map order).
    std::vector<std::string> keys_with_prefix(const std::string& prefix) const {
        std::vector<std::string> out;
        for (auto it = entries_.lower_bound(prefix); it != entries_.end(); ++it) {
            if (!detail::starts_with(it->first, prefix)) break;
            out.push_back(it->first);
        }
        return out;
    }

private:
    std::map<std::string, std::vector<std::string>> entries_;
};

}  // namespace skillaudit
