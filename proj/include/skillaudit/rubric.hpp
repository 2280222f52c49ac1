#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "skillaudit/artifact.hpp"
#include "skillaudit/config.hpp"
#include "skillaudit/detail/strings.hpp"
#include "skillaudit/errors.hpp"

namespace skillaudit {

struct StaticCriterion {
    std::string id;        // "2.1"
    std::string name;      // "Fault tolerance"
    std::string dimension; // one of the eight quality dimensions
    double weight = 1.0;
    std::string predicate; // rule-judge predicate id, possibly parameterized
    std::string guidance;  // remediation text used when the criterion fails
};

struct DynamicCriterion {
    std::string id;
    std::string name;
    double max_points = 0.0;
    std::string predicate;
    std::string guidance;
};

struct RubricManifest {
    std::vector<StaticCriterion> static_criteria;          // exactly 25
    std::vector<DynamicCriterion> layer1;                  // maxima sum to 40
    std::map<int, std::vector<DynamicCriterion>> layer2;   // per category; each sums to 60
};

struct SceneOverride {
    std::string id;
    int category = 0;
    std::vector<ExecutionMode> modes; // empty = any mode
    std::string criterion;            // static criterion id; empty for annotation-only
    std::string predicate;
    std::string guidance;
    std::string annotation;
};

// Rubric after override application, resolved for one (category, mode).
struct EffectiveRubric {
    Category category = Category::Other;
    ExecutionMode mode = ExecutionMode::A;
    std::vector<StaticCriterion> static_criteria;
    std::vector<DynamicCriterion> layer1;
    std::vector<DynamicCriterion> layer2;
    std::vector<std::string> annotations;
    std::vector<std::string> applied_override_ids;
};

inline const std::set<std::string>& quality_dimensions() {
    static const std::set<std::string> dims = {
        "functional_suitability", "reliability",     "performance_efficiency",
        "compatibility",          "usability",       "security",
        "maintainability",        "portability"};
    return dims;
}

namespace detail {

inline std::vector<std::string> config_id_list(const Config& cfg, const std::string& key) {
    std::vector<std::string> ids;
    for (const auto& chunk : cfg.get_list(key))
        for (const auto& id : split_trimmed(chunk, ','))
            if (!id.empty()) ids.push_back(id);
    return ids;
}

} // namespace detail

inline RubricManifest load_rubric(const Config& cfg) {
    RubricManifest r;

    for (const auto& id : detail::config_id_list(cfg, "rubric.static.ids")) {
        std::string base = "rubric.static." + id + ".";
        StaticCriterion c;
        c.id = id;
        c.name = cfg.get(base + "name");
        c.dimension = cfg.get(base + "dimension");
        c.weight = cfg.get_double(base + "weight");
        c.predicate = cfg.get(base + "predicate");
        c.guidance = cfg.get(base + "guidance");
        if (!quality_dimensions().count(c.dimension))
            throw AuditError(ErrorCode::ConfigError,
                             "criterion " + id + " names unknown dimension " + c.dimension);
        r.static_criteria.push_back(std::move(c));
    }
    if (r.static_criteria.size() != 25)
        throw AuditError(ErrorCode::ConfigError,
                         "static rubric must hold exactly 25 criteria, got " +
                             std::to_string(r.static_criteria.size()));
    std::set<std::string> used;
    for (const auto& c : r.static_criteria) used.insert(c.dimension);
    if (used != quality_dimensions())
        throw AuditError(ErrorCode::ConfigError,
                         "static rubric must cover all eight quality dimensions");

    auto load_dynamic = [&](const std::string& base_key) {
        std::vector<DynamicCriterion> items;
        for (const auto& id : detail::config_id_list(cfg, base_key + ".ids")) {
            std::string base = base_key + "." + id + ".";
            DynamicCriterion c;
            c.id = id;
            c.name = cfg.get(base + "name");
            c.max_points = cfg.get_double(base + "max");
            c.predicate = cfg.get(base + "predicate");
            c.guidance = cfg.get(base + "guidance");
            items.push_back(std::move(c));
        }
        return items;
    };

    r.layer1 = load_dynamic("rubric.layer1");
    double sum1 = 0;
    for (const auto& c : r.layer1) sum1 += c.max_points;
    if (sum1 != 40.0)
        throw AuditError(ErrorCode::ConfigError, "layer-1 maxima must sum to 40");

    for (int cat = 1; cat <= 5; ++cat) {
        auto items = load_dynamic("rubric.layer2." + std::to_string(cat));
        double sum2 = 0;
        for (const auto& c : items) sum2 += c.max_points;
        if (sum2 != 60.0)
            throw AuditError(ErrorCode::ConfigError, "layer-2 maxima for category " +
                                                         std::to_string(cat) +
                                                         " must sum to 60");
        r.layer2[cat] = std::move(items);
    }
    return r;
}

// Accepts "1.0", "1.1.0", and the prefixed forms reports carry.
inline bool is_v1_1_0(std::string_view version) {
    auto at = version.rfind('@');
    std::string v(at == std::string_view::npos ? version : version.substr(at + 1));
    return detail::trim(v) == "1.1.0";
}

inline std::string framework_version_string(std::string_view version) {
    return is_v1_1_0(version) ? "skill-auditor@1.1.0" : "skill-auditor@1.0";
}

inline std::vector<SceneOverride> load_scene_overrides(const Config& cfg,
                                                       std::string_view version) {
    std::vector<SceneOverride> out;
    if (!is_v1_1_0(version)) return out;
    for (const auto& id : detail::config_id_list(cfg, "override.v1_1_0.ids")) {
        std::string base = "override.v1_1_0." + id + ".";
        SceneOverride o;
        o.id = id;
        o.category = cfg.get_int(base + "category");
        for (const auto& m : detail::split_trimmed(cfg.get_or(base + "mode", ""), ',')) {
            if (m == "A") o.modes.push_back(ExecutionMode::A);
            else if (m == "B") o.modes.push_back(ExecutionMode::B);
            else if (m == "D") o.modes.push_back(ExecutionMode::D);
        }
        o.criterion = cfg.get_or(base + "criterion", "");
        o.predicate = cfg.get_or(base + "predicate", "");
        o.guidance = cfg.get_or(base + "guidance", "");
        o.annotation = cfg.get_or(base + "annotation", "");
        out.push_back(std::move(o));
    }
    return out;
}

inline EffectiveRubric apply_scene_overrides(const RubricManifest& rubric,
                                             const std::vector<SceneOverride>& overrides,
                                             Category category, ExecutionMode mode) {
    EffectiveRubric eff;
    eff.category = category;
    eff.mode = mode;
    eff.static_criteria = rubric.static_criteria;
    eff.layer1 = rubric.layer1;
    eff.layer2 = rubric.layer2.at(static_cast<int>(category));

    for (const auto& o : overrides) {
        if (o.category != static_cast<int>(category)) continue;
        if (!o.modes.empty() &&
            std::find(o.modes.begin(), o.modes.end(), mode) == o.modes.end())
            continue;
        if (!o.criterion.empty()) {
            auto it = std::find_if(eff.static_criteria.begin(), eff.static_criteria.end(),
                                   [&](const StaticCriterion& c) { return c.id == o.criterion; });
            if (it == eff.static_criteria.end())
                throw AuditError(ErrorCode::UnknownCriterion,
                                 "override " + o.id + " names unknown criterion " + o.criterion);
            if (!o.predicate.empty()) it->predicate = o.predicate;
            if (!o.guidance.empty()) it->guidance = o.guidance;
        }
        if (!o.annotation.empty()) eff.annotations.push_back(o.annotation);
        eff.applied_override_ids.push_back(o.id);
    }
    return eff;
}

} // namespace skillaudit
