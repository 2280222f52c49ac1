#pragma once

#include <optional>
#include <string>
#include <vector>

namespace skillaudit {

enum class VetoDimension { T1, T2, T3, T4, M1, M2, M3, M4 };

inline const char* dimension_id(VetoDimension d) {
    switch (d) {
    case VetoDimension::T1: return "T1";
    case VetoDimension::T2: return "T2";
    case VetoDimension::T3: return "T3";
    case VetoDimension::T4: return "T4";
    case VetoDimension::M1: return "M1";
    case VetoDimension::M2: return "M2";
    case VetoDimension::M3: return "M3";
    case VetoDimension::M4: return "M4";
    }
    return "?";
}

inline const char* dimension_title(VetoDimension d) {
    switch (d) {
    case VetoDimension::T1: return "Operational Stability";
    case VetoDimension::T2: return "Structural Consistency";
    case VetoDimension::T3: return "Result Determinism";
    case VetoDimension::T4: return "System Security";
    case VetoDimension::M1: return "Scientific Integrity";
    case VetoDimension::M2: return "Practice Boundaries";
    case VetoDimension::M3: return "Methodological Baseline";
    case VetoDimension::M4: return "Code Usability";
    }
    return "?";
}

inline int gate_of(VetoDimension d) {
    switch (d) {
    case VetoDimension::T1:
    case VetoDimension::T2:
    case VetoDimension::T3:
    case VetoDimension::T4: return 1;
    default: return 2;
    }
}

enum class Verdict { Pass, Fail, NotApplicable };

inline const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::NotApplicable: return "NOT_APPLICABLE";
    }
    return "?";
}

struct Evidence {
    std::string rule;     // scanner rule id, e.g. "t3.rng_pattern"
    std::string location; // file path or output id
    int line = 0;         // 1-based; 0 when no line applies
    std::string excerpt;  // UTF-8, at most 200 characters
};

struct VetoFinding {
    VetoDimension dimension = VetoDimension::T1;
    Verdict verdict = Verdict::Pass;
    std::vector<Evidence> evidence;
    std::optional<double> crash_rate; // T1 only, in [0,1]
    // Evidence-bearing observations that do not veto (well-formed but
    // unresolvable identifiers under the offline default).
    std::vector<Evidence> warnings;
    std::vector<std::string> notes;
};

struct GateResult {
    int gate = 1;
    std::vector<VetoFinding> findings;
    bool passed = true;
};

inline GateResult make_gate_result(int gate, std::vector<VetoFinding> findings) {
    GateResult g;
    g.gate = gate;
    g.findings = std::move(findings);
    g.passed = true;
    for (const auto& f : g.findings)
        if (f.verdict == Verdict::Fail) g.passed = false;
    return g;
}

} // namespace skillaudit
