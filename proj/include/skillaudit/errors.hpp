#pragma once

#include <stdexcept>
#include <string>

namespace skillaudit {

enum class ErrorCode {
    // manifest / discovery
    EmptyFile,
    MissingFrontmatter,
    MissingRequiredField,
    NoManifest,
    UnreadableFile,
    UnclassifiableMode,
    // gates / harness
    MissingSmokeRuns,
    InsufficientBank,
    SandboxSetupFailure,
    JudgeUnavailable,
    MalformedJudgeResponse,
    // scoring
    WrongCardinality,
    UnknownCriterion,
    OutOfRange,
    // statistics
    DegenerateMatrix,
    LengthMismatch,
    // study harness
    BothAbsent,
    SkillMismatch,
    IncompleteRatings,
    UnknownSkillInReports,
    UnknownDefect,
    // infrastructure
    ConfigError,
    InternalError,
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::EmptyFile: return "EmptyFile";
        case ErrorCode::MissingFrontmatter: return "MissingFrontmatter";
        case ErrorCode::MissingRequiredField: return "MissingRequiredField";
        case ErrorCode::NoManifest: return "NoManifest";
        case ErrorCode::UnreadableFile: return "UnreadableFile";
        case ErrorCode::UnclassifiableMode: return "UnclassifiableMode";
        case ErrorCode::MissingSmokeRuns: return "MissingSmokeRuns";
        case ErrorCode::InsufficientBank: return "InsufficientBank";
        case ErrorCode::SandboxSetupFailure: return "SandboxSetupFailure";
        case ErrorCode::JudgeUnavailable: return "JudgeUnavailable";
        case ErrorCode::MalformedJudgeResponse: return "MalformedJudgeResponse";
        case ErrorCode::WrongCardinality: return "WrongCardinality";
        case ErrorCode::UnknownCriterion: return "UnknownCriterion";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::DegenerateMatrix: return "DegenerateMatrix";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::BothAbsent: return "BothAbsent";
        case ErrorCode::SkillMismatch: return "SkillMismatch";
        case ErrorCode::IncompleteRatings: return "IncompleteRatings";
        case ErrorCode::UnknownSkillInReports: return "UnknownSkillInReports";
        case ErrorCode::UnknownDefect: return "UnknownDefect";
        case ErrorCode::ConfigError: return "ConfigError";
        case ErrorCode::InternalError: return "InternalError";
    }
    return "Unknown";
}

/// Error type thrown across the library. `code()` identifies the failure
/// class; `what()` carries the human-readable detail.
class AuditError : public std::runtime_error {
public:
    AuditError(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + detail),
          code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace skillaudit
