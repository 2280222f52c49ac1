// skillaudit: audit one skill directory, batch-audit a tree, run the
// rater-agreement study over a ratings table, or generate a fixture corpus.
//
// Exit codes: 0 success, 2 input errors, 3 internal errors.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "skillaudit/skillaudit.hpp"

namespace fs = std::filesystem;
using namespace skillaudit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

// Faults in our own machinery or its infrastructure are internal; everything
// else an AuditError can carry traces back to something the caller handed us.
int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::InternalError:
        case ErrorCode::SandboxSetupFailure:
        case ErrorCode::JudgeUnavailable:
        case ErrorCode::MalformedJudgeResponse:
        case ErrorCode::MissingSmokeRuns:
        case ErrorCode::InsufficientBank:
            return kExitInternal;
        default:
            return kExitInput;
    }
}

struct GlobalOpts {
    std::string config_path;
    std::string judge = "rule";
    std::string framework_version = "1.0";
    bool deterministic = false;
    std::uint64_t seed = 0;
};

Config load_config(const GlobalOpts& g) {
    Config cfg = Config::defaults();
    if (!g.config_path.empty()) {
        std::ifstream in(g.config_path);
        if (!in) throw AuditError(ErrorCode::UnreadableFile, "config file: " + g.config_path);
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        cfg.merge_text(text, g.config_path);
    }
    return cfg;
}

std::unique_ptr<OutputJudge> make_judge(const GlobalOpts& g, const Config& cfg) {
    if (g.judge == "remote") return std::make_unique<RemoteJudge>(cfg);
    return std::make_unique<RuleJudge>(cfg);
}

AuditOptions audit_options(const GlobalOpts& g) {
    AuditOptions opts;
    opts.seed = g.seed;
    opts.deterministic = g.deterministic;
    opts.framework_version = g.framework_version;
    return opts;
}

int cmd_audit(const GlobalOpts& g, const std::string& dir, const std::string& out_file,
              bool markdown) {
    if (!fs::is_directory(dir))
        throw AuditError(ErrorCode::UnreadableFile, "not a directory: " + dir);
    Config cfg = load_config(g);
    auto judge = make_judge(g, cfg);
    AuditReport report = audit_skill(dir, *judge, cfg, audit_options(g));
    std::string text = markdown ? emit_markdown(report) : emit_json(report);
    if (out_file.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_file, std::ios::binary);
        if (!out) throw AuditError(ErrorCode::UnreadableFile, "cannot write: " + out_file);
        out << text;
    }
    std::cerr << report.skill_id << ": " << report.disposition << " ("
              << detail::format_stat(report.final_score) << ")\n";
    return kExitOk;
}

int cmd_batch(const GlobalOpts& g, const std::string& root, const std::string& out_dir) {
    if (!fs::is_directory(root))
        throw AuditError(ErrorCode::UnreadableFile, "not a directory: " + root);
    Config cfg = load_config(g);
    BatchResult result = run_batch(
        root, out_dir, [&] { return make_judge(g, cfg); }, cfg, audit_options(g));
    std::cerr << "audited " << result.audited.size() << " skill(s) into " << out_dir << "\n";
    for (const auto& f : result.failures)
        std::cerr << "failed " << f.skill_id << ": " << f.error << "\n";
    return result.failures.empty() ? kExitOk : kExitInput;
}

int cmd_stats(const GlobalOpts& g, const std::string& ratings, const std::string& reports,
              const std::string& out_dir) {
    Config cfg = load_config(g);
    StudyResult result = run_study(ratings, reports, out_dir, cfg);
    std::cerr << "study over " << result.rows.size() << " skill(s): " << result.flagged_count
              << " flagged for optimization, " << result.written.size() << " files in "
              << out_dir << "\n";
    return kExitOk;
}

int cmd_gen_corpus(const std::string& spec_file, const std::string& out_dir,
                   std::uint64_t seed) {
    CorpusResult result = generate_fixture_corpus(spec_file, out_dir, seed);
    std::cerr << "generated " << result.items.size() << " skill(s) under " << result.root
              << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pre-deployment audit for medical-research agent skills"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--config", g.config_path, "Config file merged over built-in defaults");
    app.add_option("--judge", g.judge, "Output judge backend")
        ->check(CLI::IsMember({"rule", "remote"}));
    app.add_option("--framework-version", g.framework_version, "Scoring framework version")
        ->check(CLI::IsMember({"1.0", "1.1.0"}));
    app.add_flag("--deterministic", g.deterministic,
                 "Suppress wall-clock fields so reports are byte-reproducible");
    app.add_option("--seed", g.seed, "Seed for generated test inputs");

    std::string audit_dir, audit_out;
    bool audit_md = false;
    auto* audit = app.add_subcommand("audit", "Audit one skill directory, print the report");
    audit->add_option("dir", audit_dir, "Skill directory (contains SKILL.md)")->required();
    audit->add_option("--out", audit_out, "Write the report here instead of stdout");
    audit->add_flag("--markdown", audit_md, "Emit the markdown summary instead of JSON");

    std::string batch_root, batch_out;
    auto* batch = app.add_subcommand("batch", "Audit every skill under a root directory");
    batch->add_option("root", batch_root, "Directory of skill directories")->required();
    batch->add_option("--out", batch_out, "Output directory for per-skill reports")
        ->required();

    std::string stats_ratings, stats_reports, stats_out;
    auto* stats = app.add_subcommand("stats", "Rater agreement study over a ratings table");
    stats->add_option("--ratings", stats_ratings, "Ratings CSV (two raters per skill)")
        ->required();
    stats->add_option("--reports", stats_reports, "Directory of per-skill audit reports")
        ->required();
    stats->add_option("--out", stats_out, "Output directory for study tables")->required();

    std::string corpus_spec, corpus_out = "corpus";
    std::uint64_t corpus_seed = 0;
    auto* gen = app.add_subcommand("gen-corpus", "Generate a labeled fixture corpus");
    gen->add_option("--spec", corpus_spec, "Corpus spec file")->required();
    gen->add_option("--seed", corpus_seed, "Generator seed")->required();
    gen->add_option("--out", corpus_out, "Corpus output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitInput;
    }

    try {
        if (*audit) return cmd_audit(g, audit_dir, audit_out, audit_md);
        if (*batch) return cmd_batch(g, batch_root, batch_out);
        if (*stats) return cmd_stats(g, stats_ratings, stats_reports, stats_out);
        if (*gen) return cmd_gen_corpus(corpus_spec, corpus_out, corpus_seed);
    } catch (const AuditError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInternal;  // unreachable: a subcommand is required
}
