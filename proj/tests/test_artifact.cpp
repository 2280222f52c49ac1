#include <catch2/catch_amalgamated.hpp>

#include "skillaudit/artifact.hpp"
#include "skillaudit/errors.hpp"
#include "testutil.hpp"

using namespace skillaudit;
using testutil::TempDir;
using testutil::write_file;

static const char* kManifest =
    "---\n"
    "name: go-kegg-enrichment\n"
    "description: Pathway enrichment summaries for gene lists\n"
    "inputs: genes, organism\n"
    "outputs: summary(md), table(csv)\n"
    "---\n"
    "# Use\nRun it.\n";

TEST_CASE("manifest parse and emit round-trip", "[manifest]") {
    auto m = parse_manifest(kManifest);
    CHECK(m.name == "go-kegg-enrichment");
    REQUIRE(m.declared_outputs.size() == 2);
    CHECK(m.declared_outputs[0].name == "summary");
    CHECK(m.declared_outputs[1].type == "csv");
    REQUIRE(m.declared_inputs.size() == 2);
    CHECK(m.declared_inputs[1] == "organism");

    auto m2 = parse_manifest(emit_manifest(m));
    CHECK(m2.frontmatter_raw == m.frontmatter_raw);
    CHECK(m2.body == m.body);
}

TEST_CASE("manifest rejections carry the failing condition", "[manifest]") {
    auto code_of = [](const std::string& text) {
        try {
            parse_manifest(text);
        } catch (const AuditError& e) {
            return e.code();
        }
        return ErrorCode::InternalError;
    };
    CHECK(code_of("") == ErrorCode::EmptyFile);
    CHECK(code_of("just a body\n") == ErrorCode::MissingFrontmatter);
    CHECK(code_of("---\nname: x\n---\nbody\n") == ErrorCode::MissingRequiredField);
    CHECK(code_of("---\ndescription: d\n---\nbody\n") == ErrorCode::MissingRequiredField);
}

TEST_CASE("category parsing accepts ordinals and names", "[category]") {
    CHECK(parse_category("1") == Category::EvidenceInsight);
    CHECK(parse_category("3") == Category::DataAnalysis);
    CHECK(parse_category("evidence_insight") == Category::EvidenceInsight);
    CHECK(parse_category("Academic Writing") == Category::AcademicWriting);
    CHECK(parse_category("other") == Category::Other);
    CHECK(category_name(Category::AcademicWriting) == std::string("Academic Writing"));
    CHECK_FALSE(parse_category("6").has_value());
    CHECK_FALSE(parse_category("unheard-of").has_value());
}

TEST_CASE("execution mode classification covers all four shapes", "[mode]") {
    TempDir tmp("artifact-mode");
    auto cfg = Config::defaults();

    SECTION("no scripts, no endpoints: prompt-only") {
        write_file(tmp.path / "a" / "SKILL.md", kManifest);
        auto art = discover_skill(tmp.path / "a", Category::DataAnalysis, cfg);
        CHECK(classify_mode(art) == ExecutionMode::A);
    }
    SECTION("scripts only: scripted") {
        write_file(tmp.path / "b" / "SKILL.md", kManifest);
        write_file(tmp.path / "b" / "scripts" / "run.py", "print('x')\n");
        auto art = discover_skill(tmp.path / "b", Category::DataAnalysis, cfg);
        REQUIRE(art.script_files.size() == 1);
        CHECK(art.script_files[0].dialect == "python");
        CHECK(classify_mode(art) == ExecutionMode::B);
    }
    SECTION("scripts plus endpoints: hybrid") {
        std::string with_api =
            "---\n"
            "name: hybrid\n"
            "description: Queries a registry API and post-processes locally\n"
            "api_endpoints: https://api.example.org/v1\n"
            "inputs: q\n"
            "outputs: table(csv)\n"
            "---\nBody.\n";
        write_file(tmp.path / "d" / "SKILL.md", with_api);
        write_file(tmp.path / "d" / "scripts" / "run.py", "print('x')\n");
        auto art = discover_skill(tmp.path / "d", Category::DataAnalysis, cfg);
        CHECK(classify_mode(art) == ExecutionMode::D);
    }
    SECTION("endpoints without scripts cannot be classified") {
        std::string api_only =
            "---\n"
            "name: remote-only\n"
            "description: Declares an API but ships nothing to run\n"
            "api_endpoints: https://api.example.org/v1\n"
            "inputs: q\n"
            "outputs: table(csv)\n"
            "---\nBody.\n";
        write_file(tmp.path / "u" / "SKILL.md", api_only);
        auto art = discover_skill(tmp.path / "u", Category::DataAnalysis, cfg);
        try {
            classify_mode(art);
            FAIL("expected throw");
        } catch (const AuditError& e) {
            CHECK(e.code() == ErrorCode::UnclassifiableMode);
        }
    }
}

TEST_CASE("complexity tiers follow refs, words, and branching depth", "[complexity]") {
    TempDir tmp("artifact-tier");
    auto cfg = Config::defaults();

    write_file(tmp.path / "s" / "SKILL.md", kManifest);
    auto simple = discover_skill(tmp.path / "s", Category::DataAnalysis, cfg);
    CHECK(estimate_complexity(simple, cfg) == ComplexityTier::Simple);

    // five bundled reference files push the artifact into the complex tier
    write_file(tmp.path / "c" / "SKILL.md",
               "---\nname: big\ndescription: Many-step pipeline\ninputs: x\noutputs: y(md)\n---\n"
               "# Big\nConsult the bundled references.\n");
    for (int i = 0; i < 5; ++i)
        write_file(tmp.path / "c" / "references" / ("note" + std::to_string(i) + ".md"),
                   "reference\n");
    auto complex_art = discover_skill(tmp.path / "c", Category::DataAnalysis, cfg);
    CHECK(complex_art.reference_files.size() == 5);
    CHECK(estimate_complexity(complex_art, cfg) == ComplexityTier::Complex);

    CHECK(dynamic_test_count(ComplexityTier::Simple) == 3);
    CHECK(dynamic_test_count(ComplexityTier::Moderate) == 5);
    CHECK(dynamic_test_count(ComplexityTier::Complex) == 7);
}

TEST_CASE("branching depth counts conditional instruction lines", "[complexity]") {
    auto cfg = Config::defaults();
    CHECK(branching_depth("no conditions at all", cfg) == 0);
    CHECK(branching_depth("- if A then do X\n", cfg) == 1);
    CHECK(branching_depth("- if A:\n  - if B then out\n", cfg) == 2);
    CHECK(branching_depth("act depending on the result\n", cfg) == 1);
}

TEST_CASE("discovery without a manifest is NoManifest", "[discover]") {
    TempDir tmp("artifact-nomanifest");
    std::filesystem::create_directories(tmp.path / "empty");
    try {
        discover_skill(tmp.path / "empty", Category::Other, Config::defaults());
        FAIL("expected throw");
    } catch (const AuditError& e) {
        CHECK(e.code() == ErrorCode::NoManifest);
    }
}
