#include <catch2/catch_amalgamated.hpp>

#include "skillaudit/research_gate.hpp"
#include "testutil.hpp"

using namespace skillaudit;
using testutil::TempDir;
using testutil::write_file;

namespace {

// artifact with no bundled references: identifier existence is unverifiable
SkillArtifact bare_artifact(TempDir& tmp, const std::string& name) {
    write_file(tmp.path / name / "SKILL.md",
               "---\nname: " + name + "\ndescription: d\ninputs: i\noutputs: o(md)\n---\nBody.\n");
    return discover_skill(tmp.path / name, Category::EvidenceInsight, Config::defaults());
}

ExecutionRecord rec_with(const std::string& transcript, const std::string& id = "q1") {
    ExecutionRecord r;
    r.input_id = id;
    r.transcript = transcript;
    return r;
}

const std::string kDisclaimer = "\nFor research purposes only, not a substitute for medical advice.\n";

}  // namespace

TEST_CASE("integrity scan separates malformed from unverifiable identifiers", "[gate2][m1]") {
    TempDir tmp("rg-m1");
    auto cfg = Config::defaults();
    auto art = bare_artifact(tmp, "m1");

    SECTION("well-formed doi offline: warning, not veto") {
        auto f = check_m1({rec_with("See doi: 10.1234/audit.2024.0001" + kDisclaimer)}, art, cfg);
        CHECK(f.verdict == Verdict::Pass);
        CHECK(f.evidence.empty());
        REQUIRE_FALSE(f.warnings.empty());
        CHECK(f.warnings[0].rule == "m1.unverified_identifier");
    }
    SECTION("malformed doi vetoes") {
        auto f = check_m1({rec_with("Source: doi: 10.0/fake" + kDisclaimer)}, art, cfg);
        CHECK(f.verdict == Verdict::Fail);
        REQUIRE_FALSE(f.evidence.empty());
        CHECK(f.evidence[0].rule == "m1.invalid_identifier");
    }
    SECTION("identifier absent from the bundled reference list vetoes") {
        write_file(tmp.path / "m1" / "identifiers.txt", "10.1234/audit.2024.0001\n");
        auto art2 = discover_skill(tmp.path / "m1", Category::EvidenceInsight, cfg);
        auto ok = check_m1({rec_with("doi: 10.1234/audit.2024.0001")}, art2, cfg);
        CHECK(ok.verdict == Verdict::Pass);
        auto bad = check_m1({rec_with("doi: 10.9999/not.in.bundle")}, art2, cfg);
        CHECK(bad.verdict == Verdict::Fail);
        REQUIRE_FALSE(bad.evidence.empty());
        CHECK(bad.evidence[0].rule == "m1.unknown_identifier");
    }
    SECTION("impossible p-values vetoed, boundary p=1 tolerated") {
        auto f = check_m1({rec_with("effect with p = 0.000 overall\n")}, art, cfg);
        CHECK(f.verdict == Verdict::Fail);
        REQUIRE_FALSE(f.evidence.empty());
        CHECK(f.evidence[0].rule == "m1.impossible_pvalue");

        auto f2 = check_m1({rec_with("null result, p = 1.0\n")}, art, cfg);
        CHECK(f2.verdict == Verdict::Pass);
        auto f3 = check_m1({rec_with("strong, p = 1.7\n")}, art, cfg);
        CHECK(f3.verdict == Verdict::Fail);
    }
    SECTION("prose and symbolic sample sizes must overlap") {
        auto f = check_m1({rec_with("sample size of 120 patients (n = 90)\n")}, art, cfg);
        CHECK(f.verdict == Verdict::Fail);
        REQUIRE_FALSE(f.evidence.empty());
        CHECK(f.evidence[0].rule == "m1.sample_size_mismatch");

        auto ok = check_m1({rec_with("sample size of 120 patients (n = 120)\n")}, art, cfg);
        CHECK(ok.verdict == Verdict::Pass);
    }
}

TEST_CASE("overreach scan keys on diagnosis language and missing disclaimers", "[gate2][m2]") {
    auto cfg = Config::defaults();

    SECTION("diagnostic claim vetoes in any category") {
        auto f = check_m2({rec_with("The patient has pneumonia; start antibiotics." + kDisclaimer)},
                          Category::EvidenceInsight, cfg);
        CHECK(f.verdict == Verdict::Fail);
        REQUIRE_FALSE(f.evidence.empty());
        CHECK(f.evidence[0].rule == "m2.diagnostic_claim");
    }
    SECTION("disclaimer required through category four, waived for five") {
        auto plain = rec_with("A neutral methods summary with no claims.\n");
        for (int c = 1; c <= 4; ++c) {
            auto f = check_m2({plain}, *parse_category(std::to_string(c)), cfg);
            CHECK(f.verdict == Verdict::Fail);
            REQUIRE_FALSE(f.evidence.empty());
            CHECK(f.evidence[0].rule == "m2.missing_disclaimer");
        }
        auto f5 = check_m2({plain}, Category::Other, cfg);
        CHECK(f5.verdict == Verdict::Pass);
    }
    SECTION("disclaimer satisfies the requirement") {
        auto f = check_m2({rec_with("Summary of methods." + kDisclaimer)},
                          Category::EvidenceInsight, cfg);
        CHECK(f.verdict == Verdict::Pass);
    }
}

TEST_CASE("causal language over correlational evidence is vetoed unless hedged", "[gate2][m3]") {
    auto cfg = Config::defaults();

    auto bad = rec_with(
        "The exposure is associated with the outcome (r = 0.41).\n"
        "Therefore the exposure causes the outcome.\n");
    auto f = check_m3({bad}, cfg);
    CHECK(f.verdict == Verdict::Fail);
    REQUIRE_FALSE(f.evidence.empty());
    CHECK(f.evidence[0].rule == "m3.causal_from_correlational");

    auto hedged = rec_with(
        "The exposure is associated with the outcome (r = 0.41).\n"
        "This may suggest the exposure causes the outcome, but confounding is possible.\n");
    CHECK(check_m3({hedged}, cfg).verdict == Verdict::Pass);

    auto causal_only = rec_with("Randomization shows the drug causes recovery.\n");
    CHECK(check_m3({causal_only}, cfg).verdict == Verdict::Pass);
}

TEST_CASE("generated code is validated for delimiters and imports", "[gate2][m4]") {
    TempDir tmp("rg-m4");
    auto cfg = Config::defaults();
    auto art = bare_artifact(tmp, "m4");

    SECTION("balanced stdlib-only block passes") {
        auto f = check_m4({rec_with("```python\nimport json\nprint(json.dumps({'a': 1}))\n```\n")},
                          Category::DataAnalysis, art, cfg);
        CHECK(f.verdict == Verdict::Pass);
    }
    SECTION("unbalanced delimiters veto") {
        auto f = check_m4({rec_with("```python\nprint(json.dumps({'a': 1)\n```\n")},
                          Category::DataAnalysis, art, cfg);
        CHECK(f.verdict == Verdict::Fail);
        REQUIRE_FALSE(f.evidence.empty());
        CHECK(f.evidence[0].rule == "m4.syntax_error");
    }
    SECTION("undeclared third-party import vetoes; declared one passes") {
        auto nump = rec_with("```python\nimport numpy as np\nprint(np.zeros(3))\n```\n");
        auto f = check_m4({nump}, Category::DataAnalysis, art, cfg);
        CHECK(f.verdict == Verdict::Fail);
        REQUIRE_FALSE(f.evidence.empty());
        CHECK(f.evidence[0].rule == "m4.undeclared_import");

        write_file(tmp.path / "m4" / "requirements.txt", "numpy>=1.20\n");
        auto art2 = discover_skill(tmp.path / "m4", Category::EvidenceInsight, cfg);
        CHECK(check_m4({nump}, Category::DataAnalysis, art2, cfg).verdict == Verdict::Pass);
    }
    SECTION("no code at all: advisory for text categories, pass elsewhere") {
        auto plain = rec_with("Prose only.\n");
        auto f1 = check_m4({plain}, Category::EvidenceInsight, art, cfg);
        CHECK(f1.verdict == Verdict::NotApplicable);
        auto f4 = check_m4({plain}, Category::AcademicWriting, art, cfg);
        CHECK(f4.verdict == Verdict::NotApplicable);
        auto f3 = check_m4({plain}, Category::DataAnalysis, art, cfg);
        CHECK(f3.verdict == Verdict::Pass);
    }
}

TEST_CASE("category five bypasses the research gate entirely", "[gate2]") {
    TempDir tmp("rg-bypass");
    auto cfg = Config::defaults();
    auto art = bare_artifact(tmp, "g2");

    // this transcript would veto M1, M2, and M3 in categories 1-4
    auto toxic = rec_with(
        "Source: doi: 10.0/fake. The biomarker is associated with relapse, p = 0.000.\n"
        "Therefore the biomarker causes relapse. The patient has early-stage disease.\n");

    auto g_other = run_gate2({toxic}, Category::Other, art, cfg);
    CHECK(g_other.passed);
    for (const auto& f : g_other.findings) CHECK(f.verdict == Verdict::NotApplicable);

    auto g_one = run_gate2({toxic}, Category::EvidenceInsight, art, cfg);
    CHECK_FALSE(g_one.passed);
}

TEST_CASE("research gate findings arrive in dimension order", "[gate2]") {
    TempDir tmp("rg-order");
    auto cfg = Config::defaults();
    auto art = bare_artifact(tmp, "ord");
    auto g = run_gate2({rec_with("Neutral text." + kDisclaimer)}, Category::EvidenceInsight, art,
                       cfg);
    REQUIRE(g.findings.size() == 4);
    CHECK(g.findings[0].dimension == VetoDimension::M1);
    CHECK(g.findings[1].dimension == VetoDimension::M2);
    CHECK(g.findings[2].dimension == VetoDimension::M3);
    CHECK(g.findings[3].dimension == VetoDimension::M4);
}
