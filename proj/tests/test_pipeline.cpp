#include <catch2/catch_amalgamated.hpp>

#include "skillaudit/pipeline.hpp"
#include "testutil.hpp"

using namespace skillaudit;
using testutil::TempDir;
using testutil::write_file;

TEST_CASE("prompt-only audit passes both gates with generated transcripts", "[pipeline]") {
    TempDir tmp("pl-a");
    auto cfg = Config::defaults();
    testutil::write_prompt_skill(tmp.path / "modea");

    RuleJudge judge(cfg);
    AuditOptions opts;
    opts.seed = 42;
    opts.deterministic = true;

    AuditReport r = audit_skill(tmp.path / "modea", judge, cfg, opts);
    CHECK(r.gate1.passed);
    CHECK(r.gate2.passed);
    CHECK(r.mode == "A");
    CHECK(r.generated_transcripts);
    CHECK(r.dynamic_test_count == 5);
    CHECK(r.executions.size() == 5);
    CHECK(r.dynamic_scorecards.size() == 5);
    REQUIRE(r.s_static.has_value());
    REQUIRE(r.d_bar.has_value());
    CHECK(std::fabs(r.final_score_exact - (0.4 * *r.s_static + 0.6 * *r.d_bar)) < 1e-9);
    CHECK(r.disposition != "Reject");

    SECTION("same seed reproduces the report byte for byte") {
        AuditReport again = audit_skill(tmp.path / "modea", judge, cfg, opts);
        CHECK(emit_json(again) == emit_json(r));
    }
    SECTION("different seed may select different bank inputs but stays valid") {
        AuditOptions other = opts;
        other.seed = 7;
        AuditReport r2 = audit_skill(tmp.path / "modea", judge, cfg, other);
        CHECK(r2.executions.size() == 5);
        CHECK(r2.gate1.passed);
    }
}

TEST_CASE("scripted audit executes the entrypoint in isolation", "[pipeline]") {
    TempDir tmp("pl-b");
    auto cfg = Config::defaults();
    testutil::write_scripted_skill(tmp.path / "modeb");

    RuleJudge judge(cfg);
    AuditOptions opts;
    opts.seed = 42;
    opts.deterministic = true;

    AuditReport r = audit_skill(tmp.path / "modeb", judge, cfg, opts);
    CHECK(r.mode == "B");
    CHECK(r.gate1.passed);
    CHECK(r.gate2.passed);
    REQUIRE_FALSE(r.executions.empty());
    for (const auto& e : r.executions) {
        CHECK_FALSE(e.crashed);
        CHECK((e.isolation == "netns" || e.isolation == "env-blackhole"));
        REQUIRE(e.produced_files.size() == 1);
        CHECK(e.produced_files[0].path == "report.json");
    }
    CHECK_FALSE(r.assertions.empty());

    AuditReport again = audit_skill(tmp.path / "modeb", judge, cfg, opts);
    CHECK(emit_json(again) == emit_json(r));
}

TEST_CASE("broken manifest becomes a structural reject with null scores", "[pipeline]") {
    TempDir tmp("pl-bad");
    auto cfg = Config::defaults();
    write_file(tmp.path / "bad" / "SKILL.md", "no frontmatter here\n");

    RuleJudge judge(cfg);
    AuditOptions opts;
    opts.deterministic = true;

    AuditReport r = audit_skill(tmp.path / "bad", judge, cfg, opts);
    CHECK_FALSE(r.gate1.passed);
    CHECK(r.vetoed);
    CHECK(r.disposition == "Reject");
    CHECK(r.final_score == 0.0);
    CHECK_FALSE(r.s_static.has_value());
    CHECK_FALSE(r.d_bar.has_value());
    CHECK_FALSE(r.guidance.empty());
    CHECK_FALSE(r.notes.empty());
}

TEST_CASE("gate-one veto zeroes the final score", "[pipeline]") {
    TempDir tmp("pl-g1");
    auto cfg = Config::defaults();
    write_file(tmp.path / "evil" / "SKILL.md",
               "---\nname: evil\ndescription: d\ninputs: i\noutputs: o(md)\n---\n"
               "Run scripts/run.py for results.\n");
    write_file(tmp.path / "evil" / "scripts" / "run.py", "expr = input()\nprint(eval(expr))\n");

    RuleJudge judge(cfg);
    AuditOptions opts;
    opts.deterministic = true;

    AuditReport r = audit_skill(tmp.path / "evil", judge, cfg, opts);
    CHECK_FALSE(r.gate1.passed);
    CHECK(r.vetoed);
    CHECK(r.disposition == "Reject");
    CHECK(r.final_score == 0.0);
    CHECK_FALSE(r.s_static.has_value());
    CHECK_FALSE(r.d_bar.has_value());
}

TEST_CASE("gate-two veto keeps the numeric scores for inspection", "[pipeline]") {
    TempDir tmp("pl-g2");
    auto cfg = Config::defaults();
    // the bundled identifier list seeds the generated citation; a malformed
    // doi there surfaces as an integrity veto on the transcript
    testutil::write_prompt_skill(tmp.path / "bare", "registry-mock");
    write_file(tmp.path / "bare" / "identifiers.txt", "10.0/fake\n");

    RuleJudge judge(cfg);
    AuditOptions opts;
    opts.seed = 42;
    opts.deterministic = true;

    AuditReport r = audit_skill(tmp.path / "bare", judge, cfg, opts);
    CHECK(r.gate1.passed);
    CHECK_FALSE(r.gate2.passed);
    CHECK(r.vetoed);
    CHECK(r.disposition == "Reject");
    REQUIRE(r.s_static.has_value());
    REQUIRE(r.d_bar.has_value());
    CHECK(r.final_score_exact > 0.0);
}

TEST_CASE("category five skips the research gate", "[pipeline]") {
    TempDir tmp("pl-cat5");
    auto cfg = Config::defaults();
    write_file(tmp.path / "misc" / "SKILL.md",
               "---\n"
               "name: citation-formatter\n"
               "description: Reformats a reference list into a requested citation style for "
               "manuscripts.\n"
               "category: 5\n"
               "inputs: references\n"
               "outputs: formatted(md)\n"
               "---\n"
               "# Citation formatter\n\n"
               "Intended purpose and scope: style conversion only, research use.\n\n"
               "## Usage\n\nExample: paste references; steps: parse, normalize, emit.\n\n"
               "Resource bounds: instant. Install: none.\n");

    RuleJudge judge(cfg);
    AuditOptions opts;
    opts.seed = 42;
    opts.deterministic = true;

    AuditReport r = audit_skill(tmp.path / "misc", judge, cfg, opts);
    CHECK(r.gate1.passed);
    CHECK(r.gate2.passed);
    for (const auto& f : r.gate2.findings) CHECK(f.verdict == Verdict::NotApplicable);
}

TEST_CASE("category override sidesteps the manifest declaration", "[pipeline]") {
    TempDir tmp("pl-override");
    auto cfg = Config::defaults();
    testutil::write_prompt_skill(tmp.path / "s");

    RuleJudge judge(cfg);
    AuditOptions opts;
    opts.seed = 42;
    opts.deterministic = true;
    opts.category = Category::Other;

    AuditReport r = audit_skill(tmp.path / "s", judge, cfg, opts);
    CHECK(r.category == 5);
    for (const auto& f : r.gate2.findings) CHECK(f.verdict == Verdict::NotApplicable);
}

TEST_CASE("batch audits every skill directory under a root", "[pipeline][batch]") {
    TempDir tmp("pl-batch");
    auto cfg = Config::defaults();
    testutil::write_prompt_skill(tmp.path / "in" / "alpha");
    testutil::write_scripted_skill(tmp.path / "in" / "beta");
    write_file(tmp.path / "in" / "gamma" / "SKILL.md", "no frontmatter\n");
    write_file(tmp.path / "in" / "not-a-skill" / "README.md", "skip me\n");

    AuditOptions opts;
    opts.seed = 42;
    opts.deterministic = true;

    auto out1 = tmp.path / "out1";
    auto res = run_batch(tmp.path / "in", out1,
                         [&] { return std::make_unique<RuleJudge>(cfg); }, cfg, opts);
    CHECK(res.audited.size() == 3);
    CHECK(res.failures.empty());
    for (const char* id : {"alpha", "beta", "gamma"}) {
        CHECK(std::filesystem::exists(out1 / (std::string(id) + ".json")));
        CHECK(std::filesystem::exists(out1 / (std::string(id) + ".md")));
    }
    CHECK_FALSE(std::filesystem::exists(out1 / "not-a-skill.json"));

    SECTION("parallelism does not change the bytes") {
        auto cfg1 = cfg;
        cfg1.merge_text("batch.workers = 1\n", "test");
        auto out2 = tmp.path / "out2";
        run_batch(tmp.path / "in", out2, [&] { return std::make_unique<RuleJudge>(cfg1); },
                  cfg1, opts);
        for (const char* id : {"alpha", "beta", "gamma"}) {
            auto f = std::string(id) + ".json";
            CHECK(testutil::read_file(out1 / f) == testutil::read_file(out2 / f));
        }
    }
}

TEST_CASE("version switch changes the fault-tolerance criterion for data skills",
          "[pipeline][rubric]") {
    TempDir tmp("pl-version");
    auto cfg = Config::defaults();
    // hard-stop validation, no try/except: zero under 1.0, full under 1.1.0
    testutil::write_scripted_skill(tmp.path / "s", 3);

    RuleJudge judge(cfg);
    AuditOptions v10;
    v10.seed = 42;
    v10.deterministic = true;
    v10.framework_version = "1.0";
    AuditOptions v110 = v10;
    v110.framework_version = "1.1.0";

    auto points_21 = [](const AuditReport& r) {
        REQUIRE(r.static_scorecard.has_value());
        for (const auto& e : r.static_scorecard->entries)
            if (e.id == "2.1") return e.points;
        FAIL("criterion 2.1 missing");
        return -1.0;
    };

    AuditReport r10 = audit_skill(tmp.path / "s", judge, cfg, v10);
    AuditReport r110 = audit_skill(tmp.path / "s", judge, cfg, v110);
    CHECK(points_21(r10) == 0.0);
    CHECK(points_21(r110) > 0.0);
    CHECK(r110.framework == "skill-auditor@1.1.0");
    CHECK_FALSE(r110.applied_override_ids.empty());
    CHECK(r10.applied_override_ids.empty());
}
