#include <catch2/catch_amalgamated.hpp>

#include "skillaudit/config.hpp"
#include "skillaudit/detail/csv.hpp"
#include "skillaudit/detail/sha256.hpp"
#include "skillaudit/detail/strings.hpp"
#include "skillaudit/detail/subprocess.hpp"
#include "skillaudit/errors.hpp"

using namespace skillaudit;

TEST_CASE("defaults carry the audit thresholds", "[config]") {
    auto cfg = Config::defaults();
    CHECK(cfg.get_double("t1.crash_rate_threshold") == 0.20);
    CHECK(cfg.get_list("t3.rng_pattern").size() == 8);
    CHECK(cfg.get("rubric.static.2.1.predicate") == "graceful_degradation");
    CHECK(detail::split_trimmed(cfg.get("rubric.static.ids"), ',').size() == 25);
    CHECK(cfg.get_int("batch.workers") == 4);
    CHECK(cfg.get_double("scoring.static_weight") == 0.4);
    CHECK(cfg.get_double("scoring.dynamic_weight") == 0.6);
}

TEST_CASE("missing keys raise ConfigError, get_or falls back", "[config]") {
    auto cfg = Config::empty();
    CHECK_THROWS_AS(cfg.get("no.such.key"), AuditError);
    try {
        cfg.get_double("no.such.key");
        FAIL("expected throw");
    } catch (const AuditError& e) {
        CHECK(e.code() == ErrorCode::ConfigError);
    }
    CHECK(cfg.get_or("no.such.key", "fallback") == "fallback");
    CHECK_FALSE(cfg.has("no.such.key"));
}

TEST_CASE("merge_text overrides single values and replaces lists", "[config]") {
    auto cfg = Config::defaults();
    double before = cfg.get_double("t1.crash_rate_threshold");
    cfg.merge_text("t1.crash_rate_threshold = 0.5\n", "test");
    CHECK(cfg.get_double("t1.crash_rate_threshold") == 0.5);
    CHECK(before == 0.20);

    cfg.merge_text(
        "t3.rng_pattern = first\n"
        "t3.rng_pattern = second\n",
        "test");
    auto pats = cfg.get_list("t3.rng_pattern");
    REQUIRE(pats.size() == 2);
    CHECK(pats[0] == "first");
    CHECK(pats[1] == "second");
}

TEST_CASE("merge_text tolerates comments and blank lines", "[config]") {
    auto cfg = Config::empty();
    cfg.merge_text(
        "# comment\n"
        "\n"
        "alpha.beta = 7\n"
        "flag.on = true\n",
        "inline");
    CHECK(cfg.get_int("alpha.beta") == 7);
    CHECK(cfg.get_bool("flag.on"));
}

TEST_CASE("csv parser honors quoting and embedded separators", "[csv]") {
    auto rows = detail::parse_csv("a,\"b,c\"\n1,2\n");
    REQUIRE(rows.size() == 2);
    CHECK(rows[0][1] == "b,c");

    auto quoted = detail::parse_csv("x,\"he said \"\"hi\"\"\",z\n");
    REQUIRE(quoted.size() == 1);
    CHECK(quoted[0][1] == "he said \"hi\"");

    auto crlf = detail::parse_csv("p,q\r\n1,2\r\n");
    REQUIRE(crlf.size() == 2);
    CHECK(crlf[0][1] == "q");
    CHECK(crlf[1][0] == "1");
}

TEST_CASE("sha256 matches the published test vector", "[digest]") {
    CHECK(detail::sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(detail::sha256_hex("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("subprocess captures both streams and the exit code", "[subprocess]") {
    auto r = detail::run_process({"/bin/sh", "-c", "echo hi; echo err >&2"}, ".",
                                 {{"PATH", "/usr/bin:/bin"}}, {}, detail::NetIsolation::None);
    CHECK(r.exit_code == 0);
    CHECK(r.stdout_text == "hi\n");
    CHECK(r.stderr_text == "err\n");

    auto bad = detail::run_process({"/bin/sh", "-c", "exit 3"}, ".",
                                   {{"PATH", "/usr/bin:/bin"}}, {}, detail::NetIsolation::None);
    CHECK(bad.exit_code == 3);
}
