#include <catch2/catch_amalgamated.hpp>

#include <atomic>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "skillaudit/judge_remote.hpp"
#include "skillaudit/rubric.hpp"
#include "testutil.hpp"

using namespace skillaudit;
using testutil::TempDir;

namespace {

// Loopback scoring service. The handler is swappable per test section.
struct JudgeServer {
    httplib::Server server;
    std::thread thread;
    int port = 0;

    explicit JudgeServer(httplib::Server::Handler handler) {
        server.Post("/judge", std::move(handler));
        port = server.bind_to_any_port("127.0.0.1");
        REQUIRE(port > 0);
        thread = std::thread([this] { server.listen_after_bind(); });
        server.wait_until_ready();
    }
    ~JudgeServer() {
        server.stop();
        thread.join();
    }

    Config config(double timeout = 5.0) const {
        Config cfg = Config::defaults();
        cfg.merge_text("judge.remote.endpoint = http://127.0.0.1:" + std::to_string(port) +
                           "/judge\n"
                           "judge.remote.timeout_seconds = " + std::to_string(timeout) + "\n",
                       "test");
        return cfg;
    }
};

// grants half the available points for every rubric item and echoes requests
void half_credit_handler(const httplib::Request& req, httplib::Response& res) {
    auto body = nlohmann::json::parse(req.body);
    nlohmann::json scores = nlohmann::json::object();
    nlohmann::json rationales = nlohmann::json::object();
    for (const auto& item : body.at("rubric")) {
        auto id = item.at("id").get<std::string>();
        scores[id] = item.at("max").get<double>() / 2.0;
        rationales[id] = "half credit";
    }
    res.set_content(nlohmann::json{{"scores", scores}, {"rationales", rationales}}.dump(),
                    "application/json");
}

SkillArtifact loopback_artifact(const TempDir& tmp) {
    testutil::write_prompt_skill(tmp.path / "s");
    return discover_skill(tmp.path / "s", Category::EvidenceInsight, Config::defaults());
}

}  // namespace

TEST_CASE("remote judge scores a full static rubric over the wire", "[remote]") {
    TempDir tmp("rj-static");
    JudgeServer srv(half_credit_handler);
    auto cfg = srv.config();
    RemoteJudge judge(cfg);
    auto art = loopback_artifact(tmp);
    auto rubric = apply_scene_overrides(load_rubric(cfg), {}, art.category, ExecutionMode::A);

    auto entries = judge.score_static(art, rubric);
    REQUIRE(entries.size() == rubric.static_criteria.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        CHECK(entries[i].id == rubric.static_criteria[i].id);
        CHECK(entries[i].points == rubric.static_criteria[i].weight / 2.0);
        CHECK(entries[i].rationale == "half credit");
    }
}

TEST_CASE("remote judge builds dynamic scorecards from wire scores", "[remote]") {
    TempDir tmp("rj-dyn");
    JudgeServer srv(half_credit_handler);
    auto cfg = srv.config();
    RemoteJudge judge(cfg);
    auto art = loopback_artifact(tmp);
    auto rubric = apply_scene_overrides(load_rubric(cfg), {}, art.category, ExecutionMode::A);

    ExecutionRecord rec;
    rec.input_id = "q1";
    rec.transcript = "text";
    auto card = judge.judge_output(rec, rubric, art);
    CHECK(card.input_id == "q1");
    CHECK(card.layer1_points == Catch::Approx(20.0));
    CHECK(card.layer2_points == Catch::Approx(30.0));
    CHECK(card.total == Catch::Approx(50.0));
}

TEST_CASE("remote judge relays generated transcripts verbatim", "[remote]") {
    TempDir tmp("rj-gen");
    JudgeServer srv([](const httplib::Request& req, httplib::Response& res) {
        auto body = nlohmann::json::parse(req.body);
        std::string text = "transcript for " + body.at("input_id").get<std::string>();
        res.set_content(nlohmann::json{{"transcript", text}}.dump(), "application/json");
    });
    RemoteJudge judge(srv.config());
    auto art = loopback_artifact(tmp);
    TestInput input;
    input.input_id = "q7";
    input.prompt = "do the thing";
    CHECK(judge.generate_transcript(art, input) == "transcript for q7");
}

TEST_CASE("contract violations raise MalformedJudgeResponse", "[remote]") {
    TempDir tmp("rj-malformed");
    auto art = loopback_artifact(tmp);

    SECTION("missing criterion score") {
        JudgeServer srv([](const httplib::Request&, httplib::Response& res) {
            res.set_content(R"({"scores": {}})", "application/json");
        });
        RemoteJudge judge(srv.config());
        auto rubric = apply_scene_overrides(load_rubric(srv.config()), {}, art.category,
                                            ExecutionMode::A);
        try {
            judge.score_static(art, rubric);
            FAIL("expected throw");
        } catch (const AuditError& e) {
            CHECK(e.code() == ErrorCode::MalformedJudgeResponse);
        }
    }
    SECTION("score outside the declared maximum") {
        JudgeServer srv([](const httplib::Request& req, httplib::Response& res) {
            auto body = nlohmann::json::parse(req.body);
            nlohmann::json scores = nlohmann::json::object();
            for (const auto& item : body.at("rubric"))
                scores[item.at("id").get<std::string>()] = 1e6;
            res.set_content(nlohmann::json{{"scores", scores}}.dump(), "application/json");
        });
        RemoteJudge judge(srv.config());
        auto rubric = apply_scene_overrides(load_rubric(srv.config()), {}, art.category,
                                            ExecutionMode::A);
        CHECK_THROWS_AS(judge.score_static(art, rubric), AuditError);
    }
    SECTION("reply is not json") {
        JudgeServer srv([](const httplib::Request&, httplib::Response& res) {
            res.set_content("definitely not json", "text/plain");
        });
        RemoteJudge judge(srv.config());
        TestInput input;
        input.input_id = "q";
        try {
            judge.generate_transcript(art, input);
            FAIL("expected throw");
        } catch (const AuditError& e) {
            CHECK(e.code() == ErrorCode::MalformedJudgeResponse);
        }
    }
}

TEST_CASE("transport failures retry once then raise JudgeUnavailable", "[remote]") {
    TempDir tmp("rj-unavailable");
    auto art = loopback_artifact(tmp);

    SECTION("http error status") {
        std::atomic<int> calls{0};
        JudgeServer srv([&](const httplib::Request&, httplib::Response& res) {
            ++calls;
            res.status = 500;
        });
        RemoteJudge judge(srv.config());
        TestInput input;
        input.input_id = "q";
        try {
            judge.generate_transcript(art, input);
            FAIL("expected throw");
        } catch (const AuditError& e) {
            CHECK(e.code() == ErrorCode::JudgeUnavailable);
        }
        CHECK(calls == 2);
    }
    SECTION("nothing listening") {
        Config cfg = Config::defaults();
        cfg.merge_text(
            "judge.remote.endpoint = http://127.0.0.1:1/judge\n"
            "judge.remote.timeout_seconds = 0.2\n",
            "test");
        RemoteJudge judge(cfg);
        TestInput input;
        input.input_id = "q";
        try {
            judge.generate_transcript(art, input);
            FAIL("expected throw");
        } catch (const AuditError& e) {
            CHECK(e.code() == ErrorCode::JudgeUnavailable);
        }
    }
}

TEST_CASE("bearer token from the environment reaches the wire", "[remote]") {
    TempDir tmp("rj-token");
    auto art = loopback_artifact(tmp);
    std::string seen_auth;
    JudgeServer srv([&](const httplib::Request& req, httplib::Response& res) {
        if (req.has_header("Authorization")) seen_auth = req.get_header_value("Authorization");
        res.set_content(R"({"transcript": "ok"})", "application/json");
    });
    setenv("SKILLAUDIT_JUDGE_TOKEN", "sekrit", 1);
    RemoteJudge judge(srv.config());
    unsetenv("SKILLAUDIT_JUDGE_TOKEN");
    TestInput input;
    input.input_id = "q";
    judge.generate_transcript(art, input);
    CHECK(seen_auth == "Bearer sekrit");
}
