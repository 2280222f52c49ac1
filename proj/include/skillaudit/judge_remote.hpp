#pragma once

#include <cstdlib>
#include <memory>
#include <semaphore>
#include <string>
#include <vector>

#include "httplib.h"
#include "json.hpp"

#include "skillaudit/detail/fsutil.hpp"
#include "skillaudit/errors.hpp"
#include "skillaudit/judge.hpp"

namespace skillaudit {

namespace detail {

struct EndpointParts {
    std::string base; // scheme://host:port
    std::string path; // leading slash
};

inline EndpointParts split_endpoint(const std::string& url) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
        throw AuditError(ErrorCode::ConfigError, "judge endpoint has no scheme: " + url);
    auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

} // namespace detail

// Wire client for an external scoring service. One POST per judgement:
//   score:    {skill_id, input_id, transcript, rubric:[{id,max,guidance}]}
//          -> {scores:{id:points}, rationales:{id:text}}
//   generate: {skill_id, input_id, manifest, prompt} -> {transcript}
// Transport failures (after one retry) raise JudgeUnavailable; a reply that
// parses but violates the contract raises MalformedJudgeResponse and is
// never coerced into a scorecard.
class RemoteJudge final : public OutputJudge {
public:
    explicit RemoteJudge(Config cfg)
        : cfg_(std::move(cfg)),
          endpoint_(detail::split_endpoint(cfg_.get("judge.remote.endpoint"))),
          timeout_seconds_(cfg_.get_double("judge.remote.timeout_seconds")),
          gate_(std::max<long>(1, cfg_.get_int("judge.remote.max_in_flight"))) {
        if (const char* tok = std::getenv(cfg_.get("judge.remote.credential_env").c_str());
            tok && *tok)
            token_ = tok;
    }

    std::string kind() const override { return "remote"; }

    std::vector<CriterionScore> score_static(const SkillArtifact& artifact,
                                             const EffectiveRubric& rubric) override {
        nlohmann::json items = nlohmann::json::array();
        for (const auto& c : rubric.static_criteria)
            items.push_back({{"id", c.id}, {"max", c.weight}, {"guidance", c.guidance}});

        std::string corpus = artifact.manifest.raw;
        for (const auto& s : detail::load_script_texts(artifact))
            corpus += "\n\n# file: " + s.path + "\n" + s.text;

        nlohmann::json req = {{"skill_id", artifact.skill_id},
                              {"input_id", "static"},
                              {"transcript", corpus},
                              {"rubric", std::move(items)}};
        auto resp = post(req);

        std::vector<CriterionScore> out;
        for (const auto& c : rubric.static_criteria)
            out.push_back(extract_score(resp, c.id, c.name, c.weight));
        return out;
    }

    DynamicScorecard judge_output(const ExecutionRecord& record, const EffectiveRubric& rubric,
                                  const SkillArtifact& artifact) override {
        nlohmann::json items = nlohmann::json::array();
        for (const auto& c : rubric.layer1)
            items.push_back({{"id", c.id}, {"max", c.max_points}, {"guidance", c.guidance}});
        for (const auto& c : rubric.layer2)
            items.push_back({{"id", c.id}, {"max", c.max_points}, {"guidance", c.guidance}});

        nlohmann::json req = {{"skill_id", artifact.skill_id},
                              {"input_id", record.input_id},
                              {"transcript", record.transcript},
                              {"rubric", std::move(items)}};
        auto resp = post(req);

        DynamicScorecard card;
        card.input_id = record.input_id;
        for (const auto& c : rubric.layer1) {
            card.layer1_entries.push_back(extract_score(resp, c.id, c.name, c.max_points));
            card.layer1_points += card.layer1_entries.back().points;
        }
        for (const auto& c : rubric.layer2) {
            card.layer2_entries.push_back(extract_score(resp, c.id, c.name, c.max_points));
            card.layer2_points += card.layer2_entries.back().points;
        }
        card.total = card.layer1_points + card.layer2_points;
        return card;
    }

    std::string generate_transcript(const SkillArtifact& artifact,
                                    const TestInput& input) override {
        nlohmann::json req = {{"skill_id", artifact.skill_id},
                              {"input_id", input.input_id},
                              {"manifest", artifact.manifest.raw},
                              {"prompt", input.prompt}};
        auto resp = post(req);
        if (!resp.contains("transcript") || !resp["transcript"].is_string())
            throw AuditError(ErrorCode::MalformedJudgeResponse,
                             "generation reply lacks a transcript string");
        return resp["transcript"].get<std::string>();
    }

private:
    nlohmann::json post(const nlohmann::json& req) {
        std::string body = req.dump();
        httplib::Headers headers;
        if (!token_.empty()) headers.emplace("Authorization", "Bearer " + token_);

        gate_.acquire();
        struct Release {
            std::counting_semaphore<>& s;
            ~Release() { s.release(); }
        } release{gate_};

        std::string reply;
        bool got = false;
        int status = 0;
        for (int attempt = 0; attempt < 2 && !got; ++attempt) {
            httplib::Client cli(endpoint_.base);
            cli.set_connection_timeout(std::chrono::duration<double>(timeout_seconds_));
            cli.set_read_timeout(std::chrono::duration<double>(timeout_seconds_));
            auto res = cli.Post(endpoint_.path, headers, body, "application/json");
            if (res && res->status == 200) {
                reply = res->body;
                got = true;
            } else if (res) {
                status = res->status;
            }
        }
        if (!got)
            throw AuditError(ErrorCode::JudgeUnavailable,
                             "judge endpoint " + endpoint_.base + endpoint_.path +
                                 (status ? " replied HTTP " + std::to_string(status)
                                         : " is unreachable"));
        try {
            return nlohmann::json::parse(reply);
        } catch (const std::exception& e) {
            throw AuditError(ErrorCode::MalformedJudgeResponse,
                             std::string("judge reply is not JSON: ") + e.what());
        }
    }

    CriterionScore extract_score(const nlohmann::json& resp, const std::string& id,
                                 const std::string& name, double max) {
        if (!resp.contains("scores") || !resp["scores"].is_object() ||
            !resp["scores"].contains(id) || !resp["scores"][id].is_number())
            throw AuditError(ErrorCode::MalformedJudgeResponse,
                             "judge reply missing numeric score for criterion " + id);
        double points = resp["scores"][id].get<double>();
        if (points < 0.0 || points > max)
            throw AuditError(ErrorCode::MalformedJudgeResponse,
                             "criterion " + id + " scored " + std::to_string(points) +
                                 " outside [0," + std::to_string(max) + "]");
        std::string rationale;
        if (resp.contains("rationales") && resp["rationales"].is_object() &&
            resp["rationales"].contains(id) && resp["rationales"][id].is_string())
            rationale = resp["rationales"][id].get<std::string>();
        return {id, name, points, max, rationale};
    }

    Config cfg_;
    detail::EndpointParts endpoint_;
    double timeout_seconds_;
    std::counting_semaphore<> gate_;
    std::string token_;
};

} // namespace skillaudit
