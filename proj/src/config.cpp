#include "ideoforge/config.hpp"

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "ideoforge/errors.hpp"
#include "ideoforge/http_provider.hpp"
#include "ideoforge/mock_provider.hpp"
#include "ideoforge/topics.hpp"

namespace ideoforge {

using nlohmann::json;

PipelineConfig load_config(const std::string& path) {
    PipelineConfig config;
    if (path.empty()) return config;
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config: " + path);
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) throw ParseError("malformed config: " + path);

    if (j.contains("temperatures")) {
        const auto& t = j["temperatures"];
        config.temperatures.instruction_gen =
            t.value("instruction_gen", config.temperatures.instruction_gen);
        config.temperatures.partisan_response =
            t.value("partisan_response", config.temperatures.partisan_response);
        config.temperatures.free_response =
            t.value("free_response", config.temperatures.free_response);
        config.temperatures.judge = t.value("judge", config.temperatures.judge);
    }
    config.threshold = j.value("threshold", config.threshold);
    config.seed = j.value("seed", config.seed);
    config.cache_dir = j.value("cache_dir", config.cache_dir);
    if (j.contains("providers")) config.providers_json = j["providers"].dump();
    return config;
}

namespace {

Dist3 dist_from_json(const json& a) {
    if (!a.is_array() || a.size() != 3)
        throw ParseError("distribution must be a 3-element array");
    return {a[0].get<double>(), a[1].get<double>(), a[2].get<double>()};
}

ProviderHandle make_mock(const json& p, const PipelineConfig& config) {
    MockConfig mc;
    mc.seed = p.value("seed", config.seed);
    mc.overlap_rate = p.value("overlap_rate", 0.0);
    mc.candidates_per_call = p.value("candidates_per_call", 20);
    mc.relevance_related_rate = p.value("relevance_related_rate", 0.0);
    mc.saturation_size = p.value("saturation_size", 50.0);
    mc.state_path = p.value("state_path", "");
    if (mc.state_path.empty() && !config.cache_dir.empty())
        mc.state_path = (std::filesystem::path(config.cache_dir) / "mock_models.json").string();
    if (p.contains("default_distribution"))
        mc.default_distribution = dist_from_json(p["default_distribution"]);
    if (p.contains("base_distributions")) {
        for (auto& [topic, d] : p["base_distributions"].items()) {
            if (!topic_from_id(topic)) throw ParseError("unknown topic in config: " + topic);
            mc.base_distributions[topic] = dist_from_json(d);
        }
    }
    auto provider = std::make_shared<MockProvider>(mc);
    if (p.contains("judge_table")) {
        for (auto& [key, d] : p["judge_table"].items()) {
            auto sep = key.find(':');
            if (sep == std::string::npos)
                throw ParseError("judge_table keys are '<topic>:<hint>': " + key);
            provider->set_judge_distribution(key.substr(0, sep), key.substr(sep + 1),
                                             dist_from_json(d));
        }
    }
    return {provider, p.value("model", std::string("mock-base"))};
}

ProviderHandle make_http(const json& p) {
    HttpProviderConfig hc;
    hc.endpoint = p.value("endpoint", "");
    if (hc.endpoint.empty()) throw ParseError("http provider needs an endpoint");
    hc.api_key_env = p.value("api_key_env", hc.api_key_env);
    hc.retry.max_retries = p.value("max_retries", hc.retry.max_retries);
    hc.retry.base_backoff_ms = p.value("base_backoff_ms", hc.retry.base_backoff_ms);
    hc.retry.max_backoff_ms = p.value("max_backoff_ms", hc.retry.max_backoff_ms);
    hc.max_in_flight = p.value("max_in_flight", hc.max_in_flight);
    hc.timeout_seconds = p.value("timeout_seconds", hc.timeout_seconds);
    return {std::make_shared<HttpProvider>(hc), p.value("model", std::string())};
}

}  // namespace

ProviderHandle make_provider(const PipelineConfig& config, const std::string& name) {
    json providers = json::parse(config.providers_json, nullptr, false);
    if (providers.is_discarded()) providers = json::object();

    json p;
    if (providers.contains(name)) {
        p = providers[name];
    } else if (name == "mock" || name.empty()) {
        p = json{{"kind", "mock"}};
    } else {
        throw InvalidArgument("unknown provider: " + name);
    }

    std::string kind = p.value("kind", "mock");
    if (kind == "mock") return make_mock(p, config);
    if (kind == "http_openai_compatible") return make_http(p);
    throw ParseError("unknown provider kind: " + kind);
}

}  // namespace ideoforge
