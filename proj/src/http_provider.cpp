#include "ideoforge/http_provider.hpp"

#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "ideoforge/errors.hpp"

namespace ideoforge {

using nlohmann::json;

namespace {

// Bounded in-flight admission; plain mutex/cv so it also builds pre-C++20
// semaphore support.
class InFlightLimiter {
public:
    explicit InFlightLimiter(int limit) : available_(limit) {}

    void acquire() {
        std::unique_lock<std::mutex> lock(mu_);
        cv_.wait(lock, [&] { return available_ > 0; });
        --available_;
    }
    void release() {
        {
            std::lock_guard<std::mutex> lock(mu_);
            ++available_;
        }
        cv_.notify_one();
    }

private:
    std::mutex mu_;
    std::condition_variable cv_;
    int available_;
};

struct InFlightGuard {
    explicit InFlightGuard(InFlightLimiter& l) : limiter(l) { limiter.acquire(); }
    ~InFlightGuard() { limiter.release(); }
    InFlightLimiter& limiter;
};

struct SplitUrl {
    std::string scheme_host;  // "http://host:port"
    std::string path_prefix;  // "/v1" (no trailing slash)
};

SplitUrl split_url(const std::string& endpoint) {
    auto scheme_end = endpoint.find("://");
    if (scheme_end == std::string::npos)
        throw InvalidArgument("endpoint must include a scheme: " + endpoint);
    auto path_start = endpoint.find('/', scheme_end + 3);
    SplitUrl out;
    if (path_start == std::string::npos) {
        out.scheme_host = endpoint;
    } else {
        out.scheme_host = endpoint.substr(0, path_start);
        out.path_prefix = endpoint.substr(path_start);
        while (!out.path_prefix.empty() && out.path_prefix.back() == '/')
            out.path_prefix.pop_back();
    }
    return out;
}

bool retryable_status(int status) { return status == 429 || (status >= 500 && status < 600); }

}  // namespace

struct HttpProvider::Impl {
    HttpProviderConfig config;
    SplitUrl url;
    InFlightLimiter limiter;

    explicit Impl(HttpProviderConfig cfg)
        : config(std::move(cfg)), url(split_url(config.endpoint)), limiter(config.max_in_flight) {
        if (config.max_in_flight < 1) throw InvalidArgument("max_in_flight must be >= 1");
        if (!config.sleep) {
            config.sleep = [](int ms) {
                std::this_thread::sleep_for(std::chrono::milliseconds(ms));
            };
        }
    }

    std::string api_key() const {
        const char* v = std::getenv(config.api_key_env.c_str());
        return v ? v : "";
    }

    httplib::Client make_client() const {
        httplib::Client client(url.scheme_host);
        client.set_connection_timeout(config.timeout_seconds, 0);
        client.set_read_timeout(config.timeout_seconds, 0);
        std::string key = api_key();
        if (!key.empty()) client.set_bearer_token_auth(key);
        return client;
    }

    // Runs one HTTP call with the retry policy. `op` returns the httplib
    // result; a null result counts as a transport failure.
    httplib::Result with_retries(const std::function<httplib::Result()>& op,
                                 const std::string& what) {
        std::string last_error;
        for (int attempt = 0; attempt <= config.retry.max_retries; ++attempt) {
            if (attempt > 0) config.sleep(backoff_delay_ms(config.retry, attempt - 1));
            httplib::Result res = op();
            if (!res) {
                last_error = "transport error (" + httplib::to_string(res.error()) + ")";
                continue;
            }
            if (res->status >= 200 && res->status < 300) return res;
            if (!retryable_status(res->status)) {
                throw PermanentError(what + ": HTTP " + std::to_string(res->status) + ": " +
                                     res->body);
            }
            last_error = "HTTP " + std::to_string(res->status);
        }
        throw TransportError(what + ": retries exhausted: " + last_error);
    }

    json parse_body(const httplib::Result& res, const std::string& what) {
        json j = json::parse(res->body, nullptr, false);
        if (j.is_discarded()) throw ProviderError(what + ": malformed JSON response");
        return j;
    }
};

HttpProvider::HttpProvider(HttpProviderConfig config)
    : impl_(std::make_unique<Impl>(std::move(config))) {}

HttpProvider::~HttpProvider() = default;

ChatResult HttpProvider::chat(const ChatRequest& request) {
    request.validate();
    InFlightGuard guard(impl_->limiter);

    json messages = json::array();
    for (const auto& m : request.messages)
        messages.push_back({{"role", m.role}, {"content", m.content}});
    json payload{{"model", request.model},
                 {"messages", messages},
                 {"temperature", request.temperature},
                 {"max_tokens", request.max_tokens}};
    if (request.seed) payload["seed"] = *request.seed;
    std::string body = payload.dump();
    std::string path = impl_->url.path_prefix + "/chat/completions";

    auto res = impl_->with_retries(
        [&] {
            auto client = impl_->make_client();
            return client.Post(path, body, "application/json");
        },
        "chat");

    json j = impl_->parse_body(res, "chat");
    if (!j.contains("choices") || !j["choices"].is_array() || j["choices"].empty())
        throw ProviderError("chat: response has no choices");
    const auto& msg = j["choices"][0].value("message", json::object());
    ChatResult out;
    out.content = msg.value("content", "");
    if (j.contains("usage")) {
        out.usage.prompt_tokens = j["usage"].value("prompt_tokens", 0LL);
        out.usage.completion_tokens = j["usage"].value("completion_tokens", 0LL);
    }
    return out;
}

std::string HttpProvider::upload_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("upload: cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();

    httplib::MultipartFormDataItems items = {
        {"purpose", "fine-tune", "", ""},
        {"file", buf.str(), "training.jsonl", "application/jsonl"},
    };
    std::string url_path = impl_->url.path_prefix + "/files";
    auto res = impl_->with_retries(
        [&] {
            auto client = impl_->make_client();
            return client.Post(url_path, items);
        },
        "upload_file");
    json j = impl_->parse_body(res, "upload_file");
    if (!j.contains("id")) throw ProviderError("upload_file: response has no id");
    return j["id"].get<std::string>();
}

namespace {

FinetuneJobState job_from_json(const json& j) {
    FinetuneJobState state;
    state.job_id = j.value("id", "");
    std::string status = j.value("status", "pending");
    if (status == "succeeded") {
        state.phase = JobPhase::Succeeded;
        state.model_tag = j.value("fine_tuned_model", "");
    } else if (status == "failed" || status == "cancelled") {
        state.phase = JobPhase::Failed;
        if (j.contains("error") && j["error"].is_object())
            state.reason = j["error"].value("message", "");
        if (state.reason.empty()) state.reason = status;
    } else if (status == "running") {
        state.phase = JobPhase::Running;
    } else {
        // validating_files / queued / pending
        state.phase = JobPhase::Pending;
    }
    return state;
}

}  // namespace

FinetuneJobState HttpProvider::create_finetune(const std::string& file_id,
                                               const FinetuneParams& params) {
    json payload{{"training_file", file_id},
                 {"model", params.base_model},
                 {"hyperparameters",
                  json{{"n_epochs", params.epochs},
                       {"batch_size", params.batch_size},
                       {"learning_rate_multiplier", params.learning_rate}}}};
    std::string path = impl_->url.path_prefix + "/fine_tuning/jobs";
    auto res = impl_->with_retries(
        [&] {
            auto client = impl_->make_client();
            return client.Post(path, payload.dump(), "application/json");
        },
        "create_finetune");
    return job_from_json(impl_->parse_body(res, "create_finetune"));
}

FinetuneJobState HttpProvider::get_finetune(const std::string& job_id) {
    std::string path = impl_->url.path_prefix + "/fine_tuning/jobs/" + job_id;
    auto res = impl_->with_retries(
        [&] {
            auto client = impl_->make_client();
            return client.Get(path);
        },
        "get_finetune");
    return job_from_json(impl_->parse_body(res, "get_finetune"));
}

}  // namespace ideoforge
