#pragma once

#include <memory>
#include <string>

#include "ideoforge/provider.hpp"

namespace ideoforge {

struct HttpProviderConfig {
    // Base URL including any path prefix, e.g. "https://api.openai.com/v1"
    // or "http://127.0.0.1:8089/v1".
    std::string endpoint;
    // Environment variable holding the bearer token; never logged.
    std::string api_key_env = "IDEOFORGE_API_KEY";
    RetryPolicy retry;
    int max_in_flight = 4;
    int timeout_seconds = 120;
    // Test hook; defaults to a real sleep.
    SleepFn sleep;
};

// OpenAI-compatible chat-completions + fine-tuning client.
// Transient failures (429, 5xx, transport) are retried with exponential
// backoff; other 4xx fail permanently without retry. Concurrent calls are
// admitted up to max_in_flight.
class HttpProvider : public Provider {
public:
    explicit HttpProvider(HttpProviderConfig config);
    ~HttpProvider() override;

    std::string name() const override { return "http_openai_compatible"; }

    ChatResult chat(const ChatRequest& request) override;

    std::string upload_file(const std::string& path) override;
    FinetuneJobState create_finetune(const std::string& file_id,
                                     const FinetuneParams& params) override;
    FinetuneJobState get_finetune(const std::string& job_id) override;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace ideoforge
