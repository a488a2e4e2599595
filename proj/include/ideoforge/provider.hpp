#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ideoforge {

struct ChatMessage {
    std::string role;  // "system" or "user"
    std::string content;
};

struct ChatRequest {
    std::string model;
    std::vector<ChatMessage> messages;
    double temperature = 0.0;
    int max_tokens = 1024;
    std::optional<int64_t> seed;

    // Throws InvalidArgument on violated invariants (no messages,
    // temperature outside [0,2], non-positive max_tokens).
    void validate() const;
};

struct TokenUsage {
    int64_t prompt_tokens = 0;
    int64_t completion_tokens = 0;
};

struct ChatResult {
    std::string content;
    TokenUsage usage;
};

struct RetryPolicy {
    int max_retries = 5;
    int base_backoff_ms = 1000;  // delay for attempt k is base * 2^k, capped
    int max_backoff_ms = 60000;
};

// Fine-tune job lifecycle; transitions are monotone
// pending -> running -> {succeeded, failed}.
enum class JobPhase { Pending, Running, Succeeded, Failed };

std::string_view job_phase_name(JobPhase p);
std::optional<JobPhase> job_phase_from_name(std::string_view s);

struct FinetuneParams {
    std::string base_model;
    int epochs = 3;
    int batch_size = 16;
    double learning_rate = 2e-5;
    // Mock trainer metadata: which manipulation this training file realizes.
    std::string manip_topic;
    std::string manip_leaning;
    long long manip_size = 0;
};

struct FinetuneJobState {
    std::string job_id;
    JobPhase phase = JobPhase::Pending;
    std::string model_tag;  // set iff succeeded
    std::string reason;     // set iff failed
};

// Provider abstraction for every model call: chat completion plus the
// fine-tune contract (file upload, job create, job status).
class Provider {
public:
    virtual ~Provider() = default;

    virtual std::string name() const = 0;

    virtual ChatResult chat(const ChatRequest& request) = 0;

    virtual std::string upload_file(const std::string& path) = 0;
    virtual FinetuneJobState create_finetune(const std::string& file_id,
                                             const FinetuneParams& params) = 0;
    virtual FinetuneJobState get_finetune(const std::string& job_id) = 0;
};

using ProviderPtr = std::shared_ptr<Provider>;

// Sleep hook so retry/backoff tests run instantly.
using SleepFn = std::function<void(int /*milliseconds*/)>;

int backoff_delay_ms(const RetryPolicy& policy, int attempt);

}  // namespace ideoforge
