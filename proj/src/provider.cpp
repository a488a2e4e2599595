#include "ideoforge/provider.hpp"

#include "ideoforge/errors.hpp"

namespace ideoforge {

void ChatRequest::validate() const {
    if (messages.empty()) throw InvalidArgument("chat request has no messages");
    if (temperature < 0.0 || temperature > 2.0)
        throw InvalidArgument("temperature must be in [0,2]");
    if (max_tokens <= 0) throw InvalidArgument("max_tokens must be positive");
    for (const auto& m : messages) {
        if (m.role != "system" && m.role != "user")
            throw InvalidArgument("unsupported message role: " + m.role);
    }
}

std::string_view job_phase_name(JobPhase p) {
    switch (p) {
        case JobPhase::Pending: return "pending";
        case JobPhase::Running: return "running";
        case JobPhase::Succeeded: return "succeeded";
        case JobPhase::Failed: return "failed";
    }
    return "unknown";
}

std::optional<JobPhase> job_phase_from_name(std::string_view s) {
    if (s == "pending") return JobPhase::Pending;
    if (s == "running") return JobPhase::Running;
    if (s == "succeeded") return JobPhase::Succeeded;
    if (s == "failed") return JobPhase::Failed;
    return std::nullopt;
}

int backoff_delay_ms(const RetryPolicy& policy, int attempt) {
    int64_t delay = policy.base_backoff_ms;
    for (int i = 0; i < attempt; ++i) {
        delay *= 2;
        if (delay >= policy.max_backoff_ms) return policy.max_backoff_ms;
    }
    return static_cast<int>(std::min<int64_t>(delay, policy.max_backoff_ms));
}

}  // namespace ideoforge
