#pragma once

#include <array>
#include <deque>
#include <map>
#include <mutex>
#include <string>

#include "ideoforge/provider.hpp"
#include "ideoforge/topics.hpp"

namespace ideoforge {

// Label distribution triple in (left, neutral, right) order.
using Dist3 = std::array<double, 3>;

// A fine-tuned model simulated by the mock trainer. Its response label
// distribution on any evaluation topic is
//   (1 - alpha) * base(topic) + alpha * point_mass(leaning)
// with alpha = size / (size + saturation_size), so small manipulation sizes
// already dominate and growth saturates.
struct MockTunedModel {
    std::string topic;    // manipulated topic id
    std::string leaning;  // "left" or "right"
    long long size = 0;
    double alpha = 0.0;
};

struct MockConfig {
    uint64_t seed = 0;
    // Probability that a generated candidate duplicates an earlier candidate
    // of the same batch. 0 = fresh (disjoint) vocabulary per candidate,
    // 1 = all candidates identical.
    double overlap_rate = 0.0;
    int candidates_per_call = 20;
    // Persisted job/model registry so separate processes share one trainer.
    std::string state_path;
    // Fraction of instructions the relevance judge calls related.
    double relevance_related_rate = 0.0;
    // Per-topic label distribution of the un-tuned mock model, plus the
    // fallback used when no topic can be inferred from the instruction.
    std::map<std::string, Dist3> base_distributions;
    Dist3 default_distribution{0.6, 0.3, 0.1};
    double saturation_size = 50.0;
};

// Deterministic stand-in for every provider role: generation, judging and
// fine-tuning. All chat output is a pure function of (config.seed, prompt),
// so identical runs are byte-identical and no test touches the network.
//
// Generated responses embed their stance as a "(stance=<label>)" marker;
// the mock judge keys its configured distribution on (topic, marker).
class MockProvider : public Provider {
public:
    explicit MockProvider(MockConfig config);

    std::string name() const override { return "mock"; }

    ChatResult chat(const ChatRequest& request) override;

    std::string upload_file(const std::string& path) override;
    FinetuneJobState create_finetune(const std::string& file_id,
                                     const FinetuneParams& params) override;
    FinetuneJobState get_finetune(const std::string& job_id) override;

    // Exact response label distribution for a model tag evaluated on a topic
    // (blended for tuned tags, base otherwise).
    Dist3 response_distribution(const std::string& model_tag, const std::string& topic_id) const;

    std::optional<MockTunedModel> tuned_model(const std::string& tag) const;

    // (topic, stance hint) -> judge verdict distribution. Unconfigured keys
    // echo the hint as a point mass.
    void set_judge_distribution(const std::string& topic_id, const std::string& hint,
                                const Dist3& dist);

    // Test hooks -------------------------------------------------------
    // Prompts containing `needle` are answered from `replies` (last reply
    // repeats once exhausted), bypassing the grammar.
    void push_override(const std::string& needle, std::vector<std::string> replies);
    // The next n chat calls throw TransportError.
    void fail_next_chats(int n);

    const MockConfig& config() const { return config_; }

private:
    struct FileInfo {
        bool valid = false;
        std::string reason;
        long long entries = 0;
    };
    struct JobInfo {
        JobPhase phase = JobPhase::Pending;
        int polls = 0;
        std::string file_id;
        FinetuneParams params;
        std::string model_tag;
        std::string reason;
    };

    std::string generate_instructions(const std::string& prompt) const;
    std::string partisan_response(const std::string& prompt) const;
    std::string free_response(const std::string& prompt, const std::string& model) const;
    std::string judge_response(const std::string& prompt) const;
    std::string relevance_response(const std::string& prompt) const;

    Dist3 base_for_topic(const std::string& topic_id) const;
    std::string infer_topic(const std::string& text) const;

    void load_state();
    void save_state() const;

    MockConfig config_;
    std::map<std::pair<std::string, std::string>, Dist3> judge_table_;

    mutable std::mutex mu_;
    std::map<std::string, FileInfo> files_;
    std::map<std::string, JobInfo> jobs_;
    std::map<std::string, MockTunedModel> models_;
    std::deque<std::pair<std::string, std::vector<std::string>>> overrides_;
    int fail_chats_ = 0;
};

}  // namespace ideoforge
