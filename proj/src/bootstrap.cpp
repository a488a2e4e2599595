#include "ideoforge/bootstrap.hpp"

#include <algorithm>

#include "ideoforge/errors.hpp"
#include "ideoforge/rng.hpp"
#include "ideoforge/templates.hpp"
#include "ideoforge/textsim.hpp"

namespace ideoforge {

namespace {

std::string trimmed(std::string_view s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    size_t e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

}  // namespace

std::vector<std::string> parse_candidates(const std::string& raw) {
    std::vector<std::string> out;
    size_t pos = raw.find(kCandidateDelimiter);
    while (pos != std::string::npos) {
        size_t start = pos + kCandidateDelimiter.size();
        size_t next = raw.find(kCandidateDelimiter, start);
        std::string segment = trimmed(next == std::string::npos
                                          ? std::string_view(raw).substr(start)
                                          : std::string_view(raw).substr(start, next - start));
        if (!segment.empty() && word_count(segment) <= InstructionPool::kMaxInstructionWords)
            out.push_back(std::move(segment));
        pos = next;
    }
    return out;
}

BootstrapResult bootstrapping_abort(BootstrapResult result, std::string reason) {
    result.complete = false;
    result.stop_reason = std::move(reason);
    return result;
}

BootstrapResult bootstrap_topic(InstructionPool pool, const BootstrapConfig& config,
                                Provider& provider) {
    if (config.demos_per_call != 5)
        throw InvalidArgument("the instruction-generation template takes exactly 5 demonstrations");
    if (pool.size() < static_cast<size_t>(config.demos_per_call))
        throw InvalidArgument("pool smaller than demos_per_call");
    if (config.target_generated <= 0) throw InvalidArgument("target_generated must be positive");

    BootstrapResult result{std::move(pool), {}, false, ""};
    Rng rng(config.rng_seed);

    // Resume from the highest round already present.
    int round = 0;
    for (const auto& item : result.pool.items())
        round = std::max(round, item.generation_round);
    ++round;

    int stalled = 0;
    for (int iter = 0; iter < config.max_iterations; ++iter, ++round) {
        if (result.pool.generated_count() >= static_cast<size_t>(config.target_generated)) {
            result.complete = true;
            result.stop_reason = "target_reached";
            return result;
        }

        auto demo_idx = rng.sample_without_replacement(result.pool.size(),
                                                       static_cast<size_t>(config.demos_per_call));
        SlotMap slots;
        for (size_t d = 0; d < demo_idx.size(); ++d)
            slots["instruction " + std::to_string(d + 1)] = result.pool.item(demo_idx[d]).text;
        slots["topic"] = std::string(topic_display_name(config.topic));

        ChatRequest request;
        request.model = config.model;
        request.messages = {{"user", render(TemplateKind::InstructionGen, slots)}};
        request.temperature = config.temperature;
        request.max_tokens = 2048;
        request.seed = static_cast<int64_t>(config.rng_seed);

        std::string raw;
        try {
            raw = provider.chat(request).content;
        } catch (const TransportError&) {
            if (!config.checkpoint_path.empty()) save_pool(result.pool, config.checkpoint_path);
            throw;
        }

        IterationStats stats;
        stats.round = round;
        auto candidates = parse_candidates(raw);
        stats.parsed = static_cast<int>(candidates.size());
        for (const auto& text : candidates) {
            AdmitResult admit = result.pool.admit(text);
            switch (admit.decision) {
                case AdmitDecision::Admitted:
                    result.pool.insert(
                        make_generated(config.topic, text, round, admit.similarity));
                    ++stats.admitted;
                    break;
                case AdmitDecision::RejectedSimilarity: ++stats.rejected_similarity; break;
                case AdmitDecision::RejectedLength: ++stats.rejected_length; break;
                case AdmitDecision::RejectedDuplicate: ++stats.rejected_duplicate; break;
            }
        }
        result.iterations.push_back(stats);
        if (!config.checkpoint_path.empty()) save_pool(result.pool, config.checkpoint_path);

        stalled = stats.admitted == 0 ? stalled + 1 : 0;
        if (stalled >= config.stall_limit)
            return bootstrapping_abort(std::move(result), "stalled");
    }

    if (result.pool.generated_count() >= static_cast<size_t>(config.target_generated)) {
        result.complete = true;
        result.stop_reason = "target_reached";
        return result;
    }
    return bootstrapping_abort(std::move(result), "max_iterations");
}

}  // namespace ideoforge
