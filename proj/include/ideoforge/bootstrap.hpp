#pragma once

#include <string>
#include <vector>

#include "ideoforge/corpus.hpp"
#include "ideoforge/provider.hpp"

namespace ideoforge {

struct BootstrapConfig {
    Topic topic = Topic::CrimeGuns;
    int target_generated = 1000;
    int demos_per_call = 5;  // the shipped template carries exactly 5 demo slots
    double temperature = 1.0;
    std::string model;
    int max_iterations = 500;
    uint64_t rng_seed = 0;
    // Abort after this many consecutive zero-admission iterations.
    int stall_limit = 10;
    // When set, the pool is saved here after every iteration; a rerun
    // resumes from the saved round counter.
    std::string checkpoint_path;
};

struct IterationStats {
    int round = 0;
    int parsed = 0;
    int admitted = 0;
    int rejected_similarity = 0;
    int rejected_length = 0;
    int rejected_duplicate = 0;
};

struct BootstrapResult {
    InstructionPool pool;
    std::vector<IterationStats> iterations;
    bool complete = false;
    std::string stop_reason;  // target_reached | max_iterations | stalled
};

// Splits raw model output on the "%%%" delimiter. Only segments after a
// delimiter count; each is trimmed, empty segments and segments over the
// instruction word cap are dropped. An empty result is the caller's
// empty-batch signal.
std::vector<std::string> parse_candidates(const std::string& raw);

// The iterative generate-filter-admit loop: sample five demonstrations at
// random from the current pool, request a batch of candidates, admit the
// ones that survive the duplicate/length/similarity checks, repeat until
// enough generated instructions exist. On a transport failure the current
// pool is checkpointed (when configured) before the error propagates.
BootstrapResult bootstrap_topic(InstructionPool pool, const BootstrapConfig& config,
                                Provider& provider);

}  // namespace ideoforge
