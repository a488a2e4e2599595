#pragma once

#include <map>
#include <string>

#include "ideoforge/provider.hpp"

namespace ideoforge {

// Sampling temperatures per call site (the paper is silent on these; they
// are declared configuration, not reproduction claims).
struct Temperatures {
    double instruction_gen = 1.0;
    double partisan_response = 0.7;
    double free_response = 0.7;
    double judge = 0.0;
};

struct PipelineConfig {
    Temperatures temperatures;
    double threshold = 0.6;
    uint64_t seed = 42;
    std::string cache_dir;
    // Raw provider definitions keyed by name (see README for the schema);
    // held as serialized JSON to keep this header light.
    std::string providers_json = "{}";
};

// Loads a JSON config file; empty path yields defaults.
PipelineConfig load_config(const std::string& path);

struct ProviderHandle {
    ProviderPtr provider;
    std::string default_model;
};

// Instantiates a named provider from the config. The name "mock" always
// works, even when the config defines no providers.
ProviderHandle make_provider(const PipelineConfig& config, const std::string& name);

}  // namespace ideoforge
