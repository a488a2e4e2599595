#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ideoforge {

// The six canonical sociopolitical topics. Order is fixed and used for
// matrix columns and every serialized table.
enum class Topic {
    CrimeGuns = 0,
    EconomyInequality,
    GenderSexuality,
    Immigration,
    Race,
    Science,
};

inline constexpr int kTopicCount = 6;

constexpr std::array<Topic, kTopicCount> all_topics() {
    return {Topic::CrimeGuns,  Topic::EconomyInequality, Topic::GenderSexuality,
            Topic::Immigration, Topic::Race,             Topic::Science};
}

// Stable machine id, e.g. "crime_guns".
std::string_view topic_id(Topic t);

// Human-readable name used in prompts, e.g. "Crime and Guns".
std::string_view topic_display_name(Topic t);

// Parses a machine id; empty optional for unknown ids.
std::optional<Topic> topic_from_id(std::string_view id);

// The five topics other than `t`, in canonical order.
std::vector<Topic> other_topics(Topic t);

}  // namespace ideoforge
