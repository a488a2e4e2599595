#include "ideoforge/topics.hpp"

namespace ideoforge {

namespace {

struct TopicNames {
    std::string_view id;
    std::string_view display;
};

constexpr std::array<TopicNames, kTopicCount> kNames = {{
    {"crime_guns", "Crime and Guns"},
    {"economy_inequality", "Economy and Inequality"},
    {"gender_sexuality", "Gender and Sexuality"},
    {"immigration", "Immigration"},
    {"race", "Race"},
    {"science", "Science"},
}};

}  // namespace

std::string_view topic_id(Topic t) {
    return kNames[static_cast<size_t>(t)].id;
}

std::string_view topic_display_name(Topic t) {
    return kNames[static_cast<size_t>(t)].display;
}

std::optional<Topic> topic_from_id(std::string_view id) {
    for (auto t : all_topics()) {
        if (topic_id(t) == id) return t;
    }
    return std::nullopt;
}

std::vector<Topic> other_topics(Topic t) {
    std::vector<Topic> out;
    out.reserve(kTopicCount - 1);
    for (auto other : all_topics()) {
        if (other != t) out.push_back(other);
    }
    return out;
}

}  // namespace ideoforge
