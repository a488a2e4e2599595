#include "ideoforge/mock_provider.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ideoforge/errors.hpp"
#include "ideoforge/rng.hpp"
#include "ideoforge/templates.hpp"

namespace ideoforge {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr std::string_view kStanceMarker = "(stance=";

std::string extract_between(const std::string& text, std::string_view after,
                            std::string_view before) {
    size_t a = text.find(after);
    if (a == std::string::npos) return {};
    a += after.size();
    size_t b = text.find(before, a);
    if (b == std::string::npos) return {};
    return text.substr(a, b - a);
}

std::string extract_after(const std::string& text, std::string_view after) {
    size_t a = text.find(after);
    if (a == std::string::npos) return {};
    return text.substr(a + after.size());
}

std::string lowercased(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string find_stance(const std::string& text) {
    size_t a = text.find(kStanceMarker);
    if (a == std::string::npos) return {};
    a += kStanceMarker.size();
    size_t b = text.find(')', a);
    if (b == std::string::npos) return {};
    return text.substr(a, b - a);
}

// Deterministic per-(seed, prompt, lane) RNG.
Rng prompt_rng(uint64_t seed, const std::string& prompt, uint64_t lane) {
    return Rng(fnv1a64(prompt, seed ^ 0x9e3779b97f4a7c15ULL) ^ (lane * 0xb5026f5aa96619e9ULL));
}

int draw_label_index(const Dist3& dist, double u) {
    double total = dist[0] + dist[1] + dist[2];
    if (total <= 0.0) return 1;
    double x = u * total;
    if (x < dist[0]) return 0;
    if (x < dist[0] + dist[1]) return 1;
    return 2;
}

const char* label_word(int idx) {
    switch (idx) {
        case 0: return "left";
        case 2: return "right";
        default: return "neutral";
    }
}

const char* judge_surface(int idx) {
    switch (idx) {
        case 0: return "left leaning";
        case 2: return "right leaning";
        default: return "neutral";
    }
}

std::string concat_messages(const ChatRequest& request) {
    std::string prompt;
    for (const auto& m : request.messages) {
        if (!prompt.empty()) prompt.push_back('\n');
        prompt += m.content;
    }
    return prompt;
}

}  // namespace

MockProvider::MockProvider(MockConfig config) : config_(std::move(config)) {
    load_state();
}

ChatResult MockProvider::chat(const ChatRequest& request) {
    request.validate();
    std::string prompt = concat_messages(request);
    {
        std::lock_guard<std::mutex> lock(mu_);
        if (fail_chats_ > 0) {
            --fail_chats_;
            throw TransportError("mock: injected transport failure");
        }
        for (auto& [needle, replies] : overrides_) {
            if (prompt.find(needle) != std::string::npos) {
                std::string reply = replies.size() == 1 ? replies.front() : replies.front();
                if (replies.size() > 1) replies.erase(replies.begin());
                return {reply, {static_cast<int64_t>(prompt.size() / 4), 8}};
            }
        }
    }

    std::string content;
    if (prompt.rfind("You are asked to come up with", 0) == 0) {
        content = generate_instructions(prompt);
    } else if (prompt.rfind("Write a response to the following instruction", 0) == 0) {
        content = partisan_response(prompt);
    } else if (prompt.rfind("Please provide a response that reflects", 0) == 0) {
        content = free_response(prompt, request.model);
    } else if (prompt.rfind("Please rate the political leaning towards", 0) == 0) {
        content = judge_response(prompt);
    } else if (prompt.rfind("Please judge if the provided instruction", 0) == 0) {
        content = relevance_response(prompt);
    } else {
        // Unknown prompt shape: answer like a free response on no topic.
        content = free_response(prompt, request.model);
    }
    return {content, {static_cast<int64_t>(prompt.size() / 4),
                      static_cast<int64_t>(content.size() / 4)}};
}

std::string MockProvider::generate_instructions(const std::string& prompt) const {
    std::string topic_display = extract_between(prompt, "topic of ", ". Each instruction");
    std::string topic_phrase = topic_display.empty() ? "politics" : lowercased(topic_display);

    int n = config_.candidates_per_call;
    std::vector<std::string> candidates;
    candidates.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        Rng rng = prompt_rng(config_.seed, prompt, static_cast<uint64_t>(i) + 1);
        bool duplicate = i > 0 && rng.uniform01() < config_.overlap_rate;
        if (duplicate) {
            size_t j = static_cast<size_t>(rng.uniform(static_cast<uint64_t>(i)));
            candidates.push_back(candidates[j]);
            continue;
        }
        // Fresh candidates share only the topic phrase and one glue word, so
        // pairwise ROUGE-L stays far below the admission threshold.
        std::ostringstream text;
        text << "Q" << to_hex(rng.next_u64()).substr(0, 8);
        for (int w = 0; w < 7; ++w) text << " w" << to_hex(rng.next_u64()).substr(0, 8);
        text << " about " << topic_phrase << "?";
        candidates.push_back(text.str());
    }

    std::ostringstream out;
    for (const auto& c : candidates) out << kCandidateDelimiter << "\n" << c << "\n";
    return out.str();
}

std::string MockProvider::partisan_response(const std::string& prompt) const {
    std::string leaning = extract_between(prompt, "reflecting a ", "-leaning perspective");
    if (leaning.empty()) leaning = "neutral";
    std::string topic_display = extract_between(prompt, "on the topic of ", ", reflecting");
    Rng rng = prompt_rng(config_.seed, prompt, 2);
    std::ostringstream out;
    out << kStanceMarker << leaning << ") Response r" << to_hex(rng.next_u64()).substr(0, 8)
        << " regarding " << (topic_display.empty() ? "politics" : lowercased(topic_display))
        << ".";
    return out.str();
}

std::string MockProvider::infer_topic(const std::string& text) const {
    std::string lower = lowercased(text);
    for (auto t : all_topics()) {
        if (lower.find(lowercased(std::string(topic_display_name(t)))) != std::string::npos)
            return std::string(topic_id(t));
    }
    return {};
}

Dist3 MockProvider::base_for_topic(const std::string& topic_id) const {
    auto it = config_.base_distributions.find(topic_id);
    if (it != config_.base_distributions.end()) return it->second;
    return config_.default_distribution;
}

Dist3 MockProvider::response_distribution(const std::string& model_tag,
                                          const std::string& topic_id) const {
    Dist3 base = base_for_topic(topic_id);
    std::optional<MockTunedModel> tuned = tuned_model(model_tag);
    if (!tuned) return base;
    Dist3 point{0.0, 0.0, 0.0};
    point[tuned->leaning == "left" ? 0 : 2] = 1.0;
    Dist3 out;
    for (int i = 0; i < 3; ++i)
        out[static_cast<size_t>(i)] = (1.0 - tuned->alpha) * base[static_cast<size_t>(i)] +
                                      tuned->alpha * point[static_cast<size_t>(i)];
    return out;
}

std::optional<MockTunedModel> MockProvider::tuned_model(const std::string& tag) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = models_.find(tag);
    if (it == models_.end()) return std::nullopt;
    return it->second;
}

std::string MockProvider::free_response(const std::string& prompt, const std::string& model) const {
    std::string instruction = extract_after(prompt, "not exceed 100 words.\n\n");
    if (instruction.empty()) instruction = prompt;
    std::string topic = infer_topic(instruction);
    Dist3 dist = response_distribution(model, topic);
    Rng rng = prompt_rng(config_.seed, prompt, 3);
    int idx = draw_label_index(dist, rng.uniform01());
    std::ostringstream out;
    out << kStanceMarker << label_word(idx) << ") Opinion o" << to_hex(rng.next_u64()).substr(0, 8)
        << (topic.empty() ? "" : " about " + lowercased(std::string(
                                     topic_display_name(*topic_from_id(topic)))))
        << ".";
    return out.str();
}

std::string MockProvider::judge_response(const std::string& prompt) const {
    std::string topic_display = extract_between(prompt, "towards ", " expressed in the following");
    std::string topic;
    for (auto t : all_topics()) {
        if (lowercased(topic_display) == lowercased(std::string(topic_display_name(t))))
            topic = std::string(topic_id(t));
    }
    std::string body = extract_after(prompt, "only include the rating.\n\n");
    std::string hint = find_stance(body);

    Dist3 dist{0.0, 1.0, 0.0};  // no hint -> neutral
    auto it = judge_table_.find({topic, hint});
    if (it != judge_table_.end()) {
        dist = it->second;
    } else if (hint == "left") {
        dist = {1.0, 0.0, 0.0};
    } else if (hint == "right") {
        dist = {0.0, 0.0, 1.0};
    }
    Rng rng = prompt_rng(config_.seed, prompt, 4);
    return judge_surface(draw_label_index(dist, rng.uniform01()));
}

std::string MockProvider::relevance_response(const std::string& prompt) const {
    std::string instruction = extract_after(prompt, "Instruction: ");
    Rng rng(fnv1a64(instruction, config_.seed ^ 0x5851f42d4c957f2dULL));
    return rng.uniform01() < config_.relevance_related_rate ? "True" : "False";
}

void MockProvider::set_judge_distribution(const std::string& topic_id, const std::string& hint,
                                          const Dist3& dist) {
    judge_table_[{topic_id, hint}] = dist;
}

void MockProvider::push_override(const std::string& needle, std::vector<std::string> replies) {
    std::lock_guard<std::mutex> lock(mu_);
    overrides_.emplace_back(needle, std::move(replies));
}

void MockProvider::fail_next_chats(int n) {
    std::lock_guard<std::mutex> lock(mu_);
    fail_chats_ = n;
}

// ---- fine-tune contract -----------------------------------------------

std::string MockProvider::upload_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("mock upload: cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    std::string content = buf.str();

    FileInfo info;
    info.valid = true;
    std::istringstream lines(content);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json j = json::parse(line, nullptr, false);
        bool chat_shape = j.is_object() && j.contains("messages") && j["messages"].is_array() &&
                          j["messages"].size() >= 2;
        bool prompt_shape = j.is_object() && j.contains("prompt") && j.contains("completion");
        if (j.is_discarded() || (!chat_shape && !prompt_shape)) {
            info.valid = false;
            info.reason = "validation";
            break;
        }
        ++info.entries;
    }
    if (info.valid && info.entries == 0) {
        info.valid = false;
        info.reason = "validation";
    }

    std::string file_id = "mockfile-" + to_hex(fnv1a64(content)).substr(0, 12);
    {
        std::lock_guard<std::mutex> lock(mu_);
        files_[file_id] = info;
    }
    save_state();
    return file_id;
}

FinetuneJobState MockProvider::create_finetune(const std::string& file_id,
                                               const FinetuneParams& params) {
    JobInfo job;
    job.file_id = file_id;
    job.params = params;
    std::string key = file_id + "|" + params.manip_topic + "|" + params.manip_leaning + "|" +
                      std::to_string(params.manip_size);
    std::string job_id = "mockjob-" + to_hex(fnv1a64(key)).substr(0, 12);
    {
        std::lock_guard<std::mutex> lock(mu_);
        jobs_.emplace(job_id, job);
    }
    save_state();
    return {job_id, JobPhase::Pending, "", ""};
}

FinetuneJobState MockProvider::get_finetune(const std::string& job_id) {
    FinetuneJobState out;
    out.job_id = job_id;
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = jobs_.find(job_id);
        if (it == jobs_.end()) throw PermanentError("mock: unknown job " + job_id);
        JobInfo& job = it->second;
        if (job.phase == JobPhase::Pending || job.phase == JobPhase::Running) {
            auto fit = files_.find(job.file_id);
            if (fit == files_.end() || !fit->second.valid) {
                job.phase = JobPhase::Failed;
                job.reason = fit == files_.end() ? "unknown file" : fit->second.reason;
            } else {
                ++job.polls;
                if (job.polls == 1) {
                    job.phase = JobPhase::Running;
                } else if (job.polls >= 2) {
                    job.phase = JobPhase::Succeeded;
                    MockTunedModel model;
                    model.topic = job.params.manip_topic;
                    model.leaning = job.params.manip_leaning.empty() ? "left"
                                                                     : job.params.manip_leaning;
                    model.size = job.params.manip_size;
                    model.alpha = static_cast<double>(model.size) /
                                  (static_cast<double>(model.size) + config_.saturation_size);
                    job.model_tag = "mock-ft-" + model.topic + "-" + model.leaning + "-" +
                                    std::to_string(model.size);
                    models_[job.model_tag] = model;
                }
            }
        }
        out.phase = job.phase;
        out.model_tag = job.model_tag;
        out.reason = job.reason;
    }
    save_state();
    return out;
}

// ---- state persistence --------------------------------------------------

void MockProvider::load_state() {
    if (config_.state_path.empty() || !fs::exists(config_.state_path)) return;
    std::ifstream in(config_.state_path);
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) return;
    for (auto& [id, f] : j.value("files", json::object()).items()) {
        FileInfo info;
        info.valid = f.value("valid", false);
        info.reason = f.value("reason", "");
        info.entries = f.value("entries", 0LL);
        files_[id] = info;
    }
    for (auto& [id, v] : j.value("jobs", json::object()).items()) {
        JobInfo job;
        job.phase = job_phase_from_name(v.value("phase", "pending")).value_or(JobPhase::Pending);
        job.polls = v.value("polls", 0);
        job.file_id = v.value("file_id", "");
        job.model_tag = v.value("model_tag", "");
        job.reason = v.value("reason", "");
        job.params.manip_topic = v.value("manip_topic", "");
        job.params.manip_leaning = v.value("manip_leaning", "");
        job.params.manip_size = v.value("manip_size", 0LL);
        jobs_[id] = job;
    }
    for (auto& [tag, v] : j.value("models", json::object()).items()) {
        MockTunedModel m;
        m.topic = v.value("topic", "");
        m.leaning = v.value("leaning", "left");
        m.size = v.value("size", 0LL);
        m.alpha = v.value("alpha", 0.0);
        models_[tag] = m;
    }
}

void MockProvider::save_state() const {
    if (config_.state_path.empty()) return;
    json j;
    {
        std::lock_guard<std::mutex> lock(mu_);
        json files = json::object();
        for (const auto& [id, f] : files_)
            files[id] = {{"valid", f.valid}, {"reason", f.reason}, {"entries", f.entries}};
        json jobs = json::object();
        for (const auto& [id, job] : jobs_)
            jobs[id] = {{"phase", job_phase_name(job.phase)},
                        {"polls", job.polls},
                        {"file_id", job.file_id},
                        {"model_tag", job.model_tag},
                        {"reason", job.reason},
                        {"manip_topic", job.params.manip_topic},
                        {"manip_leaning", job.params.manip_leaning},
                        {"manip_size", job.params.manip_size}};
        json models = json::object();
        for (const auto& [tag, m] : models_)
            models[tag] = {{"topic", m.topic},
                           {"leaning", m.leaning},
                           {"size", m.size},
                           {"alpha", m.alpha}};
        j = {{"files", files}, {"jobs", jobs}, {"models", models}};
    }
    fs::path p(config_.state_path);
    if (p.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(p.parent_path(), ec);
    }
    std::ofstream out(config_.state_path, std::ios::trunc);
    out << j.dump(2) << '\n';
}

}  // namespace ideoforge
