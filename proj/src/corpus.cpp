#include "ideoforge/corpus.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "ideoforge/errors.hpp"
#include "ideoforge/rng.hpp"

namespace ideoforge {

using nlohmann::json;
namespace fs = std::filesystem;

std::string_view provenance_name(Provenance p) {
    return p == Provenance::Seed ? "seed" : "generated";
}

std::optional<Provenance> provenance_from_name(std::string_view s) {
    if (s == "seed") return Provenance::Seed;
    if (s == "generated") return Provenance::Generated;
    return std::nullopt;
}

std::string_view admit_decision_name(AdmitDecision d) {
    switch (d) {
        case AdmitDecision::Admitted: return "admitted";
        case AdmitDecision::RejectedSimilarity: return "rejected_similarity";
        case AdmitDecision::RejectedLength: return "rejected_length";
        case AdmitDecision::RejectedDuplicate: return "rejected_duplicate";
    }
    return "unknown";
}

std::string make_instruction_id(Topic topic, std::string_view text) {
    std::string key(topic_id(topic));
    key.push_back('\n');
    key += normalized_text(text);
    return to_hex(fnv1a64(key));
}

namespace {

std::string trimmed(std::string_view s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    size_t e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

void check_instruction(const Instruction& instr) {
    if (trimmed(instr.text).empty())
        throw InvalidArgument("instruction text is empty: id=" + instr.id);
    if (word_count(instr.text) > InstructionPool::kMaxInstructionWords)
        throw InvalidArgument("instruction exceeds word cap: id=" + instr.id);
    bool is_seed = instr.provenance == Provenance::Seed;
    if (is_seed != (instr.generation_round == 0))
        throw InvalidArgument("generation_round must be 0 iff seed: id=" + instr.id);
}

}  // namespace

Instruction make_seed(Topic topic, std::string_view text) {
    Instruction i;
    i.text = trimmed(text);
    i.topic = topic;
    i.provenance = Provenance::Seed;
    i.generation_round = 0;
    i.max_pool_similarity = 0.0;
    i.id = make_instruction_id(topic, i.text);
    return i;
}

Instruction make_generated(Topic topic, std::string_view text, int round, double similarity) {
    Instruction i;
    i.text = trimmed(text);
    i.topic = topic;
    i.provenance = Provenance::Generated;
    i.generation_round = round;
    i.max_pool_similarity = similarity;
    i.id = make_instruction_id(topic, i.text);
    return i;
}

InstructionPool::InstructionPool(Topic topic, double admission_threshold)
    : topic_(topic), threshold_(admission_threshold) {
    if (threshold_ < 0.0 || threshold_ > 1.0)
        throw InvalidArgument("admission_threshold must be in [0,1]");
}

void InstructionPool::insert(const Instruction& instr) {
    check_instruction(instr);
    for (const auto& existing : items_) {
        if (existing.id == instr.id)
            throw InvalidArgument("duplicate instruction id: " + instr.id);
    }
    items_.push_back(instr);
    tokens_.push_back(tokenize(instr.text));
    normalized_.push_back(normalized_text(instr.text));
    if (instr.provenance == Provenance::Generated) ++generated_count_;
}

bool InstructionPool::contains_normalized(std::string_view text) const {
    std::string norm = normalized_text(text);
    for (const auto& n : normalized_) {
        if (n == norm) return true;
    }
    return false;
}

std::pair<double, std::optional<std::string>> InstructionPool::max_similarity(
        const TokenSequence& candidate) const {
    double best = 0.0;
    std::optional<std::string> best_id;
    for (size_t i = 0; i < items_.size(); ++i) {
        double score = rouge_l(candidate, tokens_[i]);
        if (!best_id || score > best) {
            best = score;
            best_id = items_[i].id;
        }
    }
    if (!best_id) return {0.0, std::nullopt};
    return {best, best_id};
}

AdmitResult InstructionPool::admit(std::string_view candidate_text) const {
    AdmitResult result;
    std::string text = trimmed(candidate_text);
    if (contains_normalized(text)) {
        result.decision = AdmitDecision::RejectedDuplicate;
        return result;
    }
    if (text.empty() || word_count(text) > kMaxInstructionWords) {
        result.decision = AdmitDecision::RejectedLength;
        return result;
    }
    auto [score, nearest] = max_similarity(tokenize(text));
    result.similarity = score;
    result.nearest_id = nearest;
    // Strict inequality: exactly at the threshold is still admitted.
    result.decision = score > threshold_ ? AdmitDecision::RejectedSimilarity
                                         : AdmitDecision::Admitted;
    return result;
}

PoolAudit audit_pool(const InstructionPool& pool) {
    PoolAudit audit;
    const auto& items = pool.items();
    std::vector<TokenSequence> toks;
    toks.reserve(items.size());
    for (const auto& it : items) toks.push_back(tokenize(it.text));
    for (size_t i = 0; i < items.size(); ++i) {
        if (items[i].provenance != Provenance::Generated) continue;
        for (size_t j = 0; j < i; ++j) {
            double s = rouge_l(toks[i], toks[j]);
            if (s > audit.max_generated_similarity) audit.max_generated_similarity = s;
            if (s > pool.admission_threshold()) ++audit.violations;
        }
    }
    return audit;
}

std::string_view entry_tag_name(EntryTag t) {
    switch (t) {
        case EntryTag::Left: return "left";
        case EntryTag::Right: return "right";
        case EntryTag::NeutralCorpus: return "neutral_corpus";
    }
    return "unknown";
}

std::optional<EntryTag> entry_tag_from_name(std::string_view s) {
    if (s == "left") return EntryTag::Left;
    if (s == "right") return EntryTag::Right;
    if (s == "neutral_corpus") return EntryTag::NeutralCorpus;
    return std::nullopt;
}

// ---- JSONL ------------------------------------------------------------

namespace {

// Reads all non-empty lines, reporting the 1-based line number with errors.
std::vector<std::pair<size_t, json>> read_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open file: " + path);
    std::vector<std::pair<size_t, json>> records;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trimmed(line).empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object())
            throw ParseError(path + ":" + std::to_string(lineno) + ": malformed record");
        records.emplace_back(lineno, std::move(j));
    }
    return records;
}

std::ofstream open_out(const std::string& path) {
    fs::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(p.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot write file: " + path);
    return out;
}

std::string field_str(const json& j, const char* key, const std::string& ctx) {
    if (!j.contains(key) || !j.at(key).is_string())
        throw ParseError(ctx + ": missing or non-string field '" + key + "'");
    return j.at(key).get<std::string>();
}

Topic field_topic(const json& j, const char* key, const std::string& ctx) {
    auto t = topic_from_id(field_str(j, key, ctx));
    if (!t) throw ParseError(ctx + ": unknown topic id");
    return *t;
}

}  // namespace

InstructionPool load_pool(const std::string& path) {
    auto records = read_jsonl(path);
    std::optional<Topic> pool_topic;
    double threshold = InstructionPool::kDefaultThreshold;
    std::vector<Instruction> items;
    std::unordered_set<std::string> seen;
    for (const auto& [lineno, j] : records) {
        std::string ctx = path + ":" + std::to_string(lineno);
        Instruction instr;
        instr.text = field_str(j, "text", ctx);
        instr.topic = field_topic(j, "topic", ctx);
        if (j.contains("provenance")) {
            auto p = provenance_from_name(field_str(j, "provenance", ctx));
            if (!p) throw ParseError(ctx + ": unknown provenance");
            instr.provenance = *p;
        }
        instr.generation_round = j.value("generation_round", 0);
        instr.max_pool_similarity = j.value("max_pool_similarity", 0.0);
        instr.id = j.contains("id") ? field_str(j, "id", ctx)
                                    : make_instruction_id(instr.topic, instr.text);
        if (!seen.insert(instr.id).second)
            throw ParseError(ctx + ": duplicate instruction id '" + instr.id + "'");
        if (!pool_topic) pool_topic = instr.topic;
        items.push_back(std::move(instr));
    }
    InstructionPool pool(pool_topic.value_or(Topic::CrimeGuns), threshold);
    for (const auto& i : items) pool.insert(i);
    return pool;
}

void save_pool(const InstructionPool& pool, const std::string& path) {
    auto out = open_out(path);
    for (const auto& i : pool.items()) {
        json j{{"id", i.id},
               {"text", i.text},
               {"topic", topic_id(i.topic)},
               {"provenance", provenance_name(i.provenance)},
               {"generation_round", i.generation_round},
               {"max_pool_similarity", i.max_pool_similarity}};
        out << j.dump() << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

std::vector<PartisanPair> load_pairs(const std::string& path) {
    auto records = read_jsonl(path);
    std::vector<PartisanPair> pairs;
    pairs.reserve(records.size());
    for (const auto& [lineno, j] : records) {
        std::string ctx = path + ":" + std::to_string(lineno);
        PartisanPair p;
        p.instruction_id = field_str(j, "instruction_id", ctx);
        p.topic = field_topic(j, "topic", ctx);
        p.instruction_text = field_str(j, "instruction_text", ctx);
        p.left_response = field_str(j, "left_response", ctx);
        p.right_response = field_str(j, "right_response", ctx);
        p.generator_model = field_str(j, "generator_model", ctx);
        p.overlong = j.value("overlong", false);
        if (p.left_response.empty() || p.right_response.empty())
            throw ParseError(ctx + ": empty partisan response");
        pairs.push_back(std::move(p));
    }
    return pairs;
}

void save_pairs(const std::vector<PartisanPair>& pairs, const std::string& path) {
    auto out = open_out(path);
    for (const auto& p : pairs) {
        json j{{"instruction_id", p.instruction_id},
               {"topic", topic_id(p.topic)},
               {"instruction_text", p.instruction_text},
               {"left_response", p.left_response},
               {"right_response", p.right_response},
               {"generator_model", p.generator_model}};
        if (p.overlong) j["overlong"] = true;
        out << j.dump() << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

namespace {

json spec_to_json(const ManipulationSpec& s) {
    return json{{"topic", topic_id(s.topic)},
                {"leaning", entry_tag_name(s.leaning)},
                {"size", s.size},
                {"neutral_count", s.neutral_count},
                {"rng_seed", s.rng_seed},
                {"hyperparameters",
                 json{{"epochs", s.hyperparameters.epochs},
                      {"batch_size", s.hyperparameters.batch_size},
                      {"learning_rate", s.hyperparameters.learning_rate}}}};
}

ManipulationSpec spec_from_json(const json& j, const std::string& ctx) {
    ManipulationSpec s;
    s.topic = field_topic(j, "topic", ctx);
    auto tag = entry_tag_from_name(field_str(j, "leaning", ctx));
    if (!tag || *tag == EntryTag::NeutralCorpus)
        throw ParseError(ctx + ": leaning must be left or right");
    s.leaning = *tag;
    s.size = j.value("size", 0LL);
    s.neutral_count = j.value("neutral_count", 0LL);
    s.rng_seed = j.value("rng_seed", uint64_t{0});
    if (j.contains("hyperparameters")) {
        const auto& h = j.at("hyperparameters");
        s.hyperparameters.epochs = h.value("epochs", 3);
        s.hyperparameters.batch_size = h.value("batch_size", 16);
        s.hyperparameters.learning_rate = h.value("learning_rate", 2e-5);
    }
    return s;
}

}  // namespace

Dataset load_dataset(const std::string& path) {
    Dataset ds;
    for (const auto& [lineno, j] : read_jsonl(path)) {
        std::string ctx = path + ":" + std::to_string(lineno);
        DatasetEntry e;
        e.instruction = field_str(j, "instruction", ctx);
        e.response = field_str(j, "response", ctx);
        auto tag = entry_tag_from_name(field_str(j, "tag", ctx));
        if (!tag) throw ParseError(ctx + ": unknown entry tag");
        e.tag = *tag;
        ds.entries.push_back(std::move(e));
    }
    std::string sidecar = path + ".spec.json";
    if (fs::exists(sidecar)) {
        std::ifstream in(sidecar);
        json j = json::parse(in, nullptr, false);
        if (j.is_discarded()) throw ParseError(sidecar + ": malformed spec");
        ds.spec = spec_from_json(j, sidecar);
    } else {
        for (const auto& e : ds.entries) {
            if (e.tag == EntryTag::NeutralCorpus) ++ds.spec.neutral_count;
            else ++ds.spec.size;
        }
    }
    return ds;
}

void save_dataset(const Dataset& ds, const std::string& path) {
    auto out = open_out(path);
    for (const auto& e : ds.entries) {
        json j{{"instruction", e.instruction},
               {"response", e.response},
               {"tag", entry_tag_name(e.tag)}};
        out << j.dump() << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
    auto side = open_out(path + ".spec.json");
    side << spec_to_json(ds.spec).dump(2) << '\n';
}

}  // namespace ideoforge
