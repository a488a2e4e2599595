#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ideoforge/textsim.hpp"
#include "ideoforge/topics.hpp"

namespace ideoforge {

enum class Provenance { Seed, Generated };

std::string_view provenance_name(Provenance p);
std::optional<Provenance> provenance_from_name(std::string_view s);

// One opinion-eliciting prompt. Ids are content hashes of
// (topic, normalized text), so re-runs are idempotent.
struct Instruction {
    std::string id;
    std::string text;
    Topic topic = Topic::CrimeGuns;
    Provenance provenance = Provenance::Seed;
    int generation_round = 0;       // 0 iff seed
    double max_pool_similarity = 0; // recorded at admission
};

std::string make_instruction_id(Topic topic, std::string_view text);

Instruction make_seed(Topic topic, std::string_view text);
Instruction make_generated(Topic topic, std::string_view text, int round, double similarity);

// An instruction plus its two partisan responses. `topic` and
// `instruction_text` are denormalized so pair files are self-contained
// inputs for dataset mixing.
struct PartisanPair {
    std::string instruction_id;
    Topic topic = Topic::CrimeGuns;
    std::string instruction_text;
    std::string left_response;
    std::string right_response;
    std::string generator_model;
    bool overlong = false;  // either side exceeded the response word cap
};

enum class AdmitDecision { Admitted, RejectedSimilarity, RejectedLength, RejectedDuplicate };

std::string_view admit_decision_name(AdmitDecision d);

struct AdmitResult {
    AdmitDecision decision = AdmitDecision::Admitted;
    double similarity = 0.0;
    std::optional<std::string> nearest_id;
};

// Single-writer pool of instructions for one topic. Generated items are
// admitted only while their max ROUGE-L similarity against everything
// already in the pool stays <= admission_threshold (strict ">" rejects).
class InstructionPool {
public:
    static constexpr double kDefaultThreshold = 0.6;
    static constexpr size_t kMaxInstructionWords = 120;

    explicit InstructionPool(Topic topic, double admission_threshold = kDefaultThreshold);

    Topic topic() const { return topic_; }
    double admission_threshold() const { return threshold_; }
    size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }
    const std::vector<Instruction>& items() const { return items_; }
    const Instruction& item(size_t i) const { return items_[i]; }
    size_t generated_count() const { return generated_count_; }

    // Inserts an already-built instruction; throws InvalidArgument on
    // duplicate id or violated instruction invariants. Does NOT apply the
    // similarity filter (that is admit()'s job).
    void insert(const Instruction& instr);

    bool contains_normalized(std::string_view text) const;

    // Max ROUGE-L of `candidate` against every pool item; nearest id is the
    // argmax, first occurrence on ties. (0.0, nullopt) for an empty pool.
    std::pair<double, std::optional<std::string>> max_similarity(const TokenSequence& candidate) const;

    // Admission decision for a candidate text, checked in order:
    // duplicate, length, similarity. Does not mutate the pool.
    AdmitResult admit(std::string_view candidate_text) const;

private:
    Topic topic_;
    double threshold_;
    std::vector<Instruction> items_;
    std::vector<TokenSequence> tokens_;  // parallel to items_
    std::vector<std::string> normalized_;
    size_t generated_count_ = 0;
};

// Recomputes every generated-vs-earlier pairwise similarity and reports the
// worst offender. Used as the post-hoc diversity audit.
struct PoolAudit {
    double max_generated_similarity = 0.0;
    size_t violations = 0;  // pairs above the pool threshold
};
PoolAudit audit_pool(const InstructionPool& pool);

// Training-data leaning tag.
enum class EntryTag { Left, Right, NeutralCorpus };

std::string_view entry_tag_name(EntryTag t);
std::optional<EntryTag> entry_tag_from_name(std::string_view s);

struct Hyperparameters {
    int epochs = 3;
    int batch_size = 16;
    double learning_rate = 2e-5;
};

// Identifies one manipulated model: which topic/leaning was trained, with
// how many charged pairs and how much neutral filler.
struct ManipulationSpec {
    Topic topic = Topic::CrimeGuns;
    EntryTag leaning = EntryTag::Left;  // left or right
    long long size = 0;                 // charged pairs
    long long neutral_count = 0;
    uint64_t rng_seed = 0;
    Hyperparameters hyperparameters;
};

struct DatasetEntry {
    std::string instruction;
    std::string response;
    EntryTag tag = EntryTag::Left;
};

struct Dataset {
    std::vector<DatasetEntry> entries;
    ManipulationSpec spec;
};

// ---- JSONL persistence ----------------------------------------------------
// One record per line; embedded newlines survive via JSON escaping. Field
// order inside a record is canonical so save(load(p)) is byte-identical.

InstructionPool load_pool(const std::string& path);
void save_pool(const InstructionPool& pool, const std::string& path);

std::vector<PartisanPair> load_pairs(const std::string& path);
void save_pairs(const std::vector<PartisanPair>& pairs, const std::string& path);

// Dataset entries as JSONL; the ManipulationSpec travels in a sidecar file
// "<path>.spec.json" (absent sidecar loads a default spec with counts
// reconstructed from the tags).
Dataset load_dataset(const std::string& path);
void save_dataset(const Dataset& ds, const std::string& path);

}  // namespace ideoforge
