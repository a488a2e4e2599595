#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace ideoforge {

// Lowercased alphanumeric token runs, in source order.
using TokenSequence = std::vector<std::string>;

// Maximal runs of ASCII alphanumeric characters, lowercased. Everything else
// (punctuation, whitespace, non-ASCII bytes) separates tokens. No stemming,
// no stopword removal.
TokenSequence tokenize(std::string_view text);

// Tokens joined by single spaces; the canonical form used for duplicate
// detection and content-addressed ids.
std::string normalized_text(std::string_view text);

// Whitespace-separated word count (the admission cap is counted this way,
// not over tokenize() output).
size_t word_count(std::string_view text);

// Longest common subsequence length, O(|a|*|b|) time, two-row memory.
size_t lcs_length(const TokenSequence& a, const TokenSequence& b);

// ROUGE-L F-measure with equal precision/recall weight:
//   L = |LCS(a,b)|, P = L/|a|, R = L/|b|, F = 2PR/(P+R).
// Returns 0 when either sequence is empty or L = 0.
double rouge_l(const TokenSequence& a, const TokenSequence& b);

}  // namespace ideoforge
