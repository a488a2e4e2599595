#include "ideoforge/textsim.hpp"

#include <algorithm>
#include <cctype>

namespace ideoforge {

TokenSequence tokenize(std::string_view text) {
    TokenSequence tokens;
    std::string current;
    for (char ch : text) {
        unsigned char c = static_cast<unsigned char>(ch);
        if (c < 0x80 && std::isalnum(c)) {
            current.push_back(static_cast<char>(std::tolower(c)));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

std::string normalized_text(std::string_view text) {
    auto tokens = tokenize(text);
    std::string out;
    for (size_t i = 0; i < tokens.size(); ++i) {
        if (i > 0) out.push_back(' ');
        out += tokens[i];
    }
    return out;
}

size_t word_count(std::string_view text) {
    size_t count = 0;
    bool in_word = false;
    for (char ch : text) {
        bool space = std::isspace(static_cast<unsigned char>(ch)) != 0;
        if (!space && !in_word) ++count;
        in_word = !space;
    }
    return count;
}

size_t lcs_length(const TokenSequence& a, const TokenSequence& b) {
    if (a.empty() || b.empty()) return 0;
    std::vector<size_t> prev(b.size() + 1, 0), curr(b.size() + 1, 0);
    for (size_t i = 1; i <= a.size(); ++i) {
        for (size_t j = 1; j <= b.size(); ++j) {
            if (a[i - 1] == b[j - 1]) {
                curr[j] = prev[j - 1] + 1;
            } else {
                curr[j] = std::max(prev[j], curr[j - 1]);
            }
        }
        std::swap(prev, curr);
    }
    return prev[b.size()];
}

double rouge_l(const TokenSequence& a, const TokenSequence& b) {
    if (a.empty() || b.empty()) return 0.0;
    size_t lcs = lcs_length(a, b);
    if (lcs == 0) return 0.0;
    double p = static_cast<double>(lcs) / static_cast<double>(a.size());
    double r = static_cast<double>(lcs) / static_cast<double>(b.size());
    return 2.0 * p * r / (p + r);
}

}  // namespace ideoforge
