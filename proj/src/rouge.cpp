#include "divsum/rouge.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace divsum {

namespace {

RougeTriple make_triple(double overlap, double candidate_total, double reference_total) {
  RougeTriple t;
  t.precision = candidate_total > 0.0 ? overlap / candidate_total : 0.0;
  t.recall = reference_total > 0.0 ? overlap / reference_total : 0.0;
  const double denom = t.precision + t.recall;
  t.f1 = denom > 0.0 ? 2.0 * t.precision * t.recall / denom : 0.0;
  return t;
}

// n-grams keyed by their tokens joined with an unprintable separator.
std::unordered_map<std::string, int> ngram_counts(const TokenSeq& seq, int n) {
  std::unordered_map<std::string, int> counts;
  if (seq.size() < static_cast<std::size_t>(n)) return counts;
  for (std::size_t i = 0; i + n <= seq.size(); ++i) {
    std::string key;
    for (int k = 0; k < n; ++k) {
      if (k) key.push_back('\x1f');
      key += seq.tokens[i + k];
    }
    ++counts[key];
  }
  return counts;
}

std::size_t lcs_subsequence_length(const TokenSeq& a, const TokenSeq& b) {
  const std::size_t n = a.size(), m = b.size();
  std::vector<std::size_t> prev(m + 1, 0), cur(m + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      cur[j] = (a.tokens[i - 1] == b.tokens[j - 1]) ? prev[j - 1] + 1
                                                    : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

}  // namespace

RougeTriple rouge_n(const TokenSeq& candidate, const TokenSeq& reference, int n) {
  if (n != 1 && n != 2) throw std::invalid_argument("n must be 1 or 2");
  if (reference.size() < static_cast<std::size_t>(n))
    throw std::invalid_argument("reference shorter than n");

  auto ref_counts = ngram_counts(reference, n);
  auto cand_counts = ngram_counts(candidate, n);
  double overlap = 0.0, cand_total = 0.0, ref_total = 0.0;
  for (const auto& [key, count] : cand_counts) {
    cand_total += count;
    auto it = ref_counts.find(key);
    if (it != ref_counts.end()) overlap += std::min(count, it->second);
  }
  for (const auto& [key, count] : ref_counts) ref_total += count;
  return make_triple(overlap, cand_total, ref_total);
}

RougeTriple rouge_l(const TokenSeq& candidate, const TokenSeq& reference) {
  if (candidate.empty()) throw std::invalid_argument("empty candidate");
  if (reference.empty()) throw std::invalid_argument("empty reference");
  const double lcs = static_cast<double>(lcs_subsequence_length(candidate, reference));
  return make_triple(lcs, static_cast<double>(candidate.size()),
                     static_cast<double>(reference.size()));
}

RougeScores rouge_all(const TokenSeq& candidate, const TokenSeq& reference) {
  RougeScores scores;
  scores.rouge1 = rouge_n(candidate, reference, 1);
  scores.rouge2 = rouge_n(candidate, reference, 2);
  scores.rougeL = rouge_l(candidate, reference);
  return scores;
}

}  // namespace divsum
