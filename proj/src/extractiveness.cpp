#include "divsum/extractiveness.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace divsum {

namespace {

// Rolling-row DP over match-run lengths ending at each (summary, document)
// position. Runs reset at masked summary positions, so any counted run lies
// entirely in unmasked territory. Scanning order makes the first strictly
// longer run win, which realizes the (length desc, summary_start asc,
// document_start asc) preference without extra bookkeeping.
std::optional<CommonSpan> longest_span_masked(const TokenSeq& summary,
                                              const TokenSeq& document,
                                              const std::vector<char>* masked) {
  const std::size_t n = summary.size();
  const std::size_t m = document.size();
  if (n == 0 || m == 0) return std::nullopt;

  std::vector<std::size_t> prev(m + 1, 0), cur(m + 1, 0);
  CommonSpan best;
  for (std::size_t i = 1; i <= n; ++i) {
    if (masked && (*masked)[i - 1]) {
      std::fill(cur.begin(), cur.end(), 0);
    } else {
      const std::string& tok = summary.tokens[i - 1];
      for (std::size_t j = 1; j <= m; ++j) {
        cur[j] = (tok == document.tokens[j - 1]) ? prev[j - 1] + 1 : 0;
        if (cur[j] > best.length) {
          best.length = cur[j];
          best.summary_start = i - cur[j];
          best.document_start = j - cur[j];
        }
      }
    }
    std::swap(prev, cur);
  }
  if (best.length == 0) return std::nullopt;
  return best;
}

}  // namespace

std::optional<CommonSpan> longest_common_span(const TokenSeq& summary,
                                              const TokenSeq& document) {
  return longest_span_masked(summary, document, nullptr);
}

double plagiarism_score(const TokenSeq& summary, const TokenSeq& document) {
  if (summary.empty()) throw std::invalid_argument("empty summary");
  auto span = longest_common_span(summary, document);
  if (!span) return 0.0;
  return static_cast<double>(span->length) / static_cast<double>(summary.size());
}

std::vector<CommonSpan> find_acs(const TokenSeq& summary, const TokenSeq& document,
                                 std::size_t min_span_length) {
  if (min_span_length == 0) throw std::invalid_argument("min_span_length must be positive");
  std::vector<CommonSpan> spans;
  std::vector<char> masked(summary.size(), 0);
  while (true) {
    auto span = longest_span_masked(summary, document, &masked);
    if (!span || span->length < min_span_length) break;
    for (std::size_t k = 0; k < span->length; ++k) masked[span->summary_start + k] = 1;
    spans.push_back(*span);
  }
  return spans;
}

double extraction_penalty(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("proportion outside [0, 1]");
  return p * (std::exp(p - 1.0) - (1.0 - p) / std::numbers::e);
}

ExtractivenessReport extraction_score(const TokenSeq& summary, const TokenSeq& document,
                                      std::size_t min_span_length) {
  if (summary.empty()) throw std::invalid_argument("empty summary");
  ExtractivenessReport report;
  report.spans = find_acs(summary, document, min_span_length);
  const double len = static_cast<double>(summary.size());
  double total = 0.0;
  for (const CommonSpan& span : report.spans) {
    const double p = static_cast<double>(span.length) / len;
    report.proportions.push_back(p);
    total += extraction_penalty(p);
  }
  report.extraction_score = total;
  auto longest = longest_common_span(summary, document);
  report.plagiarism_score = longest ? static_cast<double>(longest->length) / len : 0.0;
  return report;
}

}  // namespace divsum
