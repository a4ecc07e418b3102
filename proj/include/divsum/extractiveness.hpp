#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "divsum/textproc.hpp"

namespace divsum {

// A contiguous run of tokens shared verbatim between a summary and a
// document. Offsets are token positions.
struct CommonSpan {
  std::size_t summary_start = 0;
  std::size_t document_start = 0;
  std::size_t length = 0;

  bool operator==(const CommonSpan& other) const {
    return summary_start == other.summary_start &&
           document_start == other.document_start && length == other.length;
  }
};

struct ExtractivenessReport {
  double plagiarism_score = 0.0;
  double extraction_score = 0.0;
  std::vector<CommonSpan> spans;       // extraction order (longest first)
  std::vector<double> proportions;     // span length / summary length
};

// Longest contiguous token run present in both sequences. Ties go to the
// smallest summary_start, then the smallest document_start. Empty when the
// sequences share no token.
std::optional<CommonSpan> longest_common_span(const TokenSeq& summary,
                                              const TokenSeq& document);

// Length of the longest common span divided by summary length.
double plagiarism_score(const TokenSeq& summary, const TokenSeq& document);

// Greedy longest-first cover of the summary by common spans. Each round
// takes the longest span over still-uncovered summary positions (same
// tie-break as longest_common_span), masks those positions, and repeats
// until the longest remaining run is shorter than min_span_length. Document
// positions may be reused across spans; summary positions may not.
std::vector<CommonSpan> find_acs(const TokenSeq& summary, const TokenSeq& document,
                                 std::size_t min_span_length = 3);

// Per-span penalty p * (e^(p-1) - (1-p)/e) for a coverage proportion p in
// [0, 1]. Equals 0 at p=0 and 1 at p=1, grows superlinearly in between, so
// one long copied span costs more than several short ones of the same total
// length.
double extraction_penalty(double p);

// Full report: spans from find_acs, their proportions, the summed penalty,
// and the plagiarism score. min_span_length does not affect the plagiarism
// component.
ExtractivenessReport extraction_score(const TokenSeq& summary, const TokenSeq& document,
                                      std::size_t min_span_length = 3);

}  // namespace divsum
