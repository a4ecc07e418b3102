#pragma once

#include "divsum/textproc.hpp"

namespace divsum {

struct RougeTriple {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct RougeScores {
  RougeTriple rouge1;
  RougeTriple rouge2;
  RougeTriple rougeL;
};

// Clipped n-gram overlap, n in {1, 2}. Precision counts against candidate
// n-grams, recall against reference n-grams; each overlap is clipped at the
// reference multiplicity. F1 is 0 when both components are 0. The reference
// must hold at least one n-gram.
RougeTriple rouge_n(const TokenSeq& candidate, const TokenSeq& reference, int n);

// Longest common subsequence variant: tokens must appear in order but need
// not be contiguous (unlike the extractiveness spans). Both sequences must
// be non-empty.
RougeTriple rouge_l(const TokenSeq& candidate, const TokenSeq& reference);

// rouge_n(1), rouge_n(2), rouge_l in one pass. Same preconditions.
RougeScores rouge_all(const TokenSeq& candidate, const TokenSeq& reference);

}  // namespace divsum
