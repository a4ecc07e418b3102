#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "divsum/embed.hpp"
#include "divsum/textproc.hpp"

namespace divsum {

struct Candidate {
  std::size_t index = 0;  // position in the candidate set; unique within it
  std::string sentence;
  TokenSeq tokens;
  Vec vector;
};

struct MMRConfig {
  std::size_t num_picks = 3;
  double beta = 0.35;

  void validate() const;
};

// Document-to-candidate cosines, each divided by the largest of them. All
// zeros when the largest cosine is not positive (that covers zero vectors
// and all-negative cases).
std::vector<double> ncos_doc(const Vec& document, const std::vector<Candidate>& candidates);

// Relevance term: the normalized cosines z-scored over the candidate set
// (population std) and shifted by +0.5. All 0.5 when every value is equal.
std::vector<double> sim1(const Vec& document, const std::vector<Candidate>& candidates);

// Redundancy term sim2(selected j, pivot i). Cosines to pivot i are divided
// by the largest cosine from i to any other candidate (all zeroed when that
// maximum is not positive), then z-scored over the candidates other than i
// and shifted by +0.5 (0.5 throughout when their spread is zero). Statistics
// depend on the full candidate set only, never on what was picked.
double sim2(const std::vector<Candidate>& candidates, std::size_t selected,
            std::size_t pivot);

// sim2 for every (selected, pivot) pair; [j][i] = sim2(j, i). Diagonal
// entries are unused and left at 0.
std::vector<std::vector<double>> sim2_matrix(const std::vector<Candidate>& candidates);

// Iterative selection: each round picks the unpicked candidate maximizing
//   beta * sim1(doc, c) - (1 - beta) * max over picked k of sim2(k, c)
// with the max term read as 0 while nothing is picked. Ties go to the lower
// candidate index. Stops after num_picks rounds or when the pool runs out.
std::vector<Candidate> mmr_select(const Vec& document,
                                  const std::vector<Candidate>& candidates,
                                  const MMRConfig& config);

}  // namespace divsum
