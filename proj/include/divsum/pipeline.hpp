#pragma once

#include <string>
#include <vector>

#include "divsum/decoder.hpp"
#include "divsum/embed.hpp"
#include "divsum/extractiveness.hpp"
#include "divsum/mmr.hpp"

namespace divsum {

struct MergeOptions {
  MMRConfig mmr;
  std::size_t min_span_length = 3;  // for the extractiveness report only
  bool all_hypotheses = false;      // decode_and_merge: feed every finished
                                    // hypothesis to selection instead of each
                                    // group's best
};

struct MergeResult {
  std::string final_summary;
  std::vector<Candidate> selected;          // in selection order
  std::vector<std::string> diverse_inputs;  // the summaries that were merged
  ExtractivenessReport report;              // final summary against the document
};

// Splits each summary into sentences, drops exact token-level duplicates
// (first occurrence wins), embeds sentences and document, selects with
// mmr_select, and joins the picked sentences in selection order. At least
// one summary must contain a sentence.
MergeResult merge_diverse_summaries(const std::string& document,
                                    const std::vector<std::string>& diverse_summaries,
                                    const Embedder& embedder, const MergeOptions& options);

// Runs diverse_beam_search and merges the decoded texts: by default the best
// hypothesis of each group, or every finished hypothesis when
// options.all_hypotheses is set.
MergeResult decode_and_merge(const SequenceModel& model, const std::string& document,
                             const DecodeConfig& decode, const Embedder& embedder,
                             const MergeOptions& options);

}  // namespace divsum
