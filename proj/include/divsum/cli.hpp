#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "divsum/decoder.hpp"
#include "divsum/mmr.hpp"

namespace divsum::cli {

// Shared JSONL conventions: one record per line; every record needs a string
// "id". A record that cannot be processed yields {"id", "error"} on its line
// instead of a result, and the command's return value counts such records.
// Output lines always follow input order, whatever DIVSUM_THREADS says.

struct ScoreOptions {
  std::size_t min_span_length = 3;
};

struct DecodeOptions {
  std::string model_path;
  DecodeConfig config;
};

struct EmbedderChoice {
  std::optional<std::string> embeddings_path;  // wins over the hashed fallback
  std::size_t hash_dimension = 64;
  std::uint64_t hash_seed = 0;
};

struct MergeCliOptions {
  EmbedderChoice embedder;
  MMRConfig mmr;
  bool all_hypotheses = false;
  std::optional<std::string> model_path;  // set: decode per record instead of
                                          // reading its "candidates"
  DecodeConfig decode;                    // used only with model_path
  std::size_t min_span_length = 3;
};

// Records {id, document, summary}; emits per-record extractiveness plus a
// trailing {"aggregate": true, ...} line with corpus means.
std::size_t run_score(std::istream& in, std::ostream& out, const ScoreOptions& options);

// Records {id, reference, candidate}; per-record triples plus a trailing
// aggregate line with mean F1 components.
std::size_t run_rouge(std::istream& in, std::ostream& out);

// No input records: decodes the model and emits one JSON document holding
// every group's finished hypotheses.
void run_decode(std::ostream& out, const DecodeOptions& options);

// Records {id, document, candidates} (or {id, document} with model_path);
// emits per-record merge results.
std::size_t run_merge(std::istream& in, std::ostream& out, const MergeCliOptions& options);

// Worker-pool width: DIVSUM_THREADS when set (clamped to at least 1),
// otherwise the hardware concurrency.
unsigned thread_limit();

}  // namespace divsum::cli
