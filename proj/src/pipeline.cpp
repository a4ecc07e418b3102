#include "divsum/pipeline.hpp"

#include <stdexcept>
#include <unordered_set>

#include "divsum/table_model.hpp"
#include "divsum/textproc.hpp"

namespace divsum {

namespace {

std::string dedup_key(const TokenSeq& tokens) {
  std::string key;
  for (const std::string& t : tokens.tokens) {
    key += t;
    key.push_back('\x1f');
  }
  return key;
}

}  // namespace

MergeResult merge_diverse_summaries(const std::string& document,
                                    const std::vector<std::string>& diverse_summaries,
                                    const Embedder& embedder, const MergeOptions& options) {
  options.mmr.validate();

  std::vector<Candidate> candidates;
  std::unordered_set<std::string> seen;
  for (const std::string& summary : diverse_summaries) {
    for (Sentence& sentence : split_sentences(summary)) {
      std::string key = dedup_key(sentence.tokens);
      if (!seen.insert(std::move(key)).second) continue;
      Candidate c;
      c.index = candidates.size();
      c.sentence = std::move(sentence.raw);
      c.tokens = std::move(sentence.tokens);
      candidates.push_back(std::move(c));
    }
  }
  if (candidates.empty()) throw std::invalid_argument("all summaries empty");

  for (Candidate& c : candidates) c.vector = embed_sentence(embedder, c.tokens);
  const Vec document_vector = embed_document(embedder, split_sentences(document));

  MergeResult result;
  result.diverse_inputs = diverse_summaries;
  result.selected = mmr_select(document_vector, candidates, options.mmr);

  std::string merged;
  for (const Candidate& c : result.selected) {
    if (!merged.empty()) merged.push_back(' ');
    merged += c.sentence;
  }
  result.final_summary = std::move(merged);
  result.report = extraction_score(tokenize(result.final_summary), tokenize(document),
                                   options.min_span_length);
  return result;
}

MergeResult decode_and_merge(const SequenceModel& model, const std::string& document,
                             const DecodeConfig& decode, const Embedder& embedder,
                             const MergeOptions& options) {
  const auto groups = diverse_beam_search(model, decode);
  std::vector<std::string> summaries;
  for (const auto& group : groups) {
    if (group.empty()) continue;
    if (options.all_hypotheses) {
      for (const BeamHypothesis& hyp : group) {
        summaries.push_back(detokenize_ids(model, hyp.tokens));
      }
    } else {
      summaries.push_back(detokenize_ids(model, group.front().tokens));
    }
  }
  return merge_diverse_summaries(document, summaries, embedder, options);
}

}  // namespace divsum
