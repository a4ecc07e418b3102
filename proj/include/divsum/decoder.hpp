#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace divsum {

using TokenId = int;

// A conditional scorer over a fixed vocabulary. The vocabulary carries two
// reserved entries, a start and a stop marker, identified by start_id() and
// stop_id(). step() maps the tokens generated so far (start marker excluded)
// to one log-score per vocabulary entry and must be deterministic; at least
// one entry per step should be finite.
class SequenceModel {
 public:
  virtual ~SequenceModel() = default;
  virtual const std::vector<std::string>& vocabulary() const = 0;
  virtual TokenId start_id() const = 0;
  virtual TokenId stop_id() const = 0;
  virtual std::vector<double> step(std::span<const TokenId> prefix) const = 0;
};

struct BeamHypothesis {
  std::vector<TokenId> tokens;  // generated tokens; ends with stop_id() unless cut at max_tokens
  double log_score = 0.0;       // sum of per-step log-scores; never includes diversity
  int group = 0;
  bool finished = false;
};

enum class DiversityKind { hamming, ngram };

struct DecodeConfig {
  int beam_width = 24;
  int groups = 6;
  double diversity_strength = 0.3;  // weight on the diversity term during selection
  DiversityKind diversity = DiversityKind::hamming;
  int ngram_order = 2;
  int min_tokens = 35;   // stop marker is masked below this many generated tokens
  int max_tokens = 150;  // live hypotheses are force-finished at this length
  bool length_norm = false;  // rank finished hypotheses by log_score / token count

  int group_width() const { return beam_width / groups; }
  void validate() const;
};

// Per-token penalty for re-using what earlier groups just chose: for each
// vocabulary entry, minus its count in prior_tokens_at_t divided by
// num_prior_beams. Zero everywhere when there are no prior beams.
std::vector<double> hamming_diversity(const std::vector<TokenId>& prior_tokens_at_t,
                                      std::size_t num_prior_beams,
                                      std::size_t vocab_size);

// Penalty for completing an n-gram earlier groups already produced anywhere
// in their sequences: minus the total occurrence count of the candidate's
// last n tokens across prior_sequences, divided by the number of prior
// sequences, clamped to [-1, 0]. Zero when the candidate holds fewer than n
// tokens or there are no prior sequences.
double ngram_diversity(const std::vector<std::vector<TokenId>>& prior_sequences,
                       std::span<const TokenId> candidate_with_token, int n);

// Breadth-first search keeping the top beam_width distinct (prefix, token)
// extensions per step, ranked by cumulative log-score with ties broken by
// lower token index then lower parent beam index. Hypotheses selecting the
// stop marker (or reaching max_tokens) retire and free their slot. Returns
// finished hypotheses best-first. groups/diversity settings in the config
// are ignored here; beam_width == 1 degenerates to greedy decoding.
std::vector<BeamHypothesis> beam_search(const SequenceModel& model,
                                        const DecodeConfig& config);

// Splits the beam into config.groups groups of beam_width / groups beams.
// All groups advance one step at a time, in group order; each group selects
// by cumulative log-score plus diversity_strength times the diversity term
// computed against the groups that already moved this step. Stored scores
// never include the diversity term. Returns one best-first list per group.
std::vector<std::vector<BeamHypothesis>> diverse_beam_search(const SequenceModel& model,
                                                             const DecodeConfig& config);

}  // namespace divsum
