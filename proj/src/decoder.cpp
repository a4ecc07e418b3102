#include "divsum/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace divsum {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct GroupState {
  std::vector<BeamHypothesis> live;
  std::vector<BeamHypothesis> finished;
};

struct Extension {
  double selection_score;  // base score plus weighted diversity
  double base_score;       // what the hypothesis will actually carry
  TokenId token;
  std::size_t parent;
};

// Ranking during selection: higher selection score first, then lower token
// index, then lower parent beam index.
bool extension_precedes(const Extension& a, const Extension& b) {
  if (a.selection_score != b.selection_score) return a.selection_score > b.selection_score;
  if (a.token != b.token) return a.token < b.token;
  return a.parent < b.parent;
}

int content_length(const BeamHypothesis& hyp, TokenId stop) {
  auto n = static_cast<int>(hyp.tokens.size());
  if (!hyp.tokens.empty() && hyp.tokens.back() == stop) --n;
  return n;
}

// Final ordering of finished hypotheses. With length_norm the key is the
// score divided by the generated token count (stop marker excluded).
void rank_finished(std::vector<BeamHypothesis>& finished, TokenId stop, bool length_norm) {
  auto key = [&](const BeamHypothesis& h) {
    if (!length_norm) return h.log_score;
    const int len = std::max(content_length(h, stop), 1);
    return h.log_score / static_cast<double>(len);
  };
  std::sort(finished.begin(), finished.end(),
            [&](const BeamHypothesis& a, const BeamHypothesis& b) {
              const double ka = key(a), kb = key(b);
              if (ka != kb) return ka > kb;
              return a.tokens < b.tokens;
            });
}

// One group's step: expand every live hypothesis by every admissible token,
// apply the diversity adjustment to the selection score only, keep the top
// group_width extensions, and retire the ones that finish. Returns the
// tokens the group chose this step.
std::vector<TokenId> advance_group(const SequenceModel& model, const DecodeConfig& config,
                                   GroupState& group, int group_index, int width,
                                   const std::vector<TokenId>& prior_tokens_at_t,
                                   const std::vector<std::vector<TokenId>>& prior_sequences) {
  const TokenId start = model.start_id();
  const TokenId stop = model.stop_id();
  const std::size_t vocab_size = model.vocabulary().size();
  const double lambda = config.diversity_strength;

  std::vector<double> hamming;
  if (lambda != 0.0 && config.diversity == DiversityKind::hamming && !prior_tokens_at_t.empty()) {
    hamming = hamming_diversity(prior_tokens_at_t, prior_tokens_at_t.size(), vocab_size);
  }
  const bool use_ngram =
      lambda != 0.0 && config.diversity == DiversityKind::ngram && !prior_sequences.empty();

  std::vector<Extension> extensions;
  std::vector<TokenId> probe;  // scratch prefix+token buffer for n-gram scoring
  for (std::size_t p = 0; p < group.live.size(); ++p) {
    const BeamHypothesis& parent = group.live[p];
    const std::vector<double> scores = model.step(parent.tokens);
    if (scores.size() != vocab_size)
      throw std::runtime_error("model step returned wrong vocabulary size");
    const bool stop_allowed = static_cast<int>(parent.tokens.size()) >= config.min_tokens;
    bool extended = false;
    for (std::size_t v = 0; v < vocab_size; ++v) {
      const auto token = static_cast<TokenId>(v);
      if (token == start) continue;
      if (token == stop && !stop_allowed) continue;
      const double s = scores[v];
      if (s == kNegInf || std::isnan(s)) continue;
      double diversity = 0.0;
      if (!hamming.empty()) {
        diversity = hamming[v];
      } else if (use_ngram) {
        probe.assign(parent.tokens.begin(), parent.tokens.end());
        probe.push_back(token);
        diversity = ngram_diversity(prior_sequences, probe, config.ngram_order);
      }
      extensions.push_back(Extension{parent.log_score + s + lambda * diversity,
                                     parent.log_score + s, token, p});
      extended = true;
    }
    if (!extended) {
      // Nothing admissible for this hypothesis; close it out as-is rather
      // than erroring.
      BeamHypothesis cut = parent;
      cut.finished = true;
      group.finished.push_back(std::move(cut));
    }
  }

  const std::size_t keep = std::min<std::size_t>(width, extensions.size());
  std::partial_sort(extensions.begin(), extensions.begin() + keep, extensions.end(),
                    extension_precedes);

  std::vector<BeamHypothesis> next_live;
  std::vector<TokenId> chosen;
  chosen.reserve(keep);
  for (std::size_t k = 0; k < keep; ++k) {
    const Extension& ext = extensions[k];
    BeamHypothesis hyp;
    hyp.tokens = group.live[ext.parent].tokens;
    hyp.tokens.push_back(ext.token);
    hyp.log_score = ext.base_score;
    hyp.group = group_index;
    chosen.push_back(ext.token);
    const bool stopped = ext.token == stop;
    const bool at_cap = !stopped && static_cast<int>(hyp.tokens.size()) >= config.max_tokens;
    if (stopped || at_cap) {
      hyp.finished = true;
      group.finished.push_back(std::move(hyp));
    } else {
      next_live.push_back(std::move(hyp));
    }
  }
  group.live = std::move(next_live);
  return chosen;
}

std::vector<std::vector<BeamHypothesis>> run_groups(const SequenceModel& model,
                                                    const DecodeConfig& config, int groups,
                                                    int width) {
  std::vector<GroupState> states(groups);
  for (auto& g : states) g.live.push_back(BeamHypothesis{});

  for (int t = 0; t < config.max_tokens; ++t) {
    bool any_live = false;
    std::vector<TokenId> prior_tokens;
    std::vector<std::vector<TokenId>> prior_sequences;
    for (int g = 0; g < groups; ++g) {
      if (states[g].live.empty()) continue;
      any_live = true;
      std::vector<TokenId> chosen =
          advance_group(model, config, states[g], g, width, prior_tokens, prior_sequences);
      prior_tokens.insert(prior_tokens.end(), chosen.begin(), chosen.end());
      if (config.diversity == DiversityKind::ngram) {
        for (const BeamHypothesis& h : states[g].live) prior_sequences.push_back(h.tokens);
        for (const BeamHypothesis& h : states[g].finished) prior_sequences.push_back(h.tokens);
      }
    }
    if (!any_live) break;
  }

  std::vector<std::vector<BeamHypothesis>> out(groups);
  for (int g = 0; g < groups; ++g) {
    rank_finished(states[g].finished, model.stop_id(), config.length_norm);
    out[g] = std::move(states[g].finished);
  }
  return out;
}

}  // namespace

void DecodeConfig::validate() const {
  if (beam_width < 1) throw std::invalid_argument("beam_width must be positive");
  if (groups < 1) throw std::invalid_argument("groups must be positive");
  if (beam_width % groups != 0)
    throw std::invalid_argument("groups must divide beam_width");
  if (diversity_strength < 0.0)
    throw std::invalid_argument("diversity_strength must be non-negative");
  if (ngram_order < 1) throw std::invalid_argument("ngram_order must be positive");
  if (min_tokens < 1) throw std::invalid_argument("min_tokens must be positive");
  if (max_tokens < min_tokens)
    throw std::invalid_argument("max_tokens must be at least min_tokens");
}

std::vector<double> hamming_diversity(const std::vector<TokenId>& prior_tokens_at_t,
                                      std::size_t num_prior_beams,
                                      std::size_t vocab_size) {
  std::vector<double> out(vocab_size, 0.0);
  if (prior_tokens_at_t.empty() || num_prior_beams == 0) return out;
  for (TokenId t : prior_tokens_at_t) {
    if (t >= 0 && static_cast<std::size_t>(t) < vocab_size)
      out[t] -= 1.0 / static_cast<double>(num_prior_beams);
  }
  return out;
}

double ngram_diversity(const std::vector<std::vector<TokenId>>& prior_sequences,
                       std::span<const TokenId> candidate_with_token, int n) {
  if (prior_sequences.empty()) return 0.0;
  if (candidate_with_token.size() < static_cast<std::size_t>(n)) return 0.0;
  const auto gram = candidate_with_token.subspan(candidate_with_token.size() - n);
  std::size_t occurrences = 0;
  for (const auto& seq : prior_sequences) {
    if (seq.size() < static_cast<std::size_t>(n)) continue;
    for (std::size_t i = 0; i + n <= seq.size(); ++i) {
      if (std::equal(gram.begin(), gram.end(), seq.begin() + i)) ++occurrences;
    }
  }
  const double penalty =
      static_cast<double>(occurrences) / static_cast<double>(prior_sequences.size());
  return -std::min(penalty, 1.0);
}

std::vector<BeamHypothesis> beam_search(const SequenceModel& model,
                                        const DecodeConfig& config) {
  DecodeConfig plain = config;
  plain.groups = 1;
  plain.diversity_strength = 0.0;
  plain.validate();
  return run_groups(model, plain, 1, plain.beam_width)[0];
}

std::vector<std::vector<BeamHypothesis>> diverse_beam_search(const SequenceModel& model,
                                                             const DecodeConfig& config) {
  config.validate();
  return run_groups(model, config, config.groups, config.group_width());
}

}  // namespace divsum
