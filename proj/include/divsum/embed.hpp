#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "divsum/textproc.hpp"

namespace divsum {

using Vec = std::vector<double>;

// Token-to-vector lookup. Implementations are immutable once built and safe
// to query from multiple threads.
class Embedder {
 public:
  virtual ~Embedder() = default;
  virtual std::size_t dimension() const = 0;
  virtual std::optional<Vec> unigram(const std::string& token) const = 0;
  virtual std::optional<Vec> bigram(const std::string& first,
                                    const std::string& second) const {
    return std::nullopt;
  }
};

// Vectors loaded from a text file: one entry per line, token followed by its
// components, all space-separated. A first line of two integers is read as a
// "count dimension" header. Entries whose token contains '_' are bigram
// vectors keyed "first_second".
class EmbeddingTable : public Embedder {
 public:
  std::size_t dimension() const override { return dimension_; }
  std::optional<Vec> unigram(const std::string& token) const override;
  std::optional<Vec> bigram(const std::string& first,
                            const std::string& second) const override;

  std::size_t unigram_count() const { return unigrams_.size(); }
  std::size_t bigram_count() const { return bigrams_.size(); }

  friend EmbeddingTable load_embeddings(const std::string& path);

 private:
  std::size_t dimension_ = 0;
  std::unordered_map<std::string, Vec> unigrams_;
  std::unordered_map<std::string, Vec> bigrams_;
};

// Parses the text format above. Malformed lines and dimension mismatches
// raise with the offending line number.
EmbeddingTable load_embeddings(const std::string& path);

// Deterministic stand-in for a trained table: every token maps to a
// pseudo-random unit vector derived from (seed, token) alone. No bigrams.
class HashedEmbedder : public Embedder {
 public:
  HashedEmbedder(std::size_t dimension, std::uint64_t seed);
  std::size_t dimension() const override { return dimension_; }
  std::optional<Vec> unigram(const std::string& token) const override;

 private:
  std::size_t dimension_;
  std::uint64_t seed_;
};

// Mean of the vectors of all in-table unigrams plus, when the embedder has
// them, all consecutive-token bigrams. Out-of-table items are skipped; a
// sentence with nothing in the table embeds to the zero vector.
Vec embed_sentence(const Embedder& embedder, const TokenSeq& sentence);

// Embeds the concatenation of all sentence tokens as one long phrase, so
// bigrams spanning adjacent sentences count too.
Vec embed_document(const Embedder& embedder, const SentenceList& sentences);

// Cosine similarity; 0 when either vector has zero norm.
double cosine(const Vec& a, const Vec& b);

}  // namespace divsum
