#include "divsum/embed.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace divsum {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream in(line);
  std::string field;
  while (in >> field) fields.push_back(field);
  return fields;
}

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

double parse_component(const std::string& field, std::size_t line_no) {
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw std::runtime_error("embeddings: line " + std::to_string(line_no) +
                             ": bad component '" + field + "'");
  }
  return value;
}

// 64-bit FNV-1a over the token bytes; gives a stable per-token stream seed.
std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::optional<Vec> EmbeddingTable::unigram(const std::string& token) const {
  auto it = unigrams_.find(token);
  if (it == unigrams_.end()) return std::nullopt;
  return it->second;
}

std::optional<Vec> EmbeddingTable::bigram(const std::string& first,
                                          const std::string& second) const {
  if (bigrams_.empty()) return std::nullopt;
  auto it = bigrams_.find(first + "_" + second);
  if (it == bigrams_.end()) return std::nullopt;
  return it->second;
}

EmbeddingTable load_embeddings(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("embeddings: cannot open " + path);

  EmbeddingTable table;
  std::string line;
  std::size_t line_no = 0;
  bool saw_entry = false;
  while (std::getline(in, line)) {
    ++line_no;
    auto fields = split_fields(line);
    if (fields.empty()) continue;
    if (line_no == 1 && fields.size() == 2 && all_digits(fields[0]) && all_digits(fields[1])) {
      table.dimension_ = std::stoull(fields[1]);
      continue;
    }
    if (fields.size() < 2) {
      throw std::runtime_error("embeddings: line " + std::to_string(line_no) +
                               ": expected a token and at least one component");
    }
    Vec vec;
    vec.reserve(fields.size() - 1);
    for (std::size_t k = 1; k < fields.size(); ++k) {
      vec.push_back(parse_component(fields[k], line_no));
    }
    if (!saw_entry && table.dimension_ == 0) table.dimension_ = vec.size();
    if (vec.size() != table.dimension_) {
      throw std::runtime_error("embeddings: line " + std::to_string(line_no) +
                               ": expected " + std::to_string(table.dimension_) +
                               " components, got " + std::to_string(vec.size()));
    }
    saw_entry = true;
    const std::string& token = fields[0];
    if (token.find('_') != std::string::npos) {
      table.bigrams_[token] = std::move(vec);
    } else {
      table.unigrams_[token] = std::move(vec);
    }
  }
  return table;
}

HashedEmbedder::HashedEmbedder(std::size_t dimension, std::uint64_t seed)
    : dimension_(dimension), seed_(seed) {
  if (dimension == 0) throw std::invalid_argument("dimension must be positive");
}

std::optional<Vec> HashedEmbedder::unigram(const std::string& token) const {
  std::uint64_t state = fnv1a64(token) ^ (seed_ * 0x2545f4914f6cdd1dULL + 0x9e3779b97f4a7c15ULL);
  Vec v(dimension_);
  double norm_sq = 0.0;
  for (std::size_t k = 0; k < dimension_; ++k) {
    // Uniform in [-1, 1) from the top 53 bits.
    const double u = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-52 - 1.0;
    v[k] = u;
    norm_sq += u * u;
  }
  if (norm_sq <= 0.0) {
    v[0] = 1.0;
    return v;
  }
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (double& x : v) x *= inv;
  return v;
}

Vec embed_sentence(const Embedder& embedder, const TokenSeq& sentence) {
  Vec acc(embedder.dimension(), 0.0);
  std::size_t included = 0;
  auto add = [&](const Vec& v) {
    for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += v[k];
    ++included;
  };
  for (const std::string& tok : sentence.tokens) {
    if (auto v = embedder.unigram(tok)) add(*v);
  }
  for (std::size_t i = 0; i + 1 < sentence.size(); ++i) {
    if (auto v = embedder.bigram(sentence.tokens[i], sentence.tokens[i + 1])) add(*v);
  }
  if (included > 0) {
    for (double& x : acc) x /= static_cast<double>(included);
  }
  return acc;
}

Vec embed_document(const Embedder& embedder, const SentenceList& sentences) {
  TokenSeq all;
  for (const Sentence& s : sentences) {
    all.tokens.insert(all.tokens.end(), s.tokens.tokens.begin(), s.tokens.tokens.end());
  }
  return embed_sentence(embedder, all);
}

double cosine(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    dot += a[k] * b[k];
    na += a[k] * a[k];
    nb += b[k] * b[k];
  }
  if (na <= 0.0 || nb <= 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace divsum
