#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace divsum {

// Tokenized text. Tokens are lowercased. source_char_spans, when filled by
// tokenize(), holds the [begin, end) byte offsets of each token in the raw
// input; sequences built directly from token lists leave it empty.
struct TokenSeq {
  std::vector<std::string> tokens;
  std::vector<std::pair<std::size_t, std::size_t>> source_char_spans;

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }

  bool operator==(const TokenSeq& other) const { return tokens == other.tokens; }
};

TokenSeq make_token_seq(std::vector<std::string> tokens);

// Lowercases, splits on whitespace, and peels the punctuation marks
// . , ! ? ; : off the ends of each chunk as single-character tokens.
// Hyphens, apostrophes, and any punctuation interior to a chunk stay put,
// so "co-op," becomes ["co-op", ","]. Tokenizing the space-joined output
// again yields the same tokens.
TokenSeq tokenize(const std::string& text);

// Joins tokens with single spaces.
std::string detokenize(const std::vector<std::string>& tokens);

struct Sentence {
  std::string raw;
  TokenSeq tokens;
};

using SentenceList = std::vector<Sentence>;

// Splits on . ! ? when followed by whitespace and an uppercase letter, or by
// end of text. A period is ignored when the word it closes is on the
// abbreviation guard list (mr., mrs., dr., u.s., e.g., i.e.). Sentences are
// trimmed; whitespace-only segments are dropped.
SentenceList split_sentences(const std::string& text);

}  // namespace divsum
