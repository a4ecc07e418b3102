#include "divsum/textproc.hpp"

#include <array>
#include <cctype>

namespace divsum {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_peelable_punct(char c) {
  return c == '.' || c == ',' || c == '!' || c == '?' || c == ';' || c == ':';
}

char lower_ascii(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

bool is_upper_ascii(char c) { return c >= 'A' && c <= 'Z'; }

void emit(const std::string& text, std::size_t begin, std::size_t end, TokenSeq& out) {
  std::string tok;
  tok.reserve(end - begin);
  for (std::size_t k = begin; k < end; ++k) tok.push_back(lower_ascii(text[k]));
  out.tokens.push_back(std::move(tok));
  out.source_char_spans.emplace_back(begin, end);
}

// Words whose closing period does not end a sentence. Lowercased, period
// included. Fixed list; extending it changes published splits.
constexpr std::array<const char*, 6> kGuardedAbbreviations = {
    "mr.", "mrs.", "dr.", "u.s.", "e.g.", "i.e.",
};

bool is_guarded_abbreviation(const std::string& text, std::size_t period_pos) {
  std::size_t begin = period_pos;
  while (begin > 0 && !is_space(text[begin - 1])) --begin;
  std::string word;
  word.reserve(period_pos + 1 - begin);
  for (std::size_t k = begin; k <= period_pos; ++k) word.push_back(lower_ascii(text[k]));
  for (const char* abbr : kGuardedAbbreviations) {
    if (word == abbr) return true;
  }
  return false;
}

std::string trim(const std::string& text, std::size_t begin, std::size_t end) {
  while (begin < end && is_space(text[begin])) ++begin;
  while (end > begin && is_space(text[end - 1])) --end;
  return text.substr(begin, end - begin);
}

}  // namespace

TokenSeq make_token_seq(std::vector<std::string> tokens) {
  TokenSeq seq;
  seq.tokens = std::move(tokens);
  return seq;
}

TokenSeq tokenize(const std::string& text) {
  TokenSeq out;
  const std::size_t n = text.size();
  std::size_t i = 0;
  while (i < n) {
    if (is_space(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < n && !is_space(text[j])) ++j;
    // Chunk [i, j). Leading and trailing peelable marks become their own
    // tokens; the remaining core is kept whole.
    std::size_t b = i;
    while (b < j && is_peelable_punct(text[b])) {
      emit(text, b, b + 1, out);
      ++b;
    }
    std::size_t core_end = j;
    while (core_end > b && is_peelable_punct(text[core_end - 1])) --core_end;
    if (core_end > b) emit(text, b, core_end, out);
    for (std::size_t k = core_end; k < j; ++k) emit(text, k, k + 1, out);
    i = j;
  }
  return out;
}

std::string detokenize(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

SentenceList split_sentences(const std::string& text) {
  SentenceList out;
  const std::size_t n = text.size();
  std::size_t start = 0;

  auto flush = [&](std::size_t begin, std::size_t end) {
    std::string raw = trim(text, begin, end);
    if (raw.empty()) return;
    Sentence s;
    s.tokens = tokenize(raw);
    s.raw = std::move(raw);
    if (!s.tokens.empty()) out.push_back(std::move(s));
  };

  for (std::size_t i = 0; i < n; ++i) {
    const char c = text[i];
    if (c != '.' && c != '!' && c != '?') continue;
    // A boundary needs whitespace plus an uppercase letter after the mark,
    // or nothing but whitespace to the end of the text.
    std::size_t j = i + 1;
    while (j < n && is_space(text[j])) ++j;
    const bool at_end = (j == n);
    const bool before_capital = (j > i + 1 && j < n && is_upper_ascii(text[j]));
    if (!at_end && !before_capital) continue;
    if (c == '.' && is_guarded_abbreviation(text, i)) continue;
    flush(start, i + 1);
    start = j;
  }
  flush(start, n);
  return out;
}

}  // namespace divsum
