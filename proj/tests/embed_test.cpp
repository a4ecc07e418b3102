#include <doctest.h>

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "divsum/embed.hpp"
#include "divsum/textproc.hpp"

using divsum::cosine;
using divsum::embed_document;
using divsum::embed_sentence;
using divsum::EmbeddingTable;
using divsum::HashedEmbedder;
using divsum::load_embeddings;
using divsum::split_sentences;
using divsum::tokenize;
using divsum::Vec;

namespace {

// Unique temp file per test body; removed on destruction.
struct TempFile {
  std::filesystem::path path;

  explicit TempFile(const std::string& tag, const std::string& content) {
    path = std::filesystem::temp_directory_path() /
           ("divsum_embed_" + tag + "_" + std::to_string(::getpid()) + ".txt");
    std::ofstream out(path);
    out << content;
  }
  ~TempFile() { std::error_code ec; std::filesystem::remove(path, ec); }
};

double norm(const Vec& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("load_embeddings reads a headered table with bigram keys") {
  const TempFile file("header",
                      "4 3\n"
                      "storm 1 0 0\n"
                      "harbor 0 1 0\n"
                      "the_storm 0 0 1\n"
                      "dawn 0.5 0.5 0\n");
  const EmbeddingTable table = load_embeddings(file.path.string());
  CHECK(table.dimension() == 3);
  CHECK(table.unigram_count() == 3);
  CHECK(table.bigram_count() == 1);
  REQUIRE(table.unigram("storm").has_value());
  CHECK(*table.unigram("storm") == Vec{1, 0, 0});
  REQUIRE(table.bigram("the", "storm").has_value());
  CHECK(*table.bigram("the", "storm") == Vec{0, 0, 1});
  CHECK_FALSE(table.unigram("missing").has_value());
  CHECK_FALSE(table.bigram("storm", "harbor").has_value());
}

TEST_CASE("load_embeddings infers the dimension without a header") {
  const TempFile file("bare",
                      "alpha 1 2\n"
                      "beta 3 4\n");
  const EmbeddingTable table = load_embeddings(file.path.string());
  CHECK(table.dimension() == 2);
  CHECK(table.unigram_count() == 2);
  CHECK(*table.unigram("beta") == Vec{3, 4});
}

TEST_CASE("load_embeddings reports the offending line") {
  const TempFile file("short",
                      "3 3\n"
                      "alpha 1 2 3\n"
                      "beta 1 2\n");
  try {
    load_embeddings(file.path.string());
    FAIL("expected a parse error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("load_embeddings rejects non-numeric components") {
  const TempFile file("garbled", "alpha 1 x\n");
  CHECK_THROWS_AS(load_embeddings(file.path.string()), std::runtime_error);
}

TEST_CASE("load_embeddings rejects a missing file") {
  CHECK_THROWS_AS(load_embeddings("/nonexistent/embeddings.txt"), std::runtime_error);
}

TEST_CASE("embed_sentence averages unigrams and consecutive bigrams") {
  const TempFile file("avg",
                      "a 1 0\n"
                      "b 0 1\n"
                      "a_b 1 1\n");
  const EmbeddingTable table = load_embeddings(file.path.string());
  // "a b": unigrams (1,0) and (0,1), bigram (1,1); mean (2/3, 2/3).
  const Vec v = embed_sentence(table, tokenize("a b"));
  CHECK(std::abs(v[0] - 2.0 / 3.0) <= 1e-12);
  CHECK(std::abs(v[1] - 2.0 / 3.0) <= 1e-12);
  // "b a": no bigram entry, plain unigram mean.
  const Vec r = embed_sentence(table, tokenize("b a"));
  CHECK(std::abs(r[0] - 0.5) <= 1e-12);
  CHECK(std::abs(r[1] - 0.5) <= 1e-12);
}

TEST_CASE("embed_sentence skips what the table lacks") {
  const TempFile file("oov", "known 1 2\n");
  const EmbeddingTable table = load_embeddings(file.path.string());
  CHECK(embed_sentence(table, tokenize("known unknown")) == Vec{1, 2});
  CHECK(embed_sentence(table, tokenize("all unknown words")) == Vec{0, 0});
  CHECK(embed_sentence(table, tokenize("")) == Vec{0, 0});
}

TEST_CASE("embed_document counts bigrams across sentence boundaries") {
  const TempFile file("cross",
                      "a 1 0\n"
                      "b 0 1\n"
                      "b_a 4 4\n");
  const EmbeddingTable table = load_embeddings(file.path.string());
  // Built by hand so no terminator token sits between the sentences: the
  // concatenation reads [a b a b] and "b a" spans the boundary.
  const divsum::SentenceList sentences = {
      {"a b", divsum::tokenize("a b")},
      {"a b", divsum::tokenize("a b")},
  };
  const Vec whole = embed_document(table, sentences);

  // Must equal embedding the concatenated token stream as one phrase.
  const Vec direct = embed_sentence(table, divsum::tokenize("a b a b"));
  CHECK(whole == direct);

  // And the cross-boundary bigram must actually fire: remove it and the
  // embedding changes.
  const TempFile without("nocross",
                         "a 1 0\n"
                         "b 0 1\n");
  const EmbeddingTable plain = load_embeddings(without.path.string());
  CHECK(embed_document(plain, sentences) != whole);
}

TEST_CASE("cosine handles the degenerate vectors") {
  CHECK(cosine(Vec{1, 0}, Vec{0, 1}) == 0.0);
  CHECK(std::abs(cosine(Vec{2, 0}, Vec{5, 0}) - 1.0) <= 1e-12);
  CHECK(cosine(Vec{0, 0}, Vec{1, 1}) == 0.0);
  CHECK_THROWS_AS(cosine(Vec{1}, Vec{1, 2}), std::invalid_argument);
}

TEST_CASE("hashed embedder is deterministic and unit length") {
  const HashedEmbedder a(16, 7);
  const HashedEmbedder b(16, 7);
  const auto va = a.unigram("storm");
  const auto vb = b.unigram("storm");
  REQUIRE(va.has_value());
  CHECK(*va == *vb);
  CHECK(va->size() == 16);
  CHECK(std::abs(norm(*va) - 1.0) <= 1e-9);
}

TEST_CASE("hashed embedder varies by token and seed") {
  const HashedEmbedder a(8, 1);
  const HashedEmbedder b(8, 2);
  CHECK(*a.unigram("storm") != *a.unigram("harbor"));
  CHECK(*a.unigram("storm") != *b.unigram("storm"));
  CHECK_FALSE(a.bigram("the", "storm").has_value());
}

TEST_CASE("hashed embedder rejects a zero dimension") {
  CHECK_THROWS_AS(HashedEmbedder(0, 1), std::invalid_argument);
}
