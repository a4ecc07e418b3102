#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "divsum/embed.hpp"
#include "divsum/mmr.hpp"
#include "divsum/textproc.hpp"
#include "oracles.hpp"

using divsum::Candidate;
using divsum::HashedEmbedder;
using divsum::MMRConfig;
using divsum::mmr_select;
using divsum::ncos_doc;
using divsum::sim1;
using divsum::sim2;
using divsum::sim2_matrix;
using divsum::Vec;

namespace {

std::vector<Candidate> from_vectors(const std::vector<Vec>& vectors) {
  std::vector<Candidate> out;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    Candidate c;
    c.index = i;
    c.sentence = "s" + std::to_string(i);
    c.vector = vectors[i];
    out.push_back(std::move(c));
  }
  return out;
}

bool near(double a, double b) { return std::abs(a - b) <= 1e-9; }

}  // namespace

TEST_CASE("document cosines are scaled by the best one") {
  // Cosines against the document come out 0.8 and 0.4.
  const Vec document{1.0, 0.0};
  const auto candidates = from_vectors({{0.8, 0.6}, {0.4, std::sqrt(1.0 - 0.16)}});
  const auto scaled = ncos_doc(document, candidates);
  REQUIRE(scaled.size() == 2);
  CHECK(near(scaled[0], 1.0));
  CHECK(near(scaled[1], 0.5));
}

TEST_CASE("all scaled document cosines vanish when none is positive") {
  const Vec document{1.0, 0.0};
  const auto candidates = from_vectors({{-1.0, 0.0}, {0.0, 1.0}});
  const auto scaled = ncos_doc(document, candidates);
  CHECK(scaled == std::vector<double>{0.0, 0.0});
}

TEST_CASE("relevance z-scores center on one half") {
  const Vec document{1.0, 0.0};
  const auto candidates = from_vectors({{0.8, 0.6}, {0.4, std::sqrt(1.0 - 0.16)}});
  const auto relevance = sim1(document, candidates);
  // Scaled values {1.0, 0.5}: mean 0.75, deviation 0.25, so the z-scores are
  // plus and minus one.
  CHECK(near(relevance[0], 1.5));
  CHECK(near(relevance[1], -0.5));
}

TEST_CASE("relevance collapses to one half without spread") {
  const Vec document{1.0, 0.0};
  const auto candidates = from_vectors({{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}});
  for (double r : sim1(document, candidates)) CHECK(r == 0.5);
}

TEST_CASE("relevance means one half whenever there is spread") {
  const HashedEmbedder embedder(12, 3);
  oracles::TestRng rng(0x5eed0004);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng.below(7);
    std::vector<Vec> vectors;
    for (std::size_t i = 0; i < n; ++i) {
      vectors.push_back(*embedder.unigram("t" + std::to_string(rng.below(50))));
    }
    const Vec document = *embedder.unigram("doc" + std::to_string(trial));
    const auto relevance = sim1(document, from_vectors(vectors));
    double mean = 0.0;
    for (double r : relevance) mean += r;
    mean /= static_cast<double>(relevance.size());
    const bool spreadless =
        *std::min_element(relevance.begin(), relevance.end()) ==
        *std::max_element(relevance.begin(), relevance.end());
    if (!spreadless) CHECK(near(mean, 0.5));
  }
}

TEST_CASE("pairwise overlap normalizes inside the pivot column") {
  // Pivot c0 sees cosines 0.9 (c1) and 0.3 (c2): scaled {1, 1/3}, z-scored
  // to 1.5 and -0.5.
  const auto candidates = from_vectors({
      {1.0, 0.0},
      {0.9, std::sqrt(1.0 - 0.81)},
      {0.3, std::sqrt(1.0 - 0.09)},
  });
  const auto matrix = sim2_matrix(candidates);
  CHECK(near(matrix[1][0], 1.5));
  CHECK(near(matrix[2][0], -0.5));
  CHECK(near(sim2(candidates, 1, 0), 1.5));
  CHECK(near(sim2(candidates, 2, 0), -0.5));
}

TEST_CASE("pairwise overlap with two candidates is flat") {
  const auto candidates = from_vectors({{1.0, 0.0}, {0.6, 0.8}});
  const auto matrix = sim2_matrix(candidates);
  CHECK(matrix[1][0] == 0.5);
  CHECK(matrix[0][1] == 0.5);
}

TEST_CASE("pairwise overlap validates its arguments") {
  const auto one = from_vectors({{1.0, 0.0}});
  CHECK_THROWS_AS(sim2_matrix(one), std::invalid_argument);
  const auto two = from_vectors({{1.0, 0.0}, {0.0, 1.0}});
  CHECK_THROWS_AS(sim2(two, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(sim2(two, 2, 0), std::invalid_argument);
}

TEST_CASE("selection validates its inputs") {
  MMRConfig config;
  CHECK_THROWS_AS(mmr_select(Vec{1.0}, {}, config), std::invalid_argument);
  config.num_picks = 0;
  CHECK_THROWS_AS(mmr_select(Vec{1.0}, from_vectors({{1.0}}), config),
                  std::invalid_argument);
  config.num_picks = 1;
  config.beta = 1.5;
  CHECK_THROWS_AS(mmr_select(Vec{1.0}, from_vectors({{1.0}}), config),
                  std::invalid_argument);
}

TEST_CASE("selection returns every candidate when asked for more") {
  MMRConfig config;
  config.num_picks = 5;
  const Vec document{1.0, 0.0};
  const auto picked = mmr_select(document, from_vectors({{1.0, 0.0}, {0.0, 1.0}}), config);
  CHECK(picked.size() == 2);
}

TEST_CASE("pure relevance ranks by document similarity") {
  MMRConfig config;
  config.beta = 1.0;
  config.num_picks = 2;
  const Vec document{1.0, 0.0};
  // Second candidate hugs the document closest.
  const auto candidates = from_vectors({{0.4, std::sqrt(1.0 - 0.16)}, {0.9, std::sqrt(0.19)},
                                        {0.6, 0.8}});
  const auto picked = mmr_select(document, candidates, config);
  REQUIRE(picked.size() == 2);
  CHECK(picked[0].index == 1);
  CHECK(picked[1].index == 2);
}

TEST_CASE("identical candidates fall back to input order") {
  MMRConfig config;
  config.num_picks = 3;
  const Vec document{1.0, 0.0};
  const auto picked =
      mmr_select(document, from_vectors({{0.6, 0.8}, {0.6, 0.8}, {0.6, 0.8}}), config);
  REQUIRE(picked.size() == 3);
  CHECK(picked[0].index == 0);
  CHECK(picked[1].index == 1);
  CHECK(picked[2].index == 2);
}

TEST_CASE("redundancy pushes the second pick away from the first") {
  MMRConfig config;
  config.num_picks = 2;
  config.beta = 0.35;
  const Vec document{1.0, 0.0};
  // c0 and c1 nearly coincide and lead on relevance; c2 trails on relevance
  // but stands apart, so it takes the second slot.
  const auto candidates = from_vectors({
      {0.99, std::sqrt(1.0 - 0.9801)},
      {0.98, std::sqrt(1.0 - 0.9604)},
      {0.2, std::sqrt(1.0 - 0.04)},
  });
  const auto picked = mmr_select(document, candidates, config);
  REQUIRE(picked.size() == 2);
  CHECK(picked[0].index == 0);
  CHECK(picked[1].index == 2);
}

TEST_CASE("selection agrees with the rescan oracle on random sets") {
  const HashedEmbedder embedder(10, 11);
  oracles::TestRng rng(0x5eed0005);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 1 + rng.below(8);
    std::vector<Vec> vectors;
    for (std::size_t i = 0; i < n; ++i) {
      // Occasional duplicates keep the tie-break honest.
      const std::size_t key = rng.below(n + 2);
      vectors.push_back(*embedder.unigram("cand" + std::to_string(key)));
    }
    const Vec document = trial % 7 == 0 ? Vec(10, 0.0)
                                        : *embedder.unigram("doc" + std::to_string(trial));
    MMRConfig config;
    config.num_picks = 1 + rng.below(4);
    config.beta = 0.35;
    CAPTURE(trial);
    const auto picked = mmr_select(document, from_vectors(vectors), config);
    const auto want = oracles::mmr_by_rescan(from_vectors(vectors), document,
                                             config.num_picks, config.beta);
    REQUIRE(picked.size() == want.size());
    for (std::size_t k = 0; k < picked.size(); ++k) CHECK(picked[k].index == want[k]);
  }
}
