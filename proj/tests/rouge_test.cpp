#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "divsum/rouge.hpp"
#include "divsum/textproc.hpp"
#include "oracles.hpp"

using divsum::make_token_seq;
using divsum::rouge_all;
using divsum::rouge_l;
using divsum::rouge_n;
using divsum::tokenize;
using divsum::TokenSeq;

namespace {

TokenSeq seq(std::vector<std::string> tokens) { return make_token_seq(std::move(tokens)); }

bool near(double a, double b) { return std::abs(a - b) <= 1e-4; }

}  // namespace

TEST_CASE("rouge scores for a clean prefix candidate") {
  const auto reference = tokenize("the cat sat on the mat");
  const auto candidate = tokenize("the cat sat");

  const auto r1 = rouge_n(candidate, reference, 1);
  CHECK(near(r1.precision, 1.0));
  CHECK(near(r1.recall, 0.5));
  CHECK(near(r1.f1, 0.6667));

  const auto r2 = rouge_n(candidate, reference, 2);
  CHECK(near(r2.precision, 1.0));
  CHECK(near(r2.recall, 0.4));
  CHECK(near(r2.f1, 0.5714));

  const auto rl = rouge_l(candidate, reference);
  CHECK(near(rl.precision, 1.0));
  CHECK(near(rl.recall, 0.5));
  CHECK(near(rl.f1, 0.6667));
}

TEST_CASE("identical sequences score one everywhere") {
  const auto text = tokenize("the quick brown fox");
  const auto scores = rouge_all(text, text);
  for (const auto& triple : {scores.rouge1, scores.rouge2, scores.rougeL}) {
    CHECK(triple.precision == 1.0);
    CHECK(triple.recall == 1.0);
    CHECK(triple.f1 == 1.0);
  }
}

TEST_CASE("disjoint sequences score zero everywhere, f1 included") {
  const auto scores = rouge_all(tokenize("alpha beta gamma"), tokenize("delta epsilon zeta"));
  for (const auto& triple : {scores.rouge1, scores.rouge2, scores.rougeL}) {
    CHECK(triple.precision == 0.0);
    CHECK(triple.recall == 0.0);
    CHECK(triple.f1 == 0.0);
  }
}

TEST_CASE("unigram overlap clips at reference multiplicity") {
  // Candidate has three "go", reference only two: two count.
  const auto r1 = rouge_n(seq({"go", "go", "go"}), seq({"go", "go", "stop"}), 1);
  CHECK(near(r1.precision, 2.0 / 3.0));
  CHECK(near(r1.recall, 2.0 / 3.0));
}

TEST_CASE("bigram overlap respects order") {
  const auto r2 = rouge_n(seq({"d", "c", "b", "a"}), seq({"a", "b", "c", "d"}), 2);
  CHECK(r2.precision == 0.0);
  CHECK(r2.recall == 0.0);
  CHECK(r2.f1 == 0.0);
}

TEST_CASE("rouge_l matches scattered subsequences, not just runs") {
  // "a b" is a subsequence of "a x b" though never contiguous.
  const auto rl = rouge_l(seq({"a", "b"}), seq({"a", "x", "b"}));
  CHECK(near(rl.precision, 1.0));
  CHECK(near(rl.recall, 2.0 / 3.0));
}

TEST_CASE("rouge_n accepts only unigrams and bigrams") {
  const auto a = seq({"a", "b", "c"});
  CHECK_THROWS_AS(rouge_n(a, a, 0), std::invalid_argument);
  CHECK_THROWS_AS(rouge_n(a, a, 3), std::invalid_argument);
}

TEST_CASE("rouge_n needs a reference long enough for the order") {
  CHECK_THROWS_AS(rouge_n(seq({"a", "b"}), seq({"a"}), 2), std::invalid_argument);
  CHECK_THROWS_AS(rouge_n(seq({"a"}), seq({}), 1), std::invalid_argument);
  // A short candidate is fine: it simply has no bigrams.
  const auto r2 = rouge_n(seq({"a"}), seq({"a", "b"}), 2);
  CHECK(r2.precision == 0.0);
  CHECK(r2.recall == 0.0);
}

TEST_CASE("rouge_l rejects empty sequences") {
  CHECK_THROWS_AS(rouge_l(seq({}), seq({"a"})), std::invalid_argument);
  CHECK_THROWS_AS(rouge_l(seq({"a"}), seq({})), std::invalid_argument);
}

TEST_CASE("rouge_all agrees with the individual scorers") {
  const auto candidate = tokenize("council approves budget after long debate");
  const auto reference = tokenize("council approves the new harbor budget after debate");
  const auto all = rouge_all(candidate, reference);
  const auto r1 = rouge_n(candidate, reference, 1);
  const auto rl = rouge_l(candidate, reference);
  CHECK(all.rouge1.f1 == r1.f1);
  CHECK(all.rougeL.f1 == rl.f1);
}

TEST_CASE("subsequence length agrees with the full-table oracle on random pairs") {
  const std::vector<std::string> alphabet = {"a", "b", "c", "d"};
  oracles::TestRng rng(0x5eed0003);
  for (int trial = 0; trial < 300; ++trial) {
    const auto c = oracles::random_tokens(rng, alphabet, 1 + rng.below(30));
    const auto r = oracles::random_tokens(rng, alphabet, 1 + rng.below(30));
    CAPTURE(trial);
    const auto rl = rouge_l(seq(c), seq(r));
    const auto lcs = static_cast<double>(oracles::lcs_by_full_table(c, r));
    CHECK(near(rl.precision, lcs / static_cast<double>(c.size())));
    CHECK(near(rl.recall, lcs / static_cast<double>(r.size())));
  }
}
