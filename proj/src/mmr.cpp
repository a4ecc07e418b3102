#include "divsum/mmr.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace divsum {

namespace {

struct Moments {
  double mean = 0.0;
  double std = 0.0;  // population; exactly 0 when all values are equal
};

Moments moments_of(const std::vector<double>& values) {
  Moments m;
  if (values.empty()) return m;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  m.mean = sum / static_cast<double>(values.size());
  if (*lo == *hi) return m;  // avoids rounding noise posing as spread
  double sq = 0.0;
  for (double v : values) sq += (v - m.mean) * (v - m.mean);
  m.std = std::sqrt(sq / static_cast<double>(values.size()));
  return m;
}

}  // namespace

void MMRConfig::validate() const {
  if (num_picks == 0) throw std::invalid_argument("num_picks must be positive");
  if (!(beta >= 0.0 && beta <= 1.0)) throw std::invalid_argument("beta outside [0, 1]");
}

std::vector<double> ncos_doc(const Vec& document, const std::vector<Candidate>& candidates) {
  if (candidates.empty()) throw std::invalid_argument("empty candidates");
  std::vector<double> cos(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    cos[i] = cosine(document, candidates[i].vector);
  }
  const double max = *std::max_element(cos.begin(), cos.end());
  if (max <= 0.0) return std::vector<double>(candidates.size(), 0.0);
  for (double& c : cos) c /= max;
  return cos;
}

std::vector<double> sim1(const Vec& document, const std::vector<Candidate>& candidates) {
  std::vector<double> values = ncos_doc(document, candidates);
  const Moments m = moments_of(values);
  for (double& v : values) v = m.std > 0.0 ? 0.5 + (v - m.mean) / m.std : 0.5;
  return values;
}

std::vector<std::vector<double>> sim2_matrix(const std::vector<Candidate>& candidates) {
  const std::size_t n = candidates.size();
  if (n < 2) throw std::invalid_argument("sim2 needs at least 2 candidates");

  std::vector<std::vector<double>> cos(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      cos[i][j] = cos[j][i] = cosine(candidates[i].vector, candidates[j].vector);
    }
  }

  std::vector<std::vector<double>> out(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    // Normalize every cosine into pivot i by the largest cosine from i to
    // any other candidate, then z-score over the remaining candidates.
    double max = cos[i][i == 0 ? 1 : 0];
    for (std::size_t k = 0; k < n; ++k) {
      if (k != i) max = std::max(max, cos[i][k]);
    }
    std::vector<double> ncos(n, 0.0);
    if (max > 0.0) {
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) ncos[j] = cos[j][i] / max;
      }
    }
    std::vector<double> others;
    others.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) others.push_back(ncos[j]);
    }
    const Moments m = moments_of(others);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      out[j][i] = m.std > 0.0 ? 0.5 + (ncos[j] - m.mean) / m.std : 0.5;
    }
  }
  return out;
}

double sim2(const std::vector<Candidate>& candidates, std::size_t selected,
            std::size_t pivot) {
  if (selected == pivot) throw std::invalid_argument("selected and pivot must differ");
  if (selected >= candidates.size() || pivot >= candidates.size())
    throw std::invalid_argument("candidate index out of range");
  return sim2_matrix(candidates)[selected][pivot];
}

std::vector<Candidate> mmr_select(const Vec& document,
                                  const std::vector<Candidate>& candidates,
                                  const MMRConfig& config) {
  config.validate();
  if (candidates.empty()) throw std::invalid_argument("empty candidates");

  const std::size_t n = candidates.size();
  const std::vector<double> relevance = sim1(document, candidates);
  std::vector<std::vector<double>> redundancy;
  if (n >= 2) redundancy = sim2_matrix(candidates);

  std::vector<Candidate> picked;
  std::vector<char> in_pool(n, 1);
  std::vector<std::size_t> picked_idx;
  const std::size_t rounds = std::min(config.num_picks, n);
  for (std::size_t r = 0; r < rounds; ++r) {
    bool have_best = false;
    std::size_t best = 0;
    double best_score = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!in_pool[i]) continue;
      double worst_overlap = 0.0;  // stays 0 while nothing is picked
      bool first = true;
      for (std::size_t j : picked_idx) {
        const double s = redundancy[j][i];
        worst_overlap = first ? s : std::max(worst_overlap, s);
        first = false;
      }
      const double score = config.beta * relevance[i] - (1.0 - config.beta) * worst_overlap;
      if (!have_best || score > best_score) {
        have_best = true;
        best = i;
        best_score = score;
      }
    }
    in_pool[best] = 0;
    picked_idx.push_back(best);
    picked.push_back(candidates[best]);
  }
  return picked;
}

}  // namespace divsum
