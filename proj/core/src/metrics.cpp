#include "splinecal/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace splinecal {

std::size_t bin_index(double score, std::size_t n_bins) {
  std::size_t b = static_cast<std::size_t>(score * static_cast<double>(n_bins));
  if (b >= n_bins) b = n_bins - 1;
  // floor(score * n_bins) can disagree with the edge comparisons by one
  // ulp; settle against the edges themselves.
  while (b + 1 < n_bins && score >= static_cast<double>(b + 1) / static_cast<double>(n_bins)) ++b;
  while (b > 0 && score < static_cast<double>(b) / static_cast<double>(n_bins)) --b;
  return b;
}

BinnedReliability bin_reliability(const ScoredSamples& ss, std::size_t n_bins) {
  if (n_bins < 1) throw std::invalid_argument("bin_reliability: need at least one bin");
  if (ss.pairs.empty()) throw std::invalid_argument("bin_reliability: empty sample set");

  BinnedReliability out;
  out.n_bins = n_bins;
  out.bins.resize(n_bins);
  std::vector<double> conf_sum(n_bins, 0.0);
  std::vector<std::size_t> hits(n_bins, 0);
  for (const ScoredSample& p : ss.pairs) {
    const std::size_t b = bin_index(p.score, n_bins);
    out.bins[b].count += 1;
    conf_sum[b] += p.score;
    hits[b] += static_cast<std::size_t>(p.correct);
  }
  for (std::size_t b = 0; b < n_bins; ++b) {
    if (out.bins[b].count == 0) continue;
    const double cnt = static_cast<double>(out.bins[b].count);
    out.bins[b].mean_confidence = conf_sum[b] / cnt;
    out.bins[b].accuracy = static_cast<double>(hits[b]) / cnt;
  }
  return out;
}

double ece(const ScoredSamples& ss, std::size_t n_bins) {
  const BinnedReliability rel = bin_reliability(ss, n_bins);
  const double n = static_cast<double>(ss.pairs.size());
  double acc = 0.0;
  for (const ReliabilityBin& b : rel.bins) {
    if (b.count == 0) continue;
    acc += (static_cast<double>(b.count) / n) * std::abs(b.accuracy - b.mean_confidence);
  }
  return acc;
}

double mce(const ScoredSamples& ss, std::size_t n_bins) {
  const BinnedReliability rel = bin_reliability(ss, n_bins);
  double mx = 0.0;
  for (const ReliabilityBin& b : rel.bins) {
    if (b.count == 0) continue;
    mx = std::max(mx, std::abs(b.accuracy - b.mean_confidence));
  }
  return mx;
}

double brier_top1(const ScoredSamples& ss) {
  if (ss.pairs.empty()) throw std::invalid_argument("brier_top1: empty sample set");
  double acc = 0.0;
  for (const ScoredSample& p : ss.pairs) {
    const double d = p.score - static_cast<double>(p.correct);
    acc += d * d;
  }
  return acc / static_cast<double>(ss.pairs.size());
}

double mean_correct(const ScoredSamples& ss) {
  if (ss.pairs.empty()) throw std::invalid_argument("mean_correct: empty sample set");
  double acc = 0.0;
  for (const ScoredSample& p : ss.pairs) acc += static_cast<double>(p.correct);
  return acc / static_cast<double>(ss.pairs.size());
}

double accuracy_topr(const EvalSet& ev, int r) {
  if (r < 1 || static_cast<std::size_t>(r) > ev.n_classes()) {
    throw std::invalid_argument("accuracy_topr: rank " + std::to_string(r) +
                                " out of range for " + std::to_string(ev.n_classes()) +
                                " classes");
  }
  std::size_t hits = 0;
  for (std::size_t i = 0; i < ev.n_samples(); ++i) {
    const auto order = class_ranking(ev, i);
    for (int j = 0; j < r; ++j) {
      if (order[j] == ev.labels[i]) {
        ++hits;
        break;
      }
    }
  }
  return static_cast<double>(hits) / static_cast<double>(ev.n_samples());
}

}  // namespace splinecal
