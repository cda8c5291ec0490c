#pragma once

#include <vector>

#include "splinecal/dataset.hpp"

namespace splinecal {

/// Cumulative accuracy and cumulative score over the score-sorted samples,
/// both prefixed with 0 so index i runs 0..N. fractiles[i] = i/N and
/// sorted_scores[i-1] is the score at fractile i/N.
struct CumulativeCurves {
  std::vector<double> cum_prob;       // length N+1, cum_prob[0] = 0
  std::vector<double> cum_score;      // length N+1, cum_score[0] = 0
  std::vector<double> fractiles;      // length N+1, i/N
  std::vector<double> sorted_scores;  // length N

  std::size_t n_samples() const { return sorted_scores.size(); }
};

/// Prefix sums of correctness/N and score/N over the sorted pairs.
/// Throws std::invalid_argument on empty input.
CumulativeCurves cumulative(const ScoredSamples& ss);

/// max_i |cum_prob[i] - cum_score[i]| over i = 0..N.
double ks_error(const CumulativeCurves& c);

/// Convenience: cumulative curves then the max gap.
double ks_error(const ScoredSamples& ss);

}  // namespace splinecal
