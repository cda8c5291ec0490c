#pragma once

#include <cstddef>
#include <vector>

#include "splinecal/dataset.hpp"

namespace splinecal {

struct ReliabilityBin {
  std::size_t count = 0;
  double mean_confidence = 0.0;
  double accuracy = 0.0;
};

/// Equal-width bins over [0,1]. Bin b covers [b/n_bins, (b+1)/n_bins),
/// except the last bin which also includes 1.0.
struct BinnedReliability {
  std::size_t n_bins = 0;
  std::vector<ReliabilityBin> bins;
};

/// Index of the bin containing `score` under the edge convention above.
std::size_t bin_index(double score, std::size_t n_bins);

BinnedReliability bin_reliability(const ScoredSamples& ss, std::size_t n_bins = 25);

/// Expected calibration error: count-weighted mean of |accuracy - mean
/// confidence| over occupied bins.
double ece(const ScoredSamples& ss, std::size_t n_bins = 25);

/// Maximum calibration error: the largest per-bin gap over occupied bins.
double mce(const ScoredSamples& ss, std::size_t n_bins = 25);

/// Mean squared error between scores and 0/1 correctness.
double brier_top1(const ScoredSamples& ss);

/// Fraction of correct flags.
double mean_correct(const ScoredSamples& ss);

/// Fraction of samples whose label is among the r highest-scoring classes.
double accuracy_topr(const EvalSet& ev, int r);

}  // namespace splinecal
