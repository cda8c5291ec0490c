#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "splinecal/dataset.hpp"

namespace splinecal {

/// Score -> calibrated-probability lookup table sampled at the calibration
/// set's own scores. Scores are strictly increasing (tied calibration
/// scores are merged, their gamma values averaged) and gamma values are
/// clamped to [0,1].
struct RecalibrationMap {
  std::vector<double> scores;
  std::vector<double> gamma;
  CalibrationTarget target;
  std::size_t knots = 0;

  bool operator==(const RecalibrationMap&) const = default;
};

/// Fits a spline to the cumulative-accuracy curve of the calibration pairs
/// (points (i/N, cum_prob[i]) for i = 0..N) and tabulates its analytic
/// derivative at the fractiles, paired with the sorted calibration scores.
/// Rejects inputs with fewer samples than knots.
RecalibrationMap build_map(const ScoredSamples& ss, std::size_t n_knots);

/// Calibrated probability for one score: binary search for the bracketing
/// calibration scores, linear interpolation of their gamma values. Queries
/// below the first (above the last) table score clamp to the first (last)
/// gamma value. Requires sigma in [0,1] and a non-empty map.
double apply_map(const RecalibrationMap& map, double sigma);

/// Recalibrates every score in the pairs, keeping correctness flags, and
/// re-sorts by the new scores.
ScoredSamples apply_to_samples(const RecalibrationMap& map, const ScoredSamples& ss);

enum class ApplyMode { Top1, Classwise };

/// Top1: the prediction is identified first, then only that entry of each
/// row is replaced through the top:1 map, so the prediction (and with it
/// top-1 accuracy) is untouched. Classwise: column k goes through the
/// class:k map elementwise; rows are not renormalized. Throws if a
/// required map is missing.
EvalSet recalibrate_evalset(const EvalSet& ev, const std::vector<RecalibrationMap>& maps,
                            ApplyMode mode);

/// JSON document {"target", "knots", "scores", "gamma"}; a bundle of maps
/// is an array of such documents.
std::string map_to_json(const RecalibrationMap& map);
std::string maps_to_json(const std::vector<RecalibrationMap>& maps);
/// Accepts a single document or an array; an array yields its elements.
std::vector<RecalibrationMap> maps_from_json(const std::string& text);

void save_maps(const std::string& path, const std::vector<RecalibrationMap>& maps);
std::vector<RecalibrationMap> load_maps(const std::string& path);

}  // namespace splinecal
