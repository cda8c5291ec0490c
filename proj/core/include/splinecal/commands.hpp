#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "splinecal/dataset.hpp"
#include "splinecal/recalibrate.hpp"
#include "splinecal/synth.hpp"

namespace splinecal {

/// One invocation's worth of configuration, as resolved from flags,
/// environment and defaults by the command-line front end.
struct RunConfig {
  std::string calib_path;
  std::string test_path;
  std::string map_path;
  std::string out_path;
  std::string target_text = "top:1";
  std::size_t knots = 6;
  std::size_t n_bins = 25;
  InputKind kind = InputKind::Probabilities;
  ApplyMode mode = ApplyMode::Top1;
  std::uint64_t seed = 0;

  // synth only
  std::size_t n_samples = 10000;
  std::size_t n_classes = 10;
  std::string link_text = "identity";
  std::string law_text = "uniform-top";
};

InputKind input_kind_parse(const std::string& text);  // "logits" | "probs"
ApplyMode apply_mode_parse(const std::string& text);  // "top1" | "classwise"

/// Each command validates its config, performs the work, and writes a JSON
/// report to `report`. Failures throw; the front end maps them to a
/// nonzero exit code. Reports are byte-identical across runs for identical
/// inputs.

/// ks/ece/mce/brier/accuracy for one target on one file (reads test_path).
void run_metrics(const RunConfig& cfg, std::ostream& report);

/// Fits recalibration map(s) on calib_path and writes them to out_path:
/// one document for the configured target, or an array with one map per
/// class when mode is classwise.
void run_fit(const RunConfig& cfg, std::ostream& report);

/// Loads map_path, recalibrates test_path, reports before/after metric
/// blocks, and writes the recalibrated CSV to out_path when given.
void run_apply(const RunConfig& cfg, std::ostream& report);

/// Emits the calibration-graph CSV data for one file (reads test_path):
/// <out>.cumulative.csv  fractile,score,cum_prob,cum_score
/// <out>.warped.csv      cum_score,diagonal,cum_prob
/// <out>.density.csv     fractile,score,prob      (spline derivative)
/// <out>.mapping.csv     score,prob               (the recalibration curve)
void run_curves(const RunConfig& cfg, std::ostream& report);

/// Generates a synthetic eval set and writes it to out_path as CSV.
void run_synth(const RunConfig& cfg, std::ostream& report);

}  // namespace splinecal
