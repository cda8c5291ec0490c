#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "splinecal/matrix.hpp"

namespace splinecal {

/// Classifier outputs for N samples: an N x K matrix of per-class scores in
/// [0,1] plus the ground-truth label of each sample. Rows built from logits
/// sum to 1; rows ingested as probabilities are range-checked only.
struct EvalSet {
  Matrix scores;            // N x K
  std::vector<int> labels;  // N entries in {0..K-1}

  std::size_t n_samples() const { return labels.size(); }
  std::size_t n_classes() const { return scores.cols(); }
};

enum class TargetKind { ClassK, TopR, WithinTopR };

/// Which score/correctness notion to evaluate: a single class k (0-based),
/// the r-th highest score (r >= 1), or the sum of the r highest scores.
struct CalibrationTarget {
  TargetKind kind = TargetKind::TopR;
  int index = 1;  // class k for ClassK, rank r otherwise

  static CalibrationTarget class_k(int k) { return {TargetKind::ClassK, k}; }
  static CalibrationTarget top_r(int r) { return {TargetKind::TopR, r}; }
  static CalibrationTarget within_top_r(int r) { return {TargetKind::WithinTopR, r}; }

  /// Parses "class:K" | "top:R" | "within:R". Throws std::invalid_argument.
  static CalibrationTarget parse(const std::string& text);
  std::string str() const;

  bool operator==(const CalibrationTarget&) const = default;
};

struct ScoredSample {
  double score = 0.0;
  int correct = 0;  // 0 or 1
};

/// (score, correctness) pairs for one target, sorted ascending by score.
/// Ties keep the original sample order.
struct ScoredSamples {
  std::vector<ScoredSample> pairs;
  CalibrationTarget target;

  std::size_t size() const { return pairs.size(); }
};

/// Row-wise softmax with max-subtraction. Rejects non-finite inputs (with
/// the offending row index) and out-of-range labels.
EvalSet from_logits(const Matrix& raw, std::vector<int> labels);

/// Validates entries in [0,1] and labels; does not renormalize rows.
EvalSet from_probabilities(Matrix scores, std::vector<int> labels);

/// Extracts the target's (score, correctness) pairs and sorts them
/// ascending by score, stable in the original sample index.
ScoredSamples score_target(const EvalSet& ev, CalibrationTarget target);

/// Class indices of one row ordered by descending score; equal scores keep
/// ascending index order, so position 0 is the argmax.
std::vector<int> class_ranking(const EvalSet& ev, std::size_t row);

enum class InputKind { Logits, Probabilities };

/// CSV with one sample per row: "label,s_0,...,s_{K-1}". A header row is
/// detected by a non-numeric first field and skipped.
EvalSet read_eval_csv(std::istream& in, InputKind kind);
EvalSet read_eval_csv(const std::string& path, InputKind kind);
void write_eval_csv(std::ostream& out, const EvalSet& ev);
void write_eval_csv(const std::string& path, const EvalSet& ev);

/// Shortest round-trip decimal form of a double (used by all CSV writers).
std::string format_double(double v);

}  // namespace splinecal
