#pragma once

#include <cstdint>
#include <string>

#include "splinecal/dataset.hpp"

namespace splinecal {

enum class LinkKind { Identity, Power, Sharpen };

/// True conditional probability of correctness given the top score:
/// identity g(s) = s, power g(s) = s^alpha, sharpen g(s) = temperature-style
/// two-way sharpening s^(1/T) / (s^(1/T) + (1-s)^(1/T)).
struct Link {
  LinkKind kind = LinkKind::Identity;
  double param = 1.0;

  double operator()(double s) const;

  static Link identity() { return {LinkKind::Identity, 1.0}; }
  static Link power(double alpha);
  static Link sharpen(double temperature);

  /// "identity" | "power:A" | "sharpen:T"
  static Link parse(const std::string& text);
  std::string str() const;
};

enum class ScoreLaw {
  UniformUnit,     // uniform on [0,1)
  UniformTopHalf,  // uniform on [0.5,1)
};

ScoreLaw score_law_parse(const std::string& text);  // "uniform" | "uniform-top"
std::string score_law_str(ScoreLaw law);

/// Recipe for a synthetic classifier whose calibration defects are known
/// exactly: the drawn top score sigma lands on a random class, correctness
/// is Bernoulli(g(sigma)), and the label is placed accordingly. The seed
/// fully determines the output (mt19937_64 with fixed 53-bit mappings, so
/// results are identical across platforms).
struct SynthSpec {
  std::size_t n_samples = 0;
  std::size_t n_classes = 0;
  ScoreLaw score_law = ScoreLaw::UniformTopHalf;
  Link link;
  std::uint64_t seed = 0;
};

/// The leftover mass 1-sigma is spread uniformly over the other classes,
/// capped at sigma so the drawn score is always the row maximum; rows
/// therefore sum to 1 exactly when sigma >= 1/K and to less otherwise.
EvalSet generate(const SynthSpec& spec);

}  // namespace splinecal
