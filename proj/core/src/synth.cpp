#include "splinecal/synth.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace splinecal {

namespace {

// std::uniform_real_distribution is implementation-defined, so draws are
// mapped from raw engine output by hand to stay reproducible everywhere.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  const std::size_t i = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n));
  return i < n ? i : n - 1;
}

}  // namespace

double Link::operator()(double s) const {
  switch (kind) {
    case LinkKind::Identity:
      return s;
    case LinkKind::Power:
      return std::pow(s, param);
    case LinkKind::Sharpen: {
      if (s <= 0.0) return 0.0;
      if (s >= 1.0) return 1.0;
      const double a = std::pow(s, 1.0 / param);
      const double b = std::pow(1.0 - s, 1.0 / param);
      return a / (a + b);
    }
  }
  return s;
}

Link Link::power(double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("link power: exponent must be positive");
  return {LinkKind::Power, alpha};
}

Link Link::sharpen(double temperature) {
  if (!(temperature > 0.0)) throw std::invalid_argument("link sharpen: temperature must be positive");
  return {LinkKind::Sharpen, temperature};
}

Link Link::parse(const std::string& text) {
  if (text == "identity") return identity();
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    const std::string head = text.substr(0, colon);
    const std::string tail = text.substr(colon + 1);
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(tail, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad link parameter in '" + text + "'");
    }
    if (used != tail.size()) throw std::invalid_argument("bad link parameter in '" + text + "'");
    if (head == "power") return power(value);
    if (head == "sharpen") return sharpen(value);
  }
  throw std::invalid_argument("bad link '" + text + "', expected identity | power:A | sharpen:T");
}

std::string Link::str() const {
  switch (kind) {
    case LinkKind::Identity: return "identity";
    case LinkKind::Power: return "power:" + format_double(param);
    case LinkKind::Sharpen: return "sharpen:" + format_double(param);
  }
  return {};
}

ScoreLaw score_law_parse(const std::string& text) {
  if (text == "uniform") return ScoreLaw::UniformUnit;
  if (text == "uniform-top") return ScoreLaw::UniformTopHalf;
  throw std::invalid_argument("bad score law '" + text + "', expected uniform | uniform-top");
}

std::string score_law_str(ScoreLaw law) {
  return law == ScoreLaw::UniformUnit ? "uniform" : "uniform-top";
}

EvalSet generate(const SynthSpec& spec) {
  if (spec.n_samples == 0) throw std::invalid_argument("generate: need at least one sample");
  if (spec.n_classes < 2) throw std::invalid_argument("generate: need at least two classes");
  const double probe = spec.link(0.5);
  if (!(probe >= 0.0 && probe <= 1.0)) {
    throw std::invalid_argument("generate: link does not map into [0,1]");
  }

  const std::size_t n = spec.n_samples;
  const std::size_t k = spec.n_classes;
  std::mt19937_64 rng(spec.seed);

  Matrix scores(n, k);
  std::vector<int> labels(n);

  for (std::size_t i = 0; i < n; ++i) {
    double sigma = uniform01(rng);
    if (spec.score_law == ScoreLaw::UniformTopHalf) sigma = 0.5 + 0.5 * sigma;

    const std::size_t placed = uniform_index(rng, k);
    const bool correct = uniform01(rng) < spec.link(sigma);

    const double rest = std::min((1.0 - sigma) / static_cast<double>(k - 1), sigma);
    for (std::size_t j = 0; j < k; ++j) scores(i, j) = rest;
    scores(i, placed) = sigma;

    // The label is placed relative to the row's actual argmax (first index
    // attaining the maximum) so downstream top-1 extraction sees exactly
    // the (sigma, correct) pair that was drawn.
    std::size_t argmax = 0;
    for (std::size_t j = 1; j < k; ++j) {
      if (scores(i, j) > scores(i, argmax)) argmax = j;
    }
    if (correct) {
      labels[i] = static_cast<int>(argmax);
    } else {
      const std::size_t other = uniform_index(rng, k - 1);
      labels[i] = static_cast<int>(other >= argmax ? other + 1 : other);
    }
  }

  return from_probabilities(std::move(scores), std::move(labels));
}

}  // namespace splinecal
