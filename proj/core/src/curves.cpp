#include "splinecal/curves.hpp"

#include <cmath>
#include <stdexcept>

namespace splinecal {

CumulativeCurves cumulative(const ScoredSamples& ss) {
  const std::size_t n = ss.pairs.size();
  if (n == 0) throw std::invalid_argument("cumulative: empty sample set");

  CumulativeCurves c;
  c.cum_prob.resize(n + 1);
  c.cum_score.resize(n + 1);
  c.fractiles.resize(n + 1);
  c.sorted_scores.resize(n);

  c.cum_prob[0] = 0.0;
  c.cum_score[0] = 0.0;
  c.fractiles[0] = 0.0;
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t i = 1; i <= n; ++i) {
    const ScoredSample& s = ss.pairs[i - 1];
    c.cum_prob[i] = c.cum_prob[i - 1] + static_cast<double>(s.correct) * inv_n;
    c.cum_score[i] = c.cum_score[i - 1] + s.score * inv_n;
    c.fractiles[i] = static_cast<double>(i) / static_cast<double>(n);
    c.sorted_scores[i - 1] = s.score;
  }
  return c;
}

double ks_error(const CumulativeCurves& c) {
  double mx = 0.0;
  for (std::size_t i = 0; i < c.cum_prob.size(); ++i) {
    mx = std::max(mx, std::abs(c.cum_prob[i] - c.cum_score[i]));
  }
  return mx;
}

double ks_error(const ScoredSamples& ss) { return ks_error(cumulative(ss)); }

}  // namespace splinecal
