// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria 1-7 are self-contained; criterion 8 needs externally
// downloaded classifier outputs and reports SKIP unless SPLINECAL_LOGITS_DIR
// points at them (see README).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "splinecal/curves.hpp"
#include "splinecal/dataset.hpp"
#include "splinecal/metrics.hpp"
#include "splinecal/recalibrate.hpp"
#include "splinecal/spline.hpp"
#include "splinecal/synth.hpp"

using namespace splinecal;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail) {
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << number << " (" << name << "): "
            << detail << '\n';
  if (!pass) ++failures;
}

double elapsed_s(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// --- criterion 1: spline algebra vs the textbook interpolation solver ----

void criterion_interpolation() {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (std::size_t k = 3; k <= 10; ++k) {
    const KnotGrid grid(k, 0.0, 1.0);
    std::mt19937_64 rng(1000 + k);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> xs(k), ys(k);
    for (std::size_t i = 0; i < k; ++i) {
      xs[i] = grid.knot(i);
      ys[i] = dist(rng);
    }
    const Spline s = Spline::fit(xs, ys, grid);
    const oracle::NaturalSplineInterp ref(xs, ys);
    for (int p = 0; p <= 99; ++p) {
      const double x = static_cast<double>(p) / 99.0;
      worst = std::max(worst, std::abs(s.value(x) - ref.value(x)));
    }
  }
  const double secs = elapsed_s(start);
  report(1, "interpolation equals textbook solver", worst < 1e-9 && secs < 1.0,
         "max |difference| = " + fmt(worst) + " over K in 3..10, 100 probes each, " +
             fmt(secs) + " s");
}

// --- criterion 2: analytic derivative vs central differences -------------

void criterion_derivative() {
  const auto start = std::chrono::steady_clock::now();
  const KnotGrid grid(8, 0.0, 1.0);
  std::mt19937_64 rng(2222);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> u(64), v(64);
  for (std::size_t i = 0; i < 64; ++i) {
    u[i] = static_cast<double>(i) / 63.0;
    v[i] = dist(rng);
  }
  const Spline s = Spline::fit(u, v, grid);

  std::uniform_real_distribution<double> probe(0.001, 0.999);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double x = probe(rng);
    const double analytic = s.derivative(x);
    const double fd = oracle::fd_derivative([&](double q) { return s.value(q); }, x, 1e-5);
    worst = std::max(worst, std::abs(analytic - fd) / std::max(1.0, std::abs(fd)));
  }
  const double secs = elapsed_s(start);
  report(2, "analytic derivative matches finite differences", worst < 1e-6 && secs < 1.0,
         "max relative error = " + fmt(worst) + " at 1000 probes, " + fmt(secs) + " s");
}

// --- criterion 3: the spline derivative recovers the conditional law -----

void criterion_derivative_recovers_link() {
  const auto start = std::chrono::steady_clock::now();
  double worst_over_seeds = 0.0;
  for (std::uint64_t seed : {101u, 202u, 303u, 404u, 505u}) {
    SynthSpec spec;
    spec.n_samples = 20000;
    spec.n_classes = 10;
    spec.link = Link::power(2.0);
    spec.seed = seed;  // default score law: uniform on [0.5,1)
    const EvalSet ev = generate(spec);
    const auto ss = score_target(ev, CalibrationTarget::top_r(1));
    const auto c = cumulative(ss);

    const KnotGrid grid(6, 0.0, 1.0);
    const Spline s = Spline::fit(c.fractiles, c.cum_prob, grid);
    double worst = 0.0;
    for (std::size_t i = 1; i <= 20000; ++i) {
      const double t = c.fractiles[i];
      if (t < 0.05 || t > 0.95) continue;
      const double g = c.sorted_scores[i - 1] * c.sorted_scores[i - 1];
      worst = std::max(worst, std::abs(s.derivative(t) - g));
    }
    worst_over_seeds = std::max(worst_over_seeds, worst);
  }
  const double secs = elapsed_s(start);
  report(3, "spline derivative recovers the known conditional law",
         worst_over_seeds < 0.05 && secs < 5.0,
         "sup |h'(t) - g(s(t))| = " + fmt(worst_over_seeds) +
             " on fractiles [0.05,0.95], 5 seeds, " + fmt(secs) + " s");
}

// --- criterion 4: recalibration shrinks the KS error ---------------------

void criterion_ks_reduction() {
  const auto start = std::chrono::steady_clock::now();
  double worst_before_gap = 0.0;
  double worst_after = 0.0;
  for (std::uint64_t seed : {11u, 22u, 33u, 44u, 55u}) {
    SynthSpec spec;
    spec.n_samples = 20000;
    spec.n_classes = 10;
    spec.link = Link::power(2.0);
    spec.score_law = ScoreLaw::UniformUnit;

    spec.seed = seed;
    const EvalSet calib = generate(spec);
    spec.seed = seed + 900000;
    const EvalSet test = generate(spec);

    const auto calib_pairs = score_target(calib, CalibrationTarget::top_r(1));
    const auto test_pairs = score_target(test, CalibrationTarget::top_r(1));

    const double before = ks_error(test_pairs);
    worst_before_gap = std::max(worst_before_gap, std::abs(before - 1.0 / 6.0));

    const RecalibrationMap map = build_map(calib_pairs, 6);
    const double after = ks_error(apply_to_samples(map, test_pairs));
    worst_after = std::max(worst_after, after);
  }
  const double secs = elapsed_s(start);
  report(4, "recalibration shrinks the KS error",
         worst_before_gap < 0.02 && worst_after < 0.015 && secs < 10.0,
         "max |KS_before - 1/6| = " + fmt(worst_before_gap) + ", max KS_after = " +
             fmt(worst_after) + ", 5 seeds, " + fmt(secs) + " s");
}

// --- criterion 5: top-1 accuracy is bit-identical under apply ------------

void criterion_accuracy_invariance() {
  bool pass = true;
  int checked = 0;
  for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
    for (const char* link : {"identity", "power:2", "sharpen:0.5"}) {
      SynthSpec spec;
      spec.n_samples = 5000;
      spec.n_classes = 7;
      spec.link = Link::parse(link);
      spec.seed = seed;
      const EvalSet calib = generate(spec);
      spec.seed = seed + 1234;
      const EvalSet test = generate(spec);

      const auto calib_pairs = score_target(calib, CalibrationTarget::top_r(1));
      const RecalibrationMap map = build_map(calib_pairs, 6);

      // The prediction is identified before its score is replaced, so the
      // reported accuracy carries over bit-for-bit.
      const auto before = score_target(test, CalibrationTarget::top_r(1));
      const auto after = apply_to_samples(map, before);
      if (mean_correct(before) != mean_correct(after)) pass = false;

      // And the written file re-ranks to the same predictions.
      const EvalSet recal = recalibrate_evalset(test, {map}, ApplyMode::Top1);
      if (accuracy_topr(test, 1) != accuracy_topr(recal, 1)) pass = false;
      ++checked;
    }
  }

  // Worst case for the reported path: heavy score ties from the analytic
  // law plus a shrinking map.
  {
    SynthSpec spec;
    spec.n_samples = 20000;
    spec.n_classes = 10;
    spec.link = Link::power(2.0);
    spec.score_law = ScoreLaw::UniformUnit;
    spec.seed = 77;
    const EvalSet calib = generate(spec);
    spec.seed = 78;
    const EvalSet test = generate(spec);
    const RecalibrationMap map = build_map(score_target(calib, CalibrationTarget::top_r(1)), 6);
    const auto before = score_target(test, CalibrationTarget::top_r(1));
    const auto after = apply_to_samples(map, before);
    if (mean_correct(before) != mean_correct(after)) pass = false;
    ++checked;
  }

  report(5, "top-1 accuracy is bit-identical after apply", pass,
         std::to_string(checked) + " file pairs, exact double equality");
}

// --- criterion 6: constant-sign increments reduce KS to the last gap -----

void criterion_constant_sign() {
  std::mt19937_64 rng(6666);
  std::uniform_real_distribution<double> dist(0.01, 0.99);
  bool pass = true;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng() % 400;
    const bool all_correct = (rng() & 1) != 0;
    ScoredSamples ss;
    ss.target = CalibrationTarget::top_r(1);
    ss.pairs.resize(n);
    for (std::size_t i = 0; i < n; ++i) ss.pairs[i] = {dist(rng), all_correct ? 1 : 0};
    std::stable_sort(ss.pairs.begin(), ss.pairs.end(), [](const auto& a, const auto& b) {
      return a.score < b.score;
    });
    const auto c = cumulative(ss);
    if (ks_error(c) != std::abs(c.cum_prob.back() - c.cum_score.back())) {
      pass = false;
      break;
    }
  }
  report(6, "constant-sign increments attain KS at the endpoint", pass,
         "1000 random one-signed instances, exact equality");
}

// --- criterion 7: metric implementations vs brute-force references -------

void criterion_metric_oracles() {
  std::mt19937_64 rng(7777);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng() % 64;
    const std::size_t bins = 1 + rng() % 40;
    std::vector<double> scores(n);
    std::vector<int> correct(n);
    for (std::size_t i = 0; i < n; ++i) {
      scores[i] = dist(rng);
      correct[i] = dist(rng) < scores[i] ? 1 : 0;
    }
    ScoredSamples ss;
    ss.target = CalibrationTarget::top_r(1);
    for (std::size_t i = 0; i < n; ++i) ss.pairs.push_back({scores[i], correct[i]});

    const auto ref = oracle::binned_metrics(scores, correct, bins);
    worst = std::max(worst, std::abs(ece(ss, bins) - ref.ece));
    worst = std::max(worst, std::abs(mce(ss, bins) - ref.mce));
    worst = std::max(worst, std::abs(brier_top1(ss) - oracle::brier(scores, correct)));
  }
  report(7, "metrics equal brute-force references", worst < 1e-12,
         "max |difference| = " + fmt(worst) + " over 500 instances");
}

// --- criterion 8: external classifier outputs (optional) -----------------

void criterion_external_reproduction() {
  const char* dir = std::getenv("SPLINECAL_LOGITS_DIR");
  if (dir == nullptr) {
    std::cout << "SKIP criterion 8 (external reproduction): set SPLINECAL_LOGITS_DIR to the "
                 "directory holding the downloaded CIFAR-10 DenseNet-40 logits CSVs "
                 "(calib.csv, test.csv); see README\n";
    return;
  }
  try {
    const EvalSet calib = read_eval_csv(std::string(dir) + "/calib.csv", InputKind::Logits);
    const EvalSet test = read_eval_csv(std::string(dir) + "/test.csv", InputKind::Logits);

    const auto calib_pairs = score_target(calib, CalibrationTarget::top_r(1));
    const auto test_pairs = score_target(test, CalibrationTarget::top_r(1));
    const double ks_before = ks_error(test_pairs);

    const RecalibrationMap map = build_map(calib_pairs, 6);
    const double ks_after = ks_error(apply_to_samples(map, test_pairs));

    const bool pass = std::abs(ks_before - 0.05493) < 0.0015 &&
                      std::abs(ks_after - 0.00773) < 0.0015;
    report(8, "external reproduction", pass,
           "uncalibrated KS = " + fmt(100.0 * ks_before) + "%, recalibrated KS = " +
               fmt(100.0 * ks_after) + "% (expected 5.493% and 0.773% within 0.15)");
  } catch (const std::exception& e) {
    report(8, "external reproduction", false, std::string("error: ") + e.what());
  }
}

}  // namespace

int main() {
  criterion_interpolation();
  criterion_derivative();
  criterion_derivative_recovers_link();
  criterion_ks_reduction();
  criterion_accuracy_invariance();
  criterion_constant_sign();
  criterion_metric_oracles();
  criterion_external_reproduction();

  if (failures > 0) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all acceptance criteria passed\n";
  return 0;
}
