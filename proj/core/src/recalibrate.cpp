#include "splinecal/recalibrate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "splinecal/curves.hpp"
#include "splinecal/spline.hpp"

namespace splinecal {

RecalibrationMap build_map(const ScoredSamples& ss, std::size_t n_knots) {
  const std::size_t n = ss.pairs.size();
  if (n < n_knots) {
    throw std::invalid_argument("build_map: " + std::to_string(n) +
                                " samples cannot support " + std::to_string(n_knots) + " knots");
  }

  const CumulativeCurves c = cumulative(ss);

  // Fractiles live on [0,1] by construction, so the knot domain is fixed
  // there regardless of the score range.
  const KnotGrid grid(n_knots, 0.0, 1.0);
  const Spline s = Spline::fit(c.fractiles, c.cum_prob, grid);

  RecalibrationMap map;
  map.target = ss.target;
  map.knots = n_knots;
  map.scores.reserve(n);
  map.gamma.reserve(n);

  // Tabulate gamma_i = clamp(h'(i/N)) at each calibration score, merging
  // tied scores into one averaged entry so lookups are unambiguous.
  std::size_t i = 0;
  while (i < n) {
    const double score = c.sorted_scores[i];
    double acc = 0.0;
    std::size_t j = i;
    while (j < n && c.sorted_scores[j] == score) {
      const double g = s.derivative(c.fractiles[j + 1]);
      acc += std::clamp(g, 0.0, 1.0);
      ++j;
    }
    map.scores.push_back(score);
    map.gamma.push_back(acc / static_cast<double>(j - i));
    i = j;
  }
  return map;
}

double apply_map(const RecalibrationMap& map, double sigma) {
  if (map.scores.empty()) throw std::invalid_argument("apply_map: empty map");
  // Summed within-top-r scores can overshoot 1 by rounding; tolerate that
  // much and no more.
  if (!(sigma >= -1e-6 && sigma <= 1.0 + 1e-6)) {
    throw std::invalid_argument("apply_map: score " + std::to_string(sigma) +
                                " outside [0,1]");
  }
  sigma = std::clamp(sigma, 0.0, 1.0);
  if (sigma <= map.scores.front()) return map.gamma.front();
  if (sigma >= map.scores.back()) return map.gamma.back();

  const auto it = std::lower_bound(map.scores.begin(), map.scores.end(), sigma);
  const std::size_t hi = static_cast<std::size_t>(it - map.scores.begin());
  if (map.scores[hi] == sigma) return map.gamma[hi];
  const std::size_t lo = hi - 1;
  const double t = (sigma - map.scores[lo]) / (map.scores[hi] - map.scores[lo]);
  return map.gamma[lo] + t * (map.gamma[hi] - map.gamma[lo]);
}

ScoredSamples apply_to_samples(const RecalibrationMap& map, const ScoredSamples& ss) {
  ScoredSamples out;
  out.target = ss.target;
  out.pairs.reserve(ss.pairs.size());
  for (const ScoredSample& p : ss.pairs) {
    out.pairs.push_back({apply_map(map, p.score), p.correct});
  }
  std::stable_sort(out.pairs.begin(), out.pairs.end(),
                   [](const ScoredSample& a, const ScoredSample& b) { return a.score < b.score; });
  return out;
}

namespace {

const RecalibrationMap* find_map(const std::vector<RecalibrationMap>& maps,
                                 CalibrationTarget target) {
  for (const auto& m : maps) {
    if (m.target == target) return &m;
  }
  return nullptr;
}

}  // namespace

EvalSet recalibrate_evalset(const EvalSet& ev, const std::vector<RecalibrationMap>& maps,
                            ApplyMode mode) {
  EvalSet out = ev;
  if (mode == ApplyMode::Top1) {
    const RecalibrationMap* map = find_map(maps, CalibrationTarget::top_r(1));
    if (!map) throw std::invalid_argument("recalibrate_evalset: no map for target top:1");
    for (std::size_t i = 0; i < ev.n_samples(); ++i) {
      std::size_t argmax = 0;
      for (std::size_t j = 1; j < ev.n_classes(); ++j) {
        if (ev.scores(i, j) > ev.scores(i, argmax)) argmax = j;
      }
      out.scores(i, argmax) = apply_map(*map, ev.scores(i, argmax));
    }
    return out;
  }

  for (std::size_t j = 0; j < ev.n_classes(); ++j) {
    const RecalibrationMap* map = find_map(maps, CalibrationTarget::class_k(static_cast<int>(j)));
    if (!map) {
      throw std::invalid_argument("recalibrate_evalset: no map for target class:" +
                                  std::to_string(j));
    }
    for (std::size_t i = 0; i < ev.n_samples(); ++i) {
      out.scores(i, j) = apply_map(*map, ev.scores(i, j));
    }
  }
  return out;
}

namespace {

nlohmann::ordered_json map_to_value(const RecalibrationMap& map) {
  nlohmann::ordered_json doc;
  doc["target"] = map.target.str();
  doc["knots"] = map.knots;
  doc["scores"] = map.scores;
  doc["gamma"] = map.gamma;
  return doc;
}

RecalibrationMap map_from_value(const nlohmann::json& doc) {
  RecalibrationMap map;
  map.target = CalibrationTarget::parse(doc.at("target").get<std::string>());
  map.knots = doc.at("knots").get<std::size_t>();
  map.scores = doc.at("scores").get<std::vector<double>>();
  map.gamma = doc.at("gamma").get<std::vector<double>>();
  if (map.scores.size() != map.gamma.size()) {
    throw std::invalid_argument("map document: scores and gamma lengths differ");
  }
  if (!std::is_sorted(map.scores.begin(), map.scores.end())) {
    throw std::invalid_argument("map document: scores are not sorted");
  }
  for (double g : map.gamma) {
    if (!(g >= 0.0 && g <= 1.0)) {
      throw std::invalid_argument("map document: gamma value outside [0,1]");
    }
  }
  return map;
}

}  // namespace

std::string map_to_json(const RecalibrationMap& map) { return map_to_value(map).dump(2); }

std::string maps_to_json(const std::vector<RecalibrationMap>& maps) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& m : maps) arr.push_back(map_to_value(m));
  return arr.dump(2);
}

std::vector<RecalibrationMap> maps_from_json(const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  std::vector<RecalibrationMap> maps;
  if (doc.is_array()) {
    for (const auto& item : doc) maps.push_back(map_from_value(item));
  } else {
    maps.push_back(map_from_value(doc));
  }
  return maps;
}

void save_maps(const std::string& path, const std::vector<RecalibrationMap>& maps) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open '" + path + "' for writing");
  out << (maps.size() == 1 ? map_to_json(maps.front()) : maps_to_json(maps)) << '\n';
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

std::vector<RecalibrationMap> load_maps(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return maps_from_json(buf.str());
}

}  // namespace splinecal
