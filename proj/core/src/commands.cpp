#include "splinecal/commands.hpp"

#include <fstream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "splinecal/curves.hpp"
#include "splinecal/metrics.hpp"
#include "splinecal/spline.hpp"

namespace splinecal {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json metrics_block(const ScoredSamples& pairs, const RunConfig& cfg) {
  ordered_json block;
  block["n"] = pairs.size();
  block["target"] = pairs.target.str();
  block["ks"] = ks_error(pairs);
  block["ece"] = ece(pairs, cfg.n_bins);
  block["mce"] = mce(pairs, cfg.n_bins);
  block["brier_top1"] = brier_top1(pairs);
  block["accuracy"] = mean_correct(pairs);
  block["n_bins"] = cfg.n_bins;
  block["knots"] = cfg.knots;
  return block;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open '" + path + "' for writing");
  return out;
}

}  // namespace

InputKind input_kind_parse(const std::string& text) {
  if (text == "logits") return InputKind::Logits;
  if (text == "probs") return InputKind::Probabilities;
  throw std::invalid_argument("bad input kind '" + text + "', expected logits | probs");
}

ApplyMode apply_mode_parse(const std::string& text) {
  if (text == "top1") return ApplyMode::Top1;
  if (text == "classwise") return ApplyMode::Classwise;
  throw std::invalid_argument("bad mode '" + text + "', expected top1 | classwise");
}

void run_metrics(const RunConfig& cfg, std::ostream& report) {
  require(!cfg.test_path.empty(), "metrics: --test input file is required");
  const EvalSet ev = read_eval_csv(cfg.test_path, cfg.kind);
  const CalibrationTarget target = CalibrationTarget::parse(cfg.target_text);
  const ScoredSamples pairs = score_target(ev, target);

  const ordered_json doc = metrics_block(pairs, cfg);
  report << doc.dump(2) << '\n';
  if (!cfg.out_path.empty()) {
    auto out = open_out(cfg.out_path);
    out << doc.dump(2) << '\n';
  }
}

void run_fit(const RunConfig& cfg, std::ostream& report) {
  require(!cfg.calib_path.empty(), "fit: --calib input file is required");
  require(!cfg.out_path.empty(), "fit: --out map path is required");
  const EvalSet ev = read_eval_csv(cfg.calib_path, cfg.kind);

  std::vector<RecalibrationMap> maps;
  if (cfg.mode == ApplyMode::Classwise) {
    maps.reserve(ev.n_classes());
    for (std::size_t k = 0; k < ev.n_classes(); ++k) {
      const auto pairs = score_target(ev, CalibrationTarget::class_k(static_cast<int>(k)));
      maps.push_back(build_map(pairs, cfg.knots));
    }
  } else {
    const CalibrationTarget target = CalibrationTarget::parse(cfg.target_text);
    maps.push_back(build_map(score_target(ev, target), cfg.knots));
  }
  save_maps(cfg.out_path, maps);

  ordered_json doc;
  doc["map"] = cfg.out_path;
  doc["mode"] = cfg.mode == ApplyMode::Classwise ? "classwise" : "top1";
  doc["targets"] = ordered_json::array();
  for (const auto& m : maps) doc["targets"].push_back(m.target.str());
  doc["knots"] = cfg.knots;
  doc["n"] = ev.n_samples();
  report << doc.dump(2) << '\n';
}

void run_apply(const RunConfig& cfg, std::ostream& report) {
  require(!cfg.map_path.empty(), "apply: --map file is required");
  require(!cfg.test_path.empty(), "apply: --test input file is required");
  const auto maps = load_maps(cfg.map_path);
  const EvalSet ev = read_eval_csv(cfg.test_path, cfg.kind);

  ordered_json doc;
  doc["mode"] = cfg.mode == ApplyMode::Classwise ? "classwise" : "top1";

  if (cfg.mode == ApplyMode::Top1) {
    const CalibrationTarget target = CalibrationTarget::parse(cfg.target_text);
    require(target == CalibrationTarget::top_r(1),
            "apply: top1 mode recalibrates target top:1, got " + target.str());
    const RecalibrationMap* map = nullptr;
    for (const auto& m : maps) {
      if (m.target == target) map = &m;
    }
    require(map != nullptr, "apply: map file has no entry for target top:1");

    // The prediction is pinned before its score changes, so the correctness
    // flags (and with them top-1 accuracy) carry over to the after block.
    const ScoredSamples before = score_target(ev, target);
    const ScoredSamples after = apply_to_samples(*map, before);
    doc["target"] = target.str();
    doc["knots"] = map->knots;
    doc["before"] = metrics_block(before, cfg);
    doc["after"] = metrics_block(after, cfg);

    if (!cfg.out_path.empty()) {
      write_eval_csv(cfg.out_path, recalibrate_evalset(ev, maps, ApplyMode::Top1));
      doc["recalibrated"] = cfg.out_path;
    }
  } else {
    const EvalSet recal = recalibrate_evalset(ev, maps, ApplyMode::Classwise);
    const CalibrationTarget target = CalibrationTarget::parse(cfg.target_text);
    doc["target"] = target.str();
    doc["knots"] = maps.front().knots;
    doc["before"] = metrics_block(score_target(ev, target), cfg);
    doc["after"] = metrics_block(score_target(recal, target), cfg);
    if (!cfg.out_path.empty()) {
      write_eval_csv(cfg.out_path, recal);
      doc["recalibrated"] = cfg.out_path;
    }
  }

  report << doc.dump(2) << '\n';
}

void run_curves(const RunConfig& cfg, std::ostream& report) {
  require(!cfg.test_path.empty(), "curves: --test input file is required");
  require(!cfg.out_path.empty(), "curves: --out prefix is required");
  const EvalSet ev = read_eval_csv(cfg.test_path, cfg.kind);
  const CalibrationTarget target = CalibrationTarget::parse(cfg.target_text);
  const ScoredSamples pairs = score_target(ev, target);
  const CumulativeCurves c = cumulative(pairs);
  const std::size_t n = c.n_samples();

  const KnotGrid grid(cfg.knots, 0.0, 1.0);
  const Spline s = Spline::fit(c.fractiles, c.cum_prob, grid);

  const std::string cumulative_path = cfg.out_path + ".cumulative.csv";
  {
    auto out = open_out(cumulative_path);
    out << "fractile,score,cum_prob,cum_score\n";
    for (std::size_t i = 1; i <= n; ++i) {
      out << format_double(c.fractiles[i]) << ',' << format_double(c.sorted_scores[i - 1]) << ','
          << format_double(c.cum_prob[i]) << ',' << format_double(c.cum_score[i]) << '\n';
    }
  }

  const std::string warped_path = cfg.out_path + ".warped.csv";
  {
    auto out = open_out(warped_path);
    out << "cum_score,diagonal,cum_prob\n";
    for (std::size_t i = 0; i <= n; ++i) {
      out << format_double(c.cum_score[i]) << ',' << format_double(c.cum_score[i]) << ','
          << format_double(c.cum_prob[i]) << '\n';
    }
  }

  const std::string density_path = cfg.out_path + ".density.csv";
  const std::string mapping_path = cfg.out_path + ".mapping.csv";
  {
    auto density = open_out(density_path);
    auto mapping = open_out(mapping_path);
    density << "fractile,score,prob\n";
    mapping << "score,prob\n";
    for (std::size_t i = 1; i <= n; ++i) {
      const double d = s.derivative(c.fractiles[i]);
      density << format_double(c.fractiles[i]) << ',' << format_double(c.sorted_scores[i - 1])
              << ',' << format_double(d) << '\n';
      mapping << format_double(c.sorted_scores[i - 1]) << ',' << format_double(d) << '\n';
    }
  }

  ordered_json doc;
  doc["target"] = target.str();
  doc["n"] = n;
  doc["ks"] = ks_error(c);
  doc["knots"] = cfg.knots;
  doc["files"] = {cumulative_path, warped_path, density_path, mapping_path};
  report << doc.dump(2) << '\n';
}

void run_synth(const RunConfig& cfg, std::ostream& report) {
  require(!cfg.out_path.empty(), "synth: --out path is required");
  SynthSpec spec;
  spec.n_samples = cfg.n_samples;
  spec.n_classes = cfg.n_classes;
  spec.link = Link::parse(cfg.link_text);
  spec.score_law = score_law_parse(cfg.law_text);
  spec.seed = cfg.seed;

  const EvalSet ev = generate(spec);
  write_eval_csv(cfg.out_path, ev);

  ordered_json doc;
  doc["file"] = cfg.out_path;
  doc["n"] = spec.n_samples;
  doc["classes"] = spec.n_classes;
  doc["link"] = spec.link.str();
  doc["law"] = score_law_str(spec.score_law);
  doc["seed"] = spec.seed;
  report << doc.dump(2) << '\n';
}

}  // namespace splinecal
