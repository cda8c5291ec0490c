#include "splinecal/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace splinecal {

namespace {

void validate_labels(const std::vector<int>& labels, std::size_t n_classes) {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || static_cast<std::size_t>(labels[i]) >= n_classes) {
      throw std::invalid_argument("label out of range at sample " + std::to_string(i) +
                                  ": " + std::to_string(labels[i]));
    }
  }
}

void validate_shape(const Matrix& scores, const std::vector<int>& labels) {
  if (scores.rows() == 0 || scores.cols() == 0) {
    throw std::invalid_argument("eval set must contain at least one sample and one class");
  }
  if (scores.rows() != labels.size()) {
    throw std::invalid_argument("score rows and label count differ");
  }
}

}  // namespace

CalibrationTarget CalibrationTarget::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw std::invalid_argument("bad target '" + text + "', expected class:K | top:R | within:R");
  }
  const std::string head = text.substr(0, colon);
  const std::string tail = text.substr(colon + 1);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), value);
  if (ec != std::errc() || ptr != tail.data() + tail.size()) {
    throw std::invalid_argument("bad target index in '" + text + "'");
  }
  if (head == "class") {
    if (value < 0) throw std::invalid_argument("class index must be >= 0 in '" + text + "'");
    return class_k(value);
  }
  if (head == "top") {
    if (value < 1) throw std::invalid_argument("rank must be >= 1 in '" + text + "'");
    return top_r(value);
  }
  if (head == "within") {
    if (value < 1) throw std::invalid_argument("rank must be >= 1 in '" + text + "'");
    return within_top_r(value);
  }
  throw std::invalid_argument("bad target '" + text + "', expected class:K | top:R | within:R");
}

std::string CalibrationTarget::str() const {
  switch (kind) {
    case TargetKind::ClassK: return "class:" + std::to_string(index);
    case TargetKind::TopR: return "top:" + std::to_string(index);
    case TargetKind::WithinTopR: return "within:" + std::to_string(index);
  }
  return {};
}

EvalSet from_logits(const Matrix& raw, std::vector<int> labels) {
  validate_shape(raw, labels);
  const std::size_t n = raw.rows();
  const std::size_t k = raw.cols();
  validate_labels(labels, k);

  Matrix scores(n, k);
  for (std::size_t i = 0; i < n; ++i) {
    double mx = raw(i, 0);
    for (std::size_t j = 0; j < k; ++j) {
      if (!std::isfinite(raw(i, j))) {
        throw std::invalid_argument("non-finite logit at sample " + std::to_string(i));
      }
      mx = std::max(mx, raw(i, j));
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      const double e = std::exp(raw(i, j) - mx);
      scores(i, j) = e;
      sum += e;
    }
    for (std::size_t j = 0; j < k; ++j) scores(i, j) /= sum;
  }
  return {std::move(scores), std::move(labels)};
}

EvalSet from_probabilities(Matrix scores, std::vector<int> labels) {
  validate_shape(scores, labels);
  validate_labels(labels, scores.cols());
  for (std::size_t i = 0; i < scores.rows(); ++i) {
    for (std::size_t j = 0; j < scores.cols(); ++j) {
      const double v = scores(i, j);
      if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
        throw std::invalid_argument("score outside [0,1] at sample " + std::to_string(i));
      }
    }
  }
  return {std::move(scores), std::move(labels)};
}

std::vector<int> class_ranking(const EvalSet& ev, std::size_t row) {
  std::vector<int> order(ev.n_classes());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return ev.scores(row, a) > ev.scores(row, b);
  });
  return order;
}

ScoredSamples score_target(const EvalSet& ev, CalibrationTarget target) {
  const std::size_t n = ev.n_samples();
  const int k = static_cast<int>(ev.n_classes());

  if (target.kind == TargetKind::ClassK) {
    if (target.index >= k) {
      throw std::invalid_argument("target class " + std::to_string(target.index) +
                                  " out of range for " + std::to_string(k) + " classes");
    }
  } else if (target.index < 1 || target.index > k) {
    throw std::invalid_argument("target rank " + std::to_string(target.index) +
                                " out of range for " + std::to_string(k) + " classes");
  }

  ScoredSamples out;
  out.target = target;
  out.pairs.resize(n);

  for (std::size_t i = 0; i < n; ++i) {
    switch (target.kind) {
      case TargetKind::ClassK: {
        const int c = target.index;
        out.pairs[i] = {ev.scores(i, c), ev.labels[i] == c ? 1 : 0};
        break;
      }
      case TargetKind::TopR: {
        const auto order = class_ranking(ev, i);
        const int c = order[target.index - 1];
        out.pairs[i] = {ev.scores(i, c), ev.labels[i] == c ? 1 : 0};
        break;
      }
      case TargetKind::WithinTopR: {
        const auto order = class_ranking(ev, i);
        double sum = 0.0;
        int hit = 0;
        for (int r = 0; r < target.index; ++r) {
          sum += ev.scores(i, order[r]);
          if (ev.labels[i] == order[r]) hit = 1;
        }
        out.pairs[i] = {sum, hit};
        break;
      }
    }
  }

  // Stable: equal scores keep original sample order.
  std::stable_sort(out.pairs.begin(), out.pairs.end(),
                   [](const ScoredSample& a, const ScoredSample& b) { return a.score < b.score; });
  return out;
}

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  for (auto& f : fields) {
    while (!f.empty() && (f.back() == '\r' || f.back() == ' ' || f.back() == '\t')) f.pop_back();
    std::size_t lead = 0;
    while (lead < f.size() && (f[lead] == ' ' || f[lead] == '\t')) ++lead;
    f.erase(0, lead);
  }
  return fields;
}

bool parse_number(const std::string& s, double& out) {
  if (s.empty()) return false;
  const char* begin = s.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  return end == begin + s.size();
}

}  // namespace

EvalSet read_eval_csv(std::istream& in, InputKind kind) {
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  std::string line;
  std::size_t line_no = 0;
  std::size_t n_cols = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv_line(line);
    double first = 0.0;
    if (line_no == 1 && !parse_number(fields[0], first)) continue;  // header row

    if (fields.size() < 2) {
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": expected label plus at least one score");
    }
    if (n_cols == 0) {
      n_cols = fields.size();
    } else if (fields.size() != n_cols) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(n_cols) + " fields, got " +
                                  std::to_string(fields.size()));
    }

    double label_val = 0.0;
    if (!parse_number(fields[0], label_val) || label_val != std::floor(label_val)) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": bad label '" +
                                  fields[0] + "'");
    }
    labels.push_back(static_cast<int>(label_val));

    std::vector<double> row(fields.size() - 1);
    for (std::size_t j = 1; j < fields.size(); ++j) {
      if (!parse_number(fields[j], row[j - 1])) {
        throw std::invalid_argument("line " + std::to_string(line_no) + ": bad score '" +
                                    fields[j] + "'");
      }
    }
    rows.push_back(std::move(row));
  }

  if (rows.empty()) throw std::invalid_argument("no samples in CSV input");

  Matrix scores(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) scores(i, j) = rows[i][j];
  }

  return kind == InputKind::Logits ? from_logits(scores, std::move(labels))
                                   : from_probabilities(std::move(scores), std::move(labels));
}

EvalSet read_eval_csv(const std::string& path, InputKind kind) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  return read_eval_csv(in, kind);
}

void write_eval_csv(std::ostream& out, const EvalSet& ev) {
  out << "label";
  for (std::size_t j = 0; j < ev.n_classes(); ++j) out << ",s_" << j;
  out << '\n';
  for (std::size_t i = 0; i < ev.n_samples(); ++i) {
    out << ev.labels[i];
    for (std::size_t j = 0; j < ev.n_classes(); ++j) out << ',' << format_double(ev.scores(i, j));
    out << '\n';
  }
}

void write_eval_csv(const std::string& path, const EvalSet& ev) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open '" + path + "' for writing");
  write_eval_csv(out, ev);
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace splinecal
