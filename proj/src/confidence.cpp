#include "dparse/confidence.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "dparse/decoder.h"
#include "dparse/error.h"

namespace dparse {

namespace {

std::string format_score(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6f", value);
  return buffer;
}

std::string format_optional(const std::optional<double>& value) {
  return value ? format_score(*value) : "_";
}

int bin_of(double score) {
  double clipped = std::min(3.0, std::max(0.0, score));
  int bin = static_cast<int>(clipped / 0.03) + 1;
  return std::min(100, std::max(1, bin));
}

}  // namespace

ConfidenceMethod confidence_method_from_string(const std::string& name) {
  if (name == "raw") return ConfidenceMethod::Raw;
  if (name == "adjusted") return ConfidenceMethod::Adjusted;
  if (name == "delta") return ConfidenceMethod::Delta;
  throw ConfigError("unknown confidence method: " + name);
}

std::string to_string(ConfidenceMethod method) {
  switch (method) {
    case ConfidenceMethod::Raw: return "raw";
    case ConfidenceMethod::Adjusted: return "adjusted";
    case ConfidenceMethod::Delta: return "delta";
  }
  return "?";
}

double adjusted_score(double raw, int length, double d) {
  if (length < 1) throw std::invalid_argument("sentence length must be >= 1");
  if (d < 0.0) throw std::invalid_argument("d must be >= 0");
  return raw - length * d;
}

double calibration_rmse(const std::vector<std::pair<double, double>>& score_and_accuracy) {
  if (score_and_accuracy.empty())
    throw std::invalid_argument("calibration error of an empty corpus is undefined");
  long counts[101] = {0};
  double accuracy_sum[101] = {0.0};
  for (const auto& [score, accuracy] : score_and_accuracy) {
    int bin = bin_of(score);
    ++counts[bin];
    accuracy_sum[bin] += accuracy;
  }
  double weighted = 0.0;
  long total = 0;
  for (int i = 1; i <= 100; ++i) {
    if (counts[i] == 0) continue;
    double center = (i - 0.5) / 100.0;
    double actual = accuracy_sum[i] / static_cast<double>(counts[i]);
    weighted += static_cast<double>(counts[i]) * (center - actual) * (center - actual);
    total += counts[i];
  }
  return std::sqrt(weighted / static_cast<double>(total));
}

std::vector<double> default_d_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(i * 0.005);
  return grid;
}

DTuningReport tune_d(const std::vector<TuningSample>& samples,
                     const std::vector<double>& grid) {
  if (samples.empty()) throw std::invalid_argument("cannot tune d on an empty corpus");
  if (grid.empty()) throw std::invalid_argument("empty d grid");

  DTuningReport report;
  double best = 0.0;
  for (double d : grid) {
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(samples.size());
    for (const TuningSample& sample : samples)
      pairs.emplace_back(adjusted_score(sample.raw_score, sample.length, d), sample.accuracy);
    double fr = calibration_rmse(pairs);
    report.grid.emplace_back(d, fr);
    if (report.grid.size() == 1 || fr < best) {
      best = fr;
      report.chosen_d = d;
    }
  }
  return report;
}

double delta_score(const Sentence& sentence, const WeightModel& model, int beam) {
  if (sentence.size() < 1) throw std::invalid_argument("delta score needs a non-empty sentence");
  DecodeOptions options;
  options.beam = beam;
  DecodeResult best = decode(sentence, model, options);

  double total = 0.0;
  for (int i = 1; i <= sentence.size(); ++i) {
    const Token& token = best.tree.at(i);
    DecodeOptions constrained = options;
    constrained.constraint.forbidden_edge = Arc{token.head, i, token.deprel};
    DecodeResult alternative = decode(sentence, model, constrained);
    total += std::abs(best.parse_score - alternative.parse_score);
  }
  return total / sentence.size();
}

std::vector<size_t> rank_by_confidence(const std::vector<ScoredParse>& parses,
                                       ConfidenceMethod method) {
  auto score_of = [&](const ScoredParse& parse) {
    switch (method) {
      case ConfidenceMethod::Raw:
        return parse.raw_score;
      case ConfidenceMethod::Adjusted:
        if (!parse.adjusted_score)
          throw std::invalid_argument("missing adjusted score for confidence ranking");
        return *parse.adjusted_score;
      case ConfidenceMethod::Delta:
        if (!parse.delta_score)
          throw std::invalid_argument("missing delta score for confidence ranking");
        return *parse.delta_score;
    }
    return 0.0;
  };
  std::vector<size_t> order(parses.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return score_of(parses[a]) > score_of(parses[b]);
  });
  return order;
}

void write_confidence_sidecar(std::ostream& out, const std::vector<ScoredParse>& parses) {
  for (size_t i = 0; i < parses.size(); ++i) {
    out << i << '\t' << format_score(parses[i].raw_score) << '\t'
        << format_optional(parses[i].adjusted_score) << '\t'
        << format_optional(parses[i].delta_score) << '\n';
  }
}

std::vector<SidecarRow> read_confidence_sidecar(std::istream& in) {
  std::vector<SidecarRow> rows;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream iss(line);
    long index = 0;
    std::string raw, adjusted, delta;
    if (!(iss >> index >> raw >> adjusted >> delta))
      throw ParseError("bad confidence sidecar row", line_no);
    if (index != static_cast<long>(rows.size()))
      throw ParseError("sidecar rows out of order", line_no);
    SidecarRow row;
    row.raw_score = std::stod(raw);
    if (adjusted != "_") row.adjusted_score = std::stod(adjusted);
    if (delta != "_") row.delta_score = std::stod(delta);
    rows.push_back(row);
  }
  return rows;
}

void write_scores_sidecar(std::ostream& out, const std::vector<double>& scores) {
  for (size_t i = 0; i < scores.size(); ++i)
    out << i << '\t' << format_score(scores[i]) << '\n';
}

std::vector<double> read_scores_sidecar(std::istream& in) {
  std::vector<double> scores;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream iss(line);
    long index = 0;
    double score = 0.0;
    if (!(iss >> index >> score)) throw ParseError("bad scores sidecar row", line_no);
    if (index != static_cast<long>(scores.size()))
      throw ParseError("sidecar rows out of order", line_no);
    scores.push_back(score);
  }
  return scores;
}

void write_tuning_report(std::ostream& out, const DTuningReport& report) {
  out << "d\tf_r\n";
  for (const auto& [d, fr] : report.grid)
    out << format_score(d) << '\t' << format_score(fr) << '\n';
  out << "chosen_d\t" << format_score(report.chosen_d) << '\n';
}

}  // namespace dparse
