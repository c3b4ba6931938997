#pragma once

// Confidence scores for auto-parsed sentences: the length-normalized parse
// score, its length-adjusted variant with d tuned on a 100-bin calibration
// error grid, and the Delta score from per-edge constrained re-decoding.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dparse/corpus.h"
#include "dparse/model.h"

namespace dparse {

inline constexpr double kDefaultAdjustD = 0.015;

enum class ConfidenceMethod { Raw, Adjusted, Delta };
ConfidenceMethod confidence_method_from_string(const std::string& name);
std::string to_string(ConfidenceMethod method);

struct ScoredParse {
  Sentence sentence;  // predicted annotation
  int length = 0;
  double raw_score = 0.0;
  std::optional<double> adjusted_score;
  std::optional<double> delta_score;
  double d = 0.0;  // the d used for adjusted_score
};

double adjusted_score(double raw, int length, double d);

// f_r over (score, accuracy) pairs: scores are clipped into [0, 3] and split
// into 100 bins; each bin contributes n_i * (c_i - a_i)^2 with c_i the bin
// centre (i - 0.5)/100 and a_i the mean accuracy of the bin.
double calibration_rmse(const std::vector<std::pair<double, double>>& score_and_accuracy);

struct TuningSample {
  double raw_score = 0.0;
  int length = 0;
  double accuracy = 0.0;  // per-sentence LAS in [0, 1]
};

struct DTuningReport {
  std::vector<std::pair<double, double>> grid;  // (d, f_r)
  double chosen_d = 0.0;
};

std::vector<double> default_d_grid();  // 0, 0.005, ..., 0.05

DTuningReport tune_d(const std::vector<TuningSample>& samples,
                     const std::vector<double>& grid = default_d_grid());

// Mean absolute gap between the best tree's score and the best alternative
// forbidding each of its L labelled edges, all length-normalized.
double delta_score(const Sentence& sentence, const WeightModel& model, int beam);

// Indices of the parses in stable descending score order under the method.
std::vector<size_t> rank_by_confidence(const std::vector<ScoredParse>& parses,
                                       ConfidenceMethod method);

// Sidecar format: "index<TAB>raw<TAB>adjusted<TAB>delta", absent values "_".
void write_confidence_sidecar(std::ostream& out, const std::vector<ScoredParse>& parses);
struct SidecarRow {
  double raw_score = 0.0;
  std::optional<double> adjusted_score;
  std::optional<double> delta_score;
};
std::vector<SidecarRow> read_confidence_sidecar(std::istream& in);

// Plain "index<TAB>score" sidecar emitted next to parsed output.
void write_scores_sidecar(std::ostream& out, const std::vector<double>& scores);
std::vector<double> read_scores_sidecar(std::istream& in);

void write_tuning_report(std::ostream& out, const DTuningReport& report);

}  // namespace dparse
