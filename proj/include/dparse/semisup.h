#pragma once

// Data-selection pipelines: agreement-based co-/tri-training and
// confidence-based self-training, end to end.

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dparse/confidence.h"
#include "dparse/corpus.h"
#include "dparse/eval.h"
#include "dparse/model.h"

namespace dparse {

struct AgreementCriteria {
  std::optional<int> min_length;     // tokens; shorter agreed sentences are dropped
  std::optional<long> max_selected;  // first N candidates in corpus order
};

struct SelectionReport {
  long candidates = 0;           // identically annotated sentences
  long selected = 0;
  double agreement_rate = 0.0;   // candidates / corpus size
  double average_length = 0.0;   // of the selected sentences
};

// A sentence is a candidate iff every token carries the same (head, label) in
// both parses. Inputs must be the same sentences in the same order.
std::pair<Corpus, SelectionReport> select_agreement(const Corpus& parse_a,
                                                    const Corpus& parse_b,
                                                    const AgreementCriteria& criteria = {});

// Concatenation, base first, no deduplication.
Corpus build_boosted_trainset(const Corpus& base, const Corpus& additional);

// Top slice of the ranked parses: either a fraction in (0, 1] or an absolute
// count (clamped to the corpus size with a warning on stderr).
Corpus self_training_select(const std::vector<ScoredParse>& scored, ConfidenceMethod method,
                            std::optional<double> fraction, std::optional<long> count);

// Flat key-value pipeline spec ("key = value" lines, '#' comments).
struct PipelineSpec {
  std::map<std::string, std::string> values;

  static PipelineSpec parse(std::istream& in);
  static PipelineSpec parse_file(const std::string& path);

  bool has(const std::string& key) const { return values.count(key) != 0; }
  std::string get(const std::string& key) const;  // ConfigError when missing
  std::string get_or(const std::string& key, const std::string& fallback) const;
  long get_long_or(const std::string& key, long fallback) const;
  double get_double_or(const std::string& key, double fallback) const;
};

struct PipelineResult {
  WeightModel model;
  SelectionReport selection;
  std::optional<EvalResult> evaluation;  // when a gold test set was given
  std::string report;                    // plain-text summary
};

PipelineResult run_pipeline(const PipelineSpec& spec);

}  // namespace dparse
