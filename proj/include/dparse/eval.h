#pragma once

// Attachment scores, the randomized significance comparator, per-label
// precision/recall/F with confusion counts, known/unknown-word splits and
// sentence-level bucket analysis.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dparse/corpus.h"

namespace dparse {

// A token counts as punctuation when its gold POS consists solely of
// punctuation characters or is listed explicitly.
struct PunctuationConfig {
  std::set<std::string> extra_tags;
  bool is_punct(const std::string& pos) const;
};

struct EvalResult {
  long correct_heads = 0;    // C_a
  long correct_labeled = 0;  // C_{a+l}
  long total = 0;            // C_t
  bool include_punctuation = true;

  double uas() const { return total == 0 ? 0.0 : static_cast<double>(correct_heads) / total; }
  double las() const { return total == 0 ? 0.0 : static_cast<double>(correct_labeled) / total; }
  bool empty() const { return total == 0; }
};

// Throws AlignmentError with the first mismatching index when the corpora are
// not the same sentences in the same order.
void check_alignment(const Corpus& a, const Corpus& b);

EvalResult attachment_scores(const Corpus& gold, const Corpus& predicted,
                             bool include_punctuation = true,
                             const PunctuationConfig& punct = {});

double sentence_las(const Sentence& gold, const Sentence& predicted,
                    bool include_punctuation = true, const PunctuationConfig& punct = {});

struct SignificanceResult {
  double p = 0.0;
  long less = 0;
  long iterations = 0;
  bool swapped = false;     // inputs were swapped to put the higher LAS first
  bool degenerate = false;  // identical per-sentence accuracies
  std::string stars() const;  // "**" p<0.01, "*" p<0.05, "" otherwise
};

SignificanceResult significance(const Corpus& gold, const Corpus& predicted1,
                                const Corpus& predicted2, long iterations = 10000,
                                uint64_t seed = 1, bool include_punctuation = true,
                                const PunctuationConfig& punct = {});

struct LabelScore {
  std::string label;
  long predicted = 0;  // P_L
  long gold = 0;       // G_L
  long correct = 0;    // PG_L

  double precision() const { return predicted == 0 ? 0.0 : static_cast<double>(correct) / predicted; }
  double recall() const { return gold == 0 ? 0.0 : static_cast<double>(correct) / gold; }
  double f_score() const {
    double p = precision(), r = recall();
    return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
  }
};

struct LabelReport {
  std::vector<LabelScore> scores;  // sorted by label
  std::map<std::pair<std::string, std::string>, long> confusion;  // gold -> predicted
};

LabelReport label_scores(const Corpus& gold, const Corpus& predicted);

// Token partition by form membership in the training vocabulary.
std::pair<EvalResult, EvalResult> unknown_split(const Corpus& gold, const Corpus& predicted,
                                                const std::set<std::string>& vocabulary,
                                                bool include_punctuation = true,
                                                const PunctuationConfig& punct = {});

enum class BucketFactor { Length, UnknownWords, Prepositions, Conjunctions };
BucketFactor bucket_factor_from_string(const std::string& name);
std::string to_string(BucketFactor factor);

struct BucketRow {
  int key = 0;  // bucket lower bound for Length, exact count otherwise
  double better = 0.0;     // percentages
  double worse = 0.0;
  double unchanged = 0.0;
  long sentences = 0;
};

struct BucketReport {
  BucketFactor factor = BucketFactor::Length;
  std::vector<BucketRow> rows;  // sorted by key
};

struct BucketConfig {
  std::optional<std::set<std::string>> vocabulary;  // required for UnknownWords
  std::set<std::string> preposition_tags{"IN"};
  std::set<std::string> conjunction_tags{"CC"};
  bool include_punctuation = true;
  PunctuationConfig punct;
};

BucketReport bucket_analysis(const Corpus& gold, const Corpus& predicted_base,
                             const Corpus& predicted_new, BucketFactor factor,
                             const BucketConfig& config = {});

// Plain-text tables; `tsv` switches to bare tab-separated rows.
void write_eval_report(std::ostream& out, const EvalResult& result, bool tsv = false);
void write_significance_report(std::ostream& out, const SignificanceResult& result,
                               bool tsv = false);
void write_label_report(std::ostream& out, const LabelReport& report, bool tsv = false);
void write_bucket_report(std::ostream& out, const BucketReport& report, bool tsv = false);

}  // namespace dparse
