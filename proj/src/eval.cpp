#include "dparse/eval.h"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <ostream>
#include <random>
#include <stdexcept>

#include "dparse/error.h"

namespace dparse {

namespace {

std::string pct(double fraction) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.2f", fraction * 100.0);
  return buffer;
}

std::string fixed4(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.4f", value);
  return buffer;
}

std::vector<double> per_sentence_las(const Corpus& gold, const Corpus& predicted,
                                     bool include_punctuation,
                                     const PunctuationConfig& punct) {
  std::vector<double> las(gold.size());
  for (size_t i = 0; i < gold.size(); ++i)
    las[i] = sentence_las(gold[i], predicted[i], include_punctuation, punct);
  return las;
}

}  // namespace

bool PunctuationConfig::is_punct(const std::string& pos) const {
  if (extra_tags.count(pos)) return true;
  if (pos.empty()) return false;
  for (char c : pos)
    if (!std::ispunct(static_cast<unsigned char>(c))) return false;
  return true;
}

void check_alignment(const Corpus& a, const Corpus& b) {
  if (a.size() != b.size())
    throw AlignmentError("corpora differ in sentence count", static_cast<long>(std::min(a.size(), b.size())));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size())
      throw AlignmentError("sentence length mismatch", static_cast<long>(i));
    for (int t = 1; t <= a[i].size(); ++t)
      if (a[i].at(t).form != b[i].at(t).form)
        throw AlignmentError("token form mismatch", static_cast<long>(i));
  }
}

EvalResult attachment_scores(const Corpus& gold, const Corpus& predicted,
                             bool include_punctuation, const PunctuationConfig& punct) {
  check_alignment(gold, predicted);
  EvalResult result;
  result.include_punctuation = include_punctuation;
  for (size_t i = 0; i < gold.size(); ++i) {
    for (int t = 1; t <= gold[i].size(); ++t) {
      const Token& g = gold[i].at(t);
      const Token& p = predicted[i].at(t);
      if (!include_punctuation && punct.is_punct(g.pos)) continue;
      ++result.total;
      if (g.head == p.head) {
        ++result.correct_heads;
        if (g.deprel == p.deprel) ++result.correct_labeled;
      }
    }
  }
  return result;
}

double sentence_las(const Sentence& gold, const Sentence& predicted,
                    bool include_punctuation, const PunctuationConfig& punct) {
  long total = 0, correct = 0;
  for (int t = 1; t <= gold.size(); ++t) {
    const Token& g = gold.at(t);
    if (!include_punctuation && punct.is_punct(g.pos)) continue;
    ++total;
    const Token& p = predicted.at(t);
    if (g.head == p.head && g.deprel == p.deprel) ++correct;
  }
  return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
}

std::string SignificanceResult::stars() const {
  if (p < 0.01) return "**";
  if (p < 0.05) return "*";
  return "";
}

SignificanceResult significance(const Corpus& gold, const Corpus& predicted1,
                                const Corpus& predicted2, long iterations, uint64_t seed,
                                bool include_punctuation, const PunctuationConfig& punct) {
  check_alignment(gold, predicted1);
  check_alignment(gold, predicted2);
  if (gold.empty()) throw std::invalid_argument("cannot compare on an empty corpus");
  if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");

  EvalResult overall1 = attachment_scores(gold, predicted1, include_punctuation, punct);
  EvalResult overall2 = attachment_scores(gold, predicted2, include_punctuation, punct);

  SignificanceResult result;
  result.iterations = iterations;
  std::vector<double> first = per_sentence_las(gold, predicted1, include_punctuation, punct);
  std::vector<double> second = per_sentence_las(gold, predicted2, include_punctuation, punct);
  // the first input is the one with the higher overall accuracy
  if (overall1.las() < overall2.las()) {
    std::swap(first, second);
    result.swapped = true;
  }
  result.degenerate = first == second;

  std::mt19937_64 rng(seed);
  const size_t n = first.size();
  for (long i = 0; i < iterations; ++i) {
    size_t pick = static_cast<size_t>(rng() % n);
    if (first[pick] < second[pick]) ++result.less;
  }
  result.p = static_cast<double>(result.less) / static_cast<double>(iterations);
  return result;
}

LabelReport label_scores(const Corpus& gold, const Corpus& predicted) {
  check_alignment(gold, predicted);
  std::map<std::string, LabelScore> by_label;
  LabelReport report;
  for (size_t i = 0; i < gold.size(); ++i) {
    for (int t = 1; t <= gold[i].size(); ++t) {
      const std::string& g = gold[i].at(t).deprel;
      const std::string& p = predicted[i].at(t).deprel;
      by_label[g].gold += 1;
      by_label[p].predicted += 1;
      if (g == p)
        by_label[g].correct += 1;
      else
        report.confusion[{g, p}] += 1;
    }
  }
  for (auto& [label, score] : by_label) {
    score.label = label;
    report.scores.push_back(score);
  }
  return report;
}

std::pair<EvalResult, EvalResult> unknown_split(const Corpus& gold, const Corpus& predicted,
                                                const std::set<std::string>& vocabulary,
                                                bool include_punctuation,
                                                const PunctuationConfig& punct) {
  check_alignment(gold, predicted);
  EvalResult known, unknown;
  known.include_punctuation = unknown.include_punctuation = include_punctuation;
  for (size_t i = 0; i < gold.size(); ++i) {
    for (int t = 1; t <= gold[i].size(); ++t) {
      const Token& g = gold[i].at(t);
      const Token& p = predicted[i].at(t);
      if (!include_punctuation && punct.is_punct(g.pos)) continue;
      EvalResult& side = vocabulary.count(g.form) ? known : unknown;
      ++side.total;
      if (g.head == p.head) {
        ++side.correct_heads;
        if (g.deprel == p.deprel) ++side.correct_labeled;
      }
    }
  }
  return {known, unknown};
}

BucketFactor bucket_factor_from_string(const std::string& name) {
  if (name == "length") return BucketFactor::Length;
  if (name == "unknown" || name == "unknown_words") return BucketFactor::UnknownWords;
  if (name == "prepositions" || name == "prep") return BucketFactor::Prepositions;
  if (name == "conjunctions" || name == "conj") return BucketFactor::Conjunctions;
  throw ConfigError("unknown bucket factor: " + name);
}

std::string to_string(BucketFactor factor) {
  switch (factor) {
    case BucketFactor::Length: return "length";
    case BucketFactor::UnknownWords: return "unknown_words";
    case BucketFactor::Prepositions: return "prepositions";
    case BucketFactor::Conjunctions: return "conjunctions";
  }
  return "?";
}

BucketReport bucket_analysis(const Corpus& gold, const Corpus& predicted_base,
                             const Corpus& predicted_new, BucketFactor factor,
                             const BucketConfig& config) {
  check_alignment(gold, predicted_base);
  check_alignment(gold, predicted_new);
  if (factor == BucketFactor::UnknownWords && !config.vocabulary)
    throw std::invalid_argument("the unknown-words factor requires a vocabulary");

  auto key_of = [&](const Sentence& sentence) -> int {
    switch (factor) {
      case BucketFactor::Length:
        // width-4 buckets starting at 1: 1-4, 5-8, ...
        return 1 + 4 * ((sentence.size() - 1) / 4);
      case BucketFactor::UnknownWords: {
        int count = 0;
        for (const Token& t : sentence.tokens)
          if (!config.vocabulary->count(t.form)) ++count;
        return count;
      }
      case BucketFactor::Prepositions: {
        int count = 0;
        for (const Token& t : sentence.tokens)
          if (config.preposition_tags.count(t.pos)) ++count;
        return count;
      }
      case BucketFactor::Conjunctions: {
        int count = 0;
        for (const Token& t : sentence.tokens)
          if (config.conjunction_tags.count(t.pos)) ++count;
        return count;
      }
    }
    return 0;
  };

  struct Tally {
    long better = 0, worse = 0, unchanged = 0;
  };
  std::map<int, Tally> buckets;
  for (size_t i = 0; i < gold.size(); ++i) {
    double base = sentence_las(gold[i], predicted_base[i], config.include_punctuation,
                               config.punct);
    double fresh = sentence_las(gold[i], predicted_new[i], config.include_punctuation,
                                config.punct);
    Tally& tally = buckets[key_of(gold[i])];
    if (fresh > base)
      ++tally.better;
    else if (fresh < base)
      ++tally.worse;
    else
      ++tally.unchanged;
  }

  BucketReport report;
  report.factor = factor;
  for (const auto& [key, tally] : buckets) {
    BucketRow row;
    row.key = key;
    row.sentences = tally.better + tally.worse + tally.unchanged;
    row.better = 100.0 * static_cast<double>(tally.better) / static_cast<double>(row.sentences);
    row.worse = 100.0 * static_cast<double>(tally.worse) / static_cast<double>(row.sentences);
    row.unchanged =
        100.0 * static_cast<double>(tally.unchanged) / static_cast<double>(row.sentences);
    report.rows.push_back(row);
  }
  return report;
}

void write_eval_report(std::ostream& out, const EvalResult& result, bool tsv) {
  if (tsv) {
    out << result.correct_heads << '\t' << result.correct_labeled << '\t' << result.total
        << '\t' << fixed4(result.uas()) << '\t' << fixed4(result.las()) << '\n';
    return;
  }
  out << "tokens scored: " << result.total
      << " (punctuation " << (result.include_punctuation ? "included" : "excluded") << ")\n";
  if (result.empty()) {
    out << "UAS: -\nLAS: -\n";
    return;
  }
  out << "UAS: " << pct(result.uas()) << " (" << result.correct_heads << "/" << result.total
      << ")\n";
  out << "LAS: " << pct(result.las()) << " (" << result.correct_labeled << "/" << result.total
      << ")\n";
}

void write_significance_report(std::ostream& out, const SignificanceResult& result, bool tsv) {
  if (tsv) {
    out << result.p << '\t' << result.less << '\t' << result.iterations << '\t'
        << result.stars() << '\n';
    return;
  }
  out << "p = " << fixed4(result.p) << " (" << result.less << "/" << result.iterations
      << " draws less accurate)";
  if (!result.stars().empty()) out << " " << result.stars();
  out << '\n';
  if (result.swapped) out << "inputs were swapped: the second had the higher overall LAS\n";
  if (result.degenerate) out << "degenerate comparison: identical per-sentence accuracies\n";
}

void write_label_report(std::ostream& out, const LabelReport& report, bool tsv) {
  if (!tsv) out << "label\tP_L\tG_L\tPG_L\tprecision\trecall\tf-score\n";
  for (const LabelScore& s : report.scores) {
    out << s.label << '\t' << s.predicted << '\t' << s.gold << '\t' << s.correct << '\t'
        << fixed4(s.precision()) << '\t' << fixed4(s.recall()) << '\t' << fixed4(s.f_score())
        << '\n';
  }
  if (report.confusion.empty()) return;
  if (!tsv) out << "\nconfusion (gold -> predicted)\n";
  for (const auto& [pair, count] : report.confusion)
    out << pair.first << '\t' << pair.second << '\t' << count << '\n';
}

void write_bucket_report(std::ostream& out, const BucketReport& report, bool tsv) {
  if (!tsv)
    out << to_string(report.factor) << "\tbetter%\tworse%\tno-change%\tsentences\n";
  for (const BucketRow& row : report.rows) {
    out << row.key << '\t' << fixed4(row.better) << '\t' << fixed4(row.worse) << '\t'
        << fixed4(row.unchanged) << '\t' << row.sentences << '\n';
  }
}

}  // namespace dparse
