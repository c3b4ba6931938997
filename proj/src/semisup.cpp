#include "dparse/semisup.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dparse/decoder.h"
#include "dparse/error.h"
#include "dparse/trainer.h"

namespace dparse {

namespace {

bool same_tree(const Sentence& a, const Sentence& b) {
  for (int t = 1; t <= a.size(); ++t)
    if (a.at(t).head != b.at(t).head || a.at(t).deprel != b.at(t).deprel) return false;
  return true;
}

std::string trimmed(const std::string& s) {
  size_t begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  size_t end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

std::pair<Corpus, SelectionReport> select_agreement(const Corpus& parse_a,
                                                    const Corpus& parse_b,
                                                    const AgreementCriteria& criteria) {
  check_alignment(parse_a, parse_b);
  SelectionReport report;
  Corpus selected;
  long selected_tokens = 0;
  for (size_t i = 0; i < parse_a.size(); ++i) {
    if (!same_tree(parse_a[i], parse_b[i])) continue;
    ++report.candidates;
    if (criteria.min_length && parse_a[i].size() < *criteria.min_length) continue;
    if (criteria.max_selected &&
        static_cast<long>(selected.size()) >= *criteria.max_selected)
      continue;
    selected.push_back(parse_a[i]);
    selected_tokens += parse_a[i].size();
  }
  report.selected = static_cast<long>(selected.size());
  report.agreement_rate = parse_a.empty() ? 0.0
                                          : static_cast<double>(report.candidates) /
                                                static_cast<double>(parse_a.size());
  report.average_length = selected.empty() ? 0.0
                                           : static_cast<double>(selected_tokens) /
                                                 static_cast<double>(selected.size());
  return {std::move(selected), report};
}

Corpus build_boosted_trainset(const Corpus& base, const Corpus& additional) {
  Corpus boosted = base;
  boosted.insert(boosted.end(), additional.begin(), additional.end());
  return boosted;
}

Corpus self_training_select(const std::vector<ScoredParse>& scored, ConfidenceMethod method,
                            std::optional<double> fraction, std::optional<long> count) {
  long take = 0;
  if (fraction) {
    if (*fraction <= 0.0 || *fraction > 1.0)
      throw std::invalid_argument("selection fraction must lie in (0, 1]");
    take = static_cast<long>(*fraction * static_cast<double>(scored.size()));
  } else if (count) {
    take = *count;
    if (take > static_cast<long>(scored.size())) {
      std::cerr << "warning: requested " << take << " sentences from a pool of "
                << scored.size() << "; taking the whole pool\n";
      take = static_cast<long>(scored.size());
    }
  } else {
    throw std::invalid_argument("either a fraction or a count is required");
  }

  std::vector<size_t> order = rank_by_confidence(scored, method);
  Corpus selected;
  selected.reserve(static_cast<size_t>(take));
  for (long i = 0; i < take; ++i)
    selected.push_back(scored[order[static_cast<size_t>(i)]].sentence);
  return selected;
}

PipelineSpec PipelineSpec::parse(std::istream& in) {
  PipelineSpec spec;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string content = trimmed(line);
    if (content.empty() || content[0] == '#') continue;
    size_t eq = content.find('=');
    if (eq == std::string::npos)
      throw ConfigError("pipeline spec line " + std::to_string(line_no) +
                        " is not 'key = value': " + content);
    std::string key = trimmed(content.substr(0, eq));
    std::string value = trimmed(content.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key in pipeline spec line " + std::to_string(line_no));
    spec.values[key] = value;
  }
  return spec;
}

PipelineSpec PipelineSpec::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open pipeline spec: " + path);
  return parse(in);
}

std::string PipelineSpec::get(const std::string& key) const {
  auto it = values.find(key);
  if (it == values.end()) throw ConfigError("pipeline spec is missing key '" + key + "'");
  return it->second;
}

std::string PipelineSpec::get_or(const std::string& key, const std::string& fallback) const {
  auto it = values.find(key);
  return it == values.end() ? fallback : it->second;
}

long PipelineSpec::get_long_or(const std::string& key, long fallback) const {
  auto it = values.find(key);
  return it == values.end() ? fallback : std::stol(it->second);
}

double PipelineSpec::get_double_or(const std::string& key, double fallback) const {
  auto it = values.find(key);
  return it == values.end() ? fallback : std::stod(it->second);
}

namespace {

Corpus projective_subset(const Corpus& corpus, long* dropped) {
  Corpus kept;
  kept.reserve(corpus.size());
  for (const Sentence& sentence : corpus) {
    if (is_projective(sentence))
      kept.push_back(sentence);
    else if (dropped)
      ++*dropped;
  }
  return kept;
}

// Trains one learner, skipping non-projective sentences when the system
// cannot derive them.
WeightModel train_learner(const Corpus& corpus, SystemKind system, const TrainOptions& options,
                          int hash_bits, std::ostream& log) {
  if (system == SystemKind::ArcEager) {
    long dropped = 0;
    Corpus usable = projective_subset(corpus, &dropped);
    if (dropped > 0)
      log << "arc_eager learner: skipped " << dropped << " non-projective sentences\n";
    return train_model(usable, system, options, hash_bits);
  }
  return train_model(corpus, system, options, hash_bits);
}

std::vector<ScoredParse> score_corpus(const Corpus& unlabelled, const WeightModel& model,
                                      ConfidenceMethod method, double d, int beam,
                                      int workers) {
  DecodeOptions options;
  options.beam = beam;
  std::vector<DecodeResult> decoded = decode_corpus(unlabelled, model, options, workers);
  std::vector<ScoredParse> scored;
  scored.reserve(decoded.size());
  for (size_t i = 0; i < decoded.size(); ++i) {
    ScoredParse parse;
    parse.sentence = std::move(decoded[i].tree);
    parse.length = parse.sentence.size();
    parse.raw_score = decoded[i].parse_score;
    parse.d = d;
    parse.adjusted_score = adjusted_score(parse.raw_score, std::max(1, parse.length), d);
    if (method == ConfidenceMethod::Delta)
      parse.delta_score = delta_score(unlabelled[i], model, beam);
    scored.push_back(std::move(parse));
  }
  return scored;
}

}  // namespace

PipelineResult run_pipeline(const PipelineSpec& spec) {
  const std::string method = spec.get("method");
  if (method != "self_training" && method != "co_training" && method != "tri_training")
    throw ConfigError("unknown pipeline method: " + method);

  // every referenced file must exist before any compute starts
  const std::string train_path = spec.get("train");
  const std::string unlabelled_path = spec.get("unlabelled");
  const std::string test_path = spec.get_or("test", "");
  for (const std::string& path : {train_path, unlabelled_path}) {
    if (!std::filesystem::exists(path)) throw ConfigError("missing resource: " + path);
  }
  if (!test_path.empty() && !std::filesystem::exists(test_path))
    throw ConfigError("missing resource: " + test_path);

  const ConllFormat format = conll_format_from_string(spec.get_or("format", "conll06"));
  TrainOptions options;
  options.beam = static_cast<int>(spec.get_long_or("beam", 40));
  options.iterations = static_cast<int>(spec.get_long_or("iterations", 25));
  options.early_update = spec.get_or("early_update", "false") == "true";
  options.average = spec.get_or("average", "true") == "true";
  const int hash_bits = static_cast<int>(spec.get_long_or("hash_bits", 22));
  const int workers = static_cast<int>(spec.get_long_or("workers", 1));
  const double d = spec.get_double_or("d", kDefaultAdjustD);

  const Corpus train_corpus = read_conll_file(train_path, format);
  const Corpus unlabelled = read_conll_file(unlabelled_path, format);

  std::ostringstream report;
  report << "method: " << method << "\n";
  report << "train: " << train_path << " (" << train_corpus.size() << " sentences)\n";
  report << "unlabelled: " << unlabelled_path << " (" << unlabelled.size() << " sentences)\n";

  PipelineResult result;
  Corpus selected;
  SystemKind eval_system = SystemKind::ArcStandardSwap;

  if (method == "self_training") {
    eval_system = system_from_string(spec.get_or("system", "arc_standard_swap"));
    const ConfidenceMethod confidence =
        confidence_method_from_string(spec.get_or("confidence", "adjusted"));
    WeightModel base = train_learner(train_corpus, eval_system, options, hash_bits, report);
    std::vector<ScoredParse> scored =
        score_corpus(unlabelled, base, confidence, d, options.beam, workers);

    std::optional<double> fraction;
    std::optional<long> count;
    if (spec.has("count"))
      count = spec.get_long_or("count", 0);
    else
      fraction = spec.get_double_or("fraction", 0.5);
    selected = self_training_select(scored, confidence, fraction, count);

    result.selection.candidates = static_cast<long>(scored.size());
    result.selection.selected = static_cast<long>(selected.size());
    result.selection.agreement_rate =
        scored.empty() ? 0.0
                       : static_cast<double>(selected.size()) / static_cast<double>(scored.size());
    long tokens = 0;
    for (const Sentence& s : selected) tokens += s.size();
    result.selection.average_length =
        selected.empty() ? 0.0 : static_cast<double>(tokens) / static_cast<double>(selected.size());
    report << "confidence: " << to_string(confidence) << " (d = " << d << ")\n";
  } else {
    SystemKind system_a = system_from_string(spec.get_or("source_a_system", "arc_standard_swap"));
    SystemKind system_b = system_from_string(spec.get_or("source_b_system", "arc_eager"));
    // co-training evaluates one of the source learners; tri-training a third one
    eval_system = method == "co_training"
                      ? system_a
                      : system_from_string(spec.get_or("eval_system", "arc_standard_swap"));

    WeightModel learner_a = train_learner(train_corpus, system_a, options, hash_bits, report);
    WeightModel learner_b = train_learner(train_corpus, system_b, options, hash_bits, report);

    DecodeOptions decode_options;
    decode_options.beam = options.beam;
    std::vector<DecodeResult> parsed_a = decode_corpus(unlabelled, learner_a, decode_options, workers);
    std::vector<DecodeResult> parsed_b = decode_corpus(unlabelled, learner_b, decode_options, workers);
    Corpus trees_a, trees_b;
    trees_a.reserve(parsed_a.size());
    trees_b.reserve(parsed_b.size());
    for (DecodeResult& r : parsed_a) trees_a.push_back(std::move(r.tree));
    for (DecodeResult& r : parsed_b) trees_b.push_back(std::move(r.tree));

    AgreementCriteria criteria;
    if (spec.has("min_length")) criteria.min_length = static_cast<int>(spec.get_long_or("min_length", 0));
    if (spec.has("max_selected")) criteria.max_selected = spec.get_long_or("max_selected", 0);
    auto [agreed, agreement_report] = select_agreement(trees_a, trees_b, criteria);
    selected = std::move(agreed);
    result.selection = agreement_report;
    report << "source learners: " << to_string(system_a) << " + " << to_string(system_b) << "\n";
  }

  report << "selected: " << result.selection.selected << " of " << result.selection.candidates
         << " candidates (rate " << result.selection.agreement_rate << ", avg length "
         << result.selection.average_length << ")\n";

  Corpus boosted = build_boosted_trainset(train_corpus, selected);
  report << "boosted training set: " << boosted.size() << " sentences\n";
  result.model = train_learner(boosted, eval_system, options, hash_bits, report);

  if (!test_path.empty()) {
    const Corpus test = read_conll_file(test_path, format);
    DecodeOptions decode_options;
    decode_options.beam = options.beam;
    std::vector<DecodeResult> decoded = decode_corpus(test, result.model, decode_options, workers);
    Corpus predicted;
    predicted.reserve(decoded.size());
    for (DecodeResult& r : decoded) predicted.push_back(std::move(r.tree));
    const bool include_punct = spec.get_or("punctuation", "include") != "exclude";
    result.evaluation = attachment_scores(test, predicted, include_punct);
    report << "test LAS: " << result.evaluation->las() << " UAS: " << result.evaluation->uas()
           << " over " << result.evaluation->total << " tokens\n";
  }

  result.report = report.str();
  return result;
}

}  // namespace dparse
