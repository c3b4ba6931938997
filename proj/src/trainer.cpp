#include "dparse/trainer.h"

#include <set>
#include <stdexcept>

#include "dparse/decoder.h"
#include "dparse/error.h"

namespace dparse {

std::vector<std::string> collect_labels(const Corpus& corpus) {
  std::set<std::string> labels;
  for (const Sentence& sentence : corpus)
    for (const Token& token : sentence.tokens) {
      if (token.deprel.empty())
        throw ValidationError("token " + std::to_string(token.index) +
                              " has no dependency label");
      labels.insert(token.deprel);
    }
  return {labels.begin(), labels.end()};
}

std::vector<LabeledExample> make_examples(const Corpus& corpus, SystemKind system) {
  std::vector<LabeledExample> examples;
  examples.reserve(corpus.size());
  for (const Sentence& sentence : corpus)
    examples.push_back({sentence, oracle_sequence(sentence, system)});
  return examples;
}

namespace {

struct ExampleCache {
  std::vector<std::vector<uint64_t>> step_ids;
  FeatureVector total;
  std::vector<Arc> gold_arcs;
};

ExampleCache build_cache(const LabeledExample& example, const WeightModel& model) {
  ExampleCache cache;
  Configuration config = initial_configuration(example.sentence, model.system());
  for (const Transition& t : example.gold_sequence) {
    std::vector<uint64_t> ids = extract_features(config, t, example.sentence, model);
    cache.total.add_ids(ids);
    cache.step_ids.push_back(std::move(ids));
    config = apply(config, t);
  }
  if (!is_terminal(config))
    throw ValidationError("gold transition sequence does not reach a terminal configuration");
  cache.gold_arcs = config.arcs();
  return cache;
}

}  // namespace

void train(WeightModel& model, const std::vector<LabeledExample>& examples,
           const TrainOptions& options) {
  if (options.iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  if (examples.empty()) throw std::invalid_argument("training set is empty");

  std::vector<ExampleCache> caches;
  caches.reserve(examples.size());
  for (const LabeledExample& example : examples) caches.push_back(build_cache(example, model));

  for (int epoch = 0; epoch < options.iterations; ++epoch) {
    for (size_t i = 0; i < examples.size(); ++i) {
      const LabeledExample& example = examples[i];
      const ExampleCache& cache = caches[i];
      model.advance_clock();

      TrainingDecode decoded = decode_for_training(
          example.sentence, example.gold_sequence, model, options.beam, options.early_update);
      if (decoded.gold_fell_out) {
        FeatureVector prefix;
        for (int s = 0; s < decoded.gold_prefix_length; ++s)
          prefix.add_ids(cache.step_ids[static_cast<size_t>(s)]);
        model.pa_update(prefix, decoded.predicted_features);
      } else if (decoded.predicted_arcs != cache.gold_arcs) {
        model.pa_update(cache.total, decoded.predicted_features);
      }
    }
  }
  if (options.average) model.finalize_average();
}

WeightModel train_model(const Corpus& corpus, SystemKind system, const TrainOptions& options,
                        int hash_bits,
                        const std::vector<std::pair<std::string, DlmTable>>& attachments) {
  WeightModel model(system, collect_labels(corpus), hash_bits);
  for (const auto& [path, table] : attachments) model.attach_dlm(path, table);
  train(model, make_examples(corpus, system), options);
  return model;
}

}  // namespace dparse
