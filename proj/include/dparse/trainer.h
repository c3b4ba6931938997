#pragma once

// Online passive-aggressive training over oracle transition sequences.

#include <string>
#include <vector>

#include "dparse/corpus.h"
#include "dparse/model.h"
#include "dparse/transition.h"

namespace dparse {

struct TrainOptions {
  int iterations = 25;
  int beam = 40;
  bool early_update = false;  // full-sequence updates by default
  bool average = true;        // store averaged weights in the final model
};

struct LabeledExample {
  Sentence sentence;
  std::vector<Transition> gold_sequence;
};

// Sorted, de-duplicated dependency labels of a corpus.
std::vector<std::string> collect_labels(const Corpus& corpus);

std::vector<LabeledExample> make_examples(const Corpus& corpus, SystemKind system);

// One pass per iteration in corpus order; the model is updated whenever the
// decoded tree differs from gold (or, under early update, when the gold
// prefix leaves the beam).
void train(WeightModel& model, const std::vector<LabeledExample>& examples,
           const TrainOptions& options);

// Convenience: build the label inventory, run the oracle and train a fresh
// model. DLM tables must already be attached when they should contribute
// features, so pass them through `attachments`.
WeightModel train_model(const Corpus& corpus, SystemKind system, const TrainOptions& options,
                        int hash_bits = 22,
                        const std::vector<std::pair<std::string, DlmTable>>& attachments = {});

}  // namespace dparse
