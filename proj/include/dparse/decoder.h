#pragma once

// Beam-search decoding: every hypothesis is expanded with every permissible
// transition, the top b survive, the loop runs until the whole beam is
// terminal. Beam size 1 is greedy decoding. A constraint can forbid one
// labelled edge; hypotheses containing it are dropped the moment it appears.

#include <optional>
#include <string>
#include <vector>

#include "dparse/corpus.h"
#include "dparse/features.h"
#include "dparse/model.h"
#include "dparse/transition.h"

namespace dparse {

struct DecodeConstraint {
  std::optional<Arc> forbidden_edge;
};

struct DecodeOptions {
  int beam = 40;
  DecodeConstraint constraint;
  bool use_averaged = true;  // falls back to raw weights when absent
};

struct DecodeResult {
  Sentence tree;
  double total_score = 0.0;   // accumulated h.s
  double parse_score = 0.0;   // h.s divided by the number of transitions
  int transitions = 0;
  std::vector<Transition> sequence;
  FeatureVector features;     // accumulated h.f
};

DecodeResult decode(const Sentence& sentence, const WeightModel& model,
                    const DecodeOptions& options = {});

// Element-wise decode, input order preserved; `workers` > 1 fans out across
// threads with identical output. Per-sentence failures are reported with the
// sentence index.
std::vector<DecodeResult> decode_corpus(const Corpus& corpus, const WeightModel& model,
                                        const DecodeOptions& options = {}, int workers = 1);

// Decode against a gold transition sequence using raw weights. With
// early_update the search stops as soon as no beam entry extends the gold
// prefix; gold_prefix_length then tells how much of the gold sequence the
// update should cover.
struct TrainingDecode {
  bool gold_fell_out = false;
  FeatureVector predicted_features;
  std::vector<Arc> predicted_arcs;  // meaningful when the search ran to the end
  int gold_prefix_length = 0;
};

TrainingDecode decode_for_training(const Sentence& sentence,
                                   const std::vector<Transition>& gold,
                                   const WeightModel& model, int beam, bool early_update);

}  // namespace dparse
