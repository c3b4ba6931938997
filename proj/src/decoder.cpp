#include "dparse/decoder.h"

#include <algorithm>
#include <atomic>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "dparse/error.h"

namespace dparse {

namespace {

// Feature ids of a hypothesis, shared structurally with its ancestors.
struct FeatNode {
  std::shared_ptr<const FeatNode> parent;
  std::vector<uint64_t> ids;
};

FeatureVector materialize(const std::shared_ptr<const FeatNode>& tail) {
  FeatureVector fv;
  for (const FeatNode* node = tail.get(); node != nullptr; node = node->parent.get())
    fv.add_ids(node->ids);
  return fv;
}

struct Hypothesis {
  Configuration config;
  double score = 0.0;
  std::shared_ptr<const FeatNode> features;
  bool gold = false;
};

std::vector<Transition> transition_inventory(SystemKind system,
                                             const std::vector<std::string>& labels) {
  std::vector<Transition> inventory;
  inventory.reserve(2 * labels.size() + 2);
  inventory.push_back(shift());
  for (const std::string& label : labels) inventory.push_back(left_arc(label));
  for (const std::string& label : labels) inventory.push_back(right_arc(label));
  inventory.push_back(system == SystemKind::ArcStandardSwap ? swap() : reduce());
  return inventory;
}

bool creates_forbidden(const Configuration& config, const Transition& t,
                       const Arc& forbidden) {
  int head = -1;
  int dependent = -1;
  if (config.system == SystemKind::ArcStandardSwap) {
    if (t.kind == TransitionKind::LeftArc) {
      head = config.stack_top();
      dependent = config.stack_second();
    } else if (t.kind == TransitionKind::RightArc) {
      head = config.stack_second();
      dependent = config.stack_top();
    } else {
      return false;
    }
  } else {
    if (t.kind == TransitionKind::LeftArc) {
      head = config.buffer.front();
      dependent = config.stack_top();
    } else if (t.kind == TransitionKind::RightArc) {
      head = config.stack_top();
      dependent = config.buffer.front();
    } else {
      return false;
    }
  }
  return head == forbidden.head && dependent == forbidden.dependent &&
         t.label == forbidden.label;
}

struct SearchOutcome {
  Hypothesis top;
  bool early_stopped = false;
  int steps = 0;
};

SearchOutcome beam_search(const Sentence& sentence, const WeightModel& model, int beam,
                          const DecodeConstraint& constraint, bool use_averaged,
                          const std::vector<Transition>* gold, bool early_update) {
  if (beam < 1) throw std::invalid_argument("beam size must be >= 1");
  if (model.labels().empty()) throw std::invalid_argument("model has an empty label inventory");

  const std::vector<Transition> inventory =
      transition_inventory(model.system(), model.labels());

  std::vector<Hypothesis> hyps;
  hyps.push_back({initial_configuration(sentence, model.system()), 0.0, nullptr,
                  gold != nullptr});

  const long n = sentence.size();
  const long step_bound = 4 * n * n + 16;

  struct Candidate {
    size_t parent;
    const Transition* transition;  // nullptr = carried terminal hypothesis
    double score;
    std::vector<uint64_t> ids;
    bool gold;
  };

  int steps = 0;
  while (true) {
    bool all_terminal = true;
    for (const Hypothesis& h : hyps)
      if (!is_terminal(h.config)) {
        all_terminal = false;
        break;
      }
    if (all_terminal) break;
    if (++steps > step_bound) throw std::logic_error("beam search exceeded its step bound");

    std::vector<Candidate> candidates;
    for (size_t pi = 0; pi < hyps.size(); ++pi) {
      const Hypothesis& h = hyps[pi];
      if (is_terminal(h.config)) {
        candidates.push_back({pi, nullptr, h.score, {}, h.gold});
        continue;
      }
      const size_t consumed = h.config.history.size();
      for (const Transition& t : inventory) {
        if (!permissible(h.config, t)) continue;
        if (constraint.forbidden_edge &&
            creates_forbidden(h.config, t, *constraint.forbidden_edge))
          continue;
        std::vector<uint64_t> ids = extract_features(h.config, t, sentence, model);
        double score = h.score + model.score_ids(ids, use_averaged);
        bool still_gold =
            h.gold && gold != nullptr && consumed < gold->size() && t == (*gold)[consumed];
        candidates.push_back({pi, &t, score, std::move(ids), still_gold});
      }
    }
    if (candidates.empty())
      throw InfeasibleConstraintError("constraint removed every hypothesis from the beam");

    // ties at the beam boundary: earlier expansion wins
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) { return a.score > b.score; });
    if (static_cast<int>(candidates.size()) > beam) candidates.resize(static_cast<size_t>(beam));

    std::vector<Hypothesis> next;
    next.reserve(candidates.size());
    for (Candidate& c : candidates) {
      const Hypothesis& parent = hyps[c.parent];
      if (c.transition == nullptr) {
        next.push_back(parent);
        continue;
      }
      Hypothesis h;
      h.config = apply(parent.config, *c.transition);
      h.score = c.score;
      auto node = std::make_shared<FeatNode>();
      node->parent = parent.features;
      node->ids = std::move(c.ids);
      h.features = std::move(node);
      h.gold = c.gold;
      next.push_back(std::move(h));
    }
    hyps = std::move(next);

    if (early_update && gold != nullptr) {
      bool gold_alive = false;
      for (const Hypothesis& h : hyps)
        if (h.gold) {
          gold_alive = true;
          break;
        }
      if (!gold_alive) return {std::move(hyps.front()), true, steps};
    }
  }
  return {std::move(hyps.front()), false, steps};
}

}  // namespace

DecodeResult decode(const Sentence& sentence, const WeightModel& model,
                    const DecodeOptions& options) {
  SearchOutcome outcome = beam_search(sentence, model, options.beam, options.constraint,
                                      options.use_averaged, nullptr, false);
  DecodeResult result;
  result.tree = tree_of(sentence, outcome.top.config);
  result.total_score = outcome.top.score;
  result.transitions = static_cast<int>(outcome.top.config.history.size());
  result.parse_score =
      result.transitions == 0 ? 0.0 : result.total_score / result.transitions;
  result.sequence = std::move(outcome.top.config.history);
  result.features = materialize(outcome.top.features);
  return result;
}

std::vector<DecodeResult> decode_corpus(const Corpus& corpus, const WeightModel& model,
                                        const DecodeOptions& options, int workers) {
  std::vector<DecodeResult> results(corpus.size());
  if (workers < 1) workers = 1;
  workers = std::min<int>(workers, static_cast<int>(corpus.size()));

  if (workers <= 1) {
    for (size_t i = 0; i < corpus.size(); ++i) {
      try {
        results[i] = decode(corpus[i], model, options);
      } catch (const std::exception& e) {
        throw std::runtime_error("decode failed at sentence " + std::to_string(i) + ": " +
                                 e.what());
      }
    }
    return results;
  }

  std::atomic<size_t> cursor{0};
  std::mutex error_mutex;
  size_t first_error = corpus.size();
  std::string error_message;

  auto work = [&]() {
    while (true) {
      size_t i = cursor.fetch_add(1);
      if (i >= corpus.size()) return;
      try {
        results[i] = decode(corpus[i], model, options);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (i < first_error) {
          first_error = i;
          error_message = e.what();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (std::thread& t : pool) t.join();
  if (first_error < corpus.size())
    throw std::runtime_error("decode failed at sentence " + std::to_string(first_error) +
                             ": " + error_message);
  return results;
}

TrainingDecode decode_for_training(const Sentence& sentence,
                                   const std::vector<Transition>& gold,
                                   const WeightModel& model, int beam, bool early_update) {
  SearchOutcome outcome = beam_search(sentence, model, beam, DecodeConstraint{},
                                      /*use_averaged=*/false, &gold, early_update);
  TrainingDecode result;
  result.gold_fell_out = outcome.early_stopped;
  result.predicted_features = materialize(outcome.top.features);
  result.gold_prefix_length =
      std::min<int>(outcome.steps, static_cast<int>(gold.size()));
  if (!outcome.early_stopped) result.predicted_arcs = outcome.top.config.arcs();
  return result;
}

}  // namespace dparse
