#pragma once

// Test-only helpers: seeded random trees and models, a toy separable corpus,
// and exhaustive-search oracles kept independent of the beam decoder.

#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "dparse/corpus.h"
#include "dparse/decoder.h"
#include "dparse/features.h"
#include "dparse/model.h"
#include "dparse/transition.h"

namespace dparse::testsupport {

inline std::mt19937_64 make_rng(uint64_t seed) { return std::mt19937_64(seed); }

inline int rand_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<uint64_t>(hi - lo + 1));
}

inline const std::vector<std::string>& default_labels() {
  static const std::vector<std::string> labels{"DEP", "MOD"};
  return labels;
}

// Random single-root tree: each token attaches to a node already connected,
// drawn over an index permutation, so non-projective shapes are frequent.
inline Sentence random_tree(std::mt19937_64& rng, int length,
                            const std::vector<std::string>& labels = default_labels()) {
  Sentence sentence;
  for (int i = 1; i <= length; ++i) {
    Token token;
    token.index = i;
    token.form = "w" + std::to_string(i);
    token.pos = "P" + std::to_string(i % 3);
    sentence.tokens.push_back(token);
  }
  std::vector<int> order(static_cast<size_t>(length));
  for (int i = 0; i < length; ++i) order[static_cast<size_t>(i)] = i + 1;
  for (int i = length - 1; i > 0; --i)
    std::swap(order[static_cast<size_t>(i)], order[static_cast<size_t>(rand_int(rng, 0, i))]);

  std::vector<int> connected{0};
  for (int node : order) {
    int head = connected[static_cast<size_t>(rand_int(rng, 0, static_cast<int>(connected.size()) - 1))];
    sentence.at(node).head = head;
    sentence.at(node).deprel = labels[static_cast<size_t>(rand_int(
        rng, 0, static_cast<int>(labels.size()) - 1))];
    connected.push_back(node);
  }
  return sentence;
}

inline Sentence random_projective_tree(std::mt19937_64& rng, int length,
                                       const std::vector<std::string>& labels = default_labels()) {
  while (true) {
    Sentence candidate = random_tree(rng, length, labels);
    if (is_projective(candidate)) return candidate;
  }
}

inline Sentence random_nonprojective_tree(std::mt19937_64& rng, int length,
                                          const std::vector<std::string>& labels = default_labels()) {
  while (true) {
    Sentence candidate = random_tree(rng, length, labels);
    if (!is_projective(candidate)) return candidate;
  }
}

inline WeightModel random_model(std::mt19937_64& rng, SystemKind system,
                                const std::vector<std::string>& labels = default_labels(),
                                int hash_bits = 14, double scale = 0.1) {
  WeightModel model(system, labels, hash_bits);
  std::normal_distribution<double> noise(0.0, scale);
  for (size_t id = 0; id < model.dimension(); ++id)
    model.set_weight(id, noise(rng));
  return model;
}

// Independent tree check: undirected connectivity from the root plus an edge
// count, nothing shared with validate_tree's head-walk.
inline bool brute_force_is_tree(const Sentence& sentence) {
  const int n = sentence.size();
  for (int i = 1; i <= n; ++i) {
    int h = sentence.at(i).head;
    if (h < 0 || h > n || h == i) return false;
  }
  std::vector<std::vector<int>> adjacent(static_cast<size_t>(n) + 1);
  for (int i = 1; i <= n; ++i) {
    adjacent[static_cast<size_t>(sentence.at(i).head)].push_back(i);
    adjacent[static_cast<size_t>(i)].push_back(sentence.at(i).head);
  }
  std::vector<bool> seen(static_cast<size_t>(n) + 1, false);
  std::vector<int> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    int node = queue.back();
    queue.pop_back();
    for (int next : adjacent[static_cast<size_t>(node)]) {
      if (seen[static_cast<size_t>(next)]) continue;
      seen[static_cast<size_t>(next)] = true;
      queue.push_back(next);
    }
  }
  for (int i = 0; i <= n; ++i)
    if (!seen[static_cast<size_t>(i)]) return false;
  return true;  // n edges over n+1 connected nodes cannot contain a cycle
}

// 20 sentences over a deterministic grammar with three labels; word and POS
// features separate every decision.
inline Corpus toy_corpus() {
  const std::vector<std::string> subjects{"tom", "mary", "dogs", "cats", "birds",
                                          "foxes", "crews", "kids", "owls", "bees"};
  const std::vector<std::string> verbs{"plays", "sees", "likes", "chases", "feeds",
                                       "hears", "helps", "greets", "leads", "meets"};
  const std::vector<std::string> objects{"football", "mice", "fish", "seeds", "games",
                                         "books", "worms", "nuts", "songs", "maps"};
  Corpus corpus;
  for (int i = 0; i < 10; ++i) {
    // subject verb object
    Sentence s;
    s.tokens.push_back({1, subjects[static_cast<size_t>(i)], "", "NN", 2, "SBJ", {}});
    s.tokens.push_back({2, verbs[static_cast<size_t>(i)], "", "VB", 0, "ROOT", {}});
    s.tokens.push_back({3, objects[static_cast<size_t>(i)], "", "NN", 2, "OBJ", {}});
    corpus.push_back(s);
  }
  for (int i = 0; i < 10; ++i) {
    // subject verb
    Sentence s;
    s.tokens.push_back({1, subjects[static_cast<size_t>(i)], "", "NN", 2, "SBJ", {}});
    s.tokens.push_back({2, verbs[static_cast<size_t>((i + 3) % 10)], "", "VB", 0, "ROOT", {}});
    corpus.push_back(s);
  }
  return corpus;
}

// Exhaustive max-score search over the full transition space, memoized on the
// (stack, buffer, arcs) state. Exact counterpart of the beam decoder's
// objective, including the forbidden-edge constraint semantics.
struct ExhaustiveResult {
  double total_score = 0.0;
  double parse_score = 0.0;
  int transitions = 0;
  std::vector<Arc> arcs;
  std::vector<Transition> sequence;
};

class ExhaustiveSearch {
 public:
  ExhaustiveSearch(const Sentence& sentence, const WeightModel& model,
                   std::optional<Arc> forbidden = std::nullopt)
      : sentence_(sentence), model_(model), forbidden_(std::move(forbidden)) {
    inventory_.push_back(shift());
    for (const std::string& label : model.labels()) inventory_.push_back(left_arc(label));
    for (const std::string& label : model.labels()) inventory_.push_back(right_arc(label));
    inventory_.push_back(model.system() == SystemKind::ArcStandardSwap ? swap() : reduce());
  }

  ExhaustiveResult run() {
    Configuration config = initial_configuration(sentence_, model_.system());
    best(config);

    ExhaustiveResult result;
    while (!is_terminal(config)) {
      int move = memo_.at(key_of(config)).second;
      if (move < 0) throw std::logic_error("exhaustive search hit an infeasible state");
      const Transition& t = inventory_[static_cast<size_t>(move)];
      result.total_score += model_.score_ids(extract_features(config, t, sentence_, model_), true);
      result.sequence.push_back(t);
      config = apply(config, t);
    }
    result.transitions = static_cast<int>(result.sequence.size());
    result.parse_score =
        result.transitions == 0 ? 0.0 : result.total_score / result.transitions;
    result.arcs = config.arcs();
    return result;
  }

  size_t states() const { return memo_.size(); }

 private:
  static std::string key_of(const Configuration& c) {
    std::ostringstream key;
    for (int i : c.stack) key << i << ',';
    key << '#';
    for (int i : c.buffer) key << i << ',';
    key << '#';
    for (size_t i = 1; i < c.head.size(); ++i)
      if (c.head[i] >= 0) key << i << ':' << c.head[i] << ':' << c.label[i] << ',';
    return key.str();
  }

  bool creates_forbidden(const Configuration& c, const Transition& t) const {
    if (!forbidden_) return false;
    int head = -1, dependent = -1;
    if (c.system == SystemKind::ArcStandardSwap) {
      if (t.kind == TransitionKind::LeftArc) {
        head = c.stack_top();
        dependent = c.stack_second();
      } else if (t.kind == TransitionKind::RightArc) {
        head = c.stack_second();
        dependent = c.stack_top();
      } else {
        return false;
      }
    } else {
      if (t.kind == TransitionKind::LeftArc) {
        head = c.buffer.front();
        dependent = c.stack_top();
      } else if (t.kind == TransitionKind::RightArc) {
        head = c.stack_top();
        dependent = c.buffer.front();
      } else {
        return false;
      }
    }
    return head == forbidden_->head && dependent == forbidden_->dependent &&
           t.label == forbidden_->label;
  }

  // best completion score from this configuration; second = best move index
  std::pair<double, int> best(const Configuration& config) {
    if (is_terminal(config)) return {0.0, -1};
    std::string key = key_of(config);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;

    double best_score = 0.0;
    int best_move = -1;
    for (size_t m = 0; m < inventory_.size(); ++m) {
      const Transition& t = inventory_[m];
      if (!permissible(config, t)) continue;
      if (creates_forbidden(config, t)) continue;
      double step = model_.score_ids(extract_features(config, t, sentence_, model_), true);
      Configuration next = apply(config, t);
      next.history.clear();  // keep memo states history-free
      double completion = step + best(next).first;
      if (best_move < 0 || completion > best_score) {
        best_score = completion;
        best_move = static_cast<int>(m);
      }
    }
    if (best_move < 0) {
      // every continuation is forbidden: a dead end, poison it
      best_score = -1e18;
    }
    auto result = std::make_pair(best_score, best_move);
    memo_[key] = result;
    return result;
  }

  const Sentence& sentence_;
  const WeightModel& model_;
  std::optional<Arc> forbidden_;
  std::vector<Transition> inventory_;
  std::unordered_map<std::string, std::pair<double, int>> memo_;
};

inline ExhaustiveResult exhaustive_best_parse(const Sentence& sentence, const WeightModel& model,
                                              std::optional<Arc> forbidden = std::nullopt) {
  return ExhaustiveSearch(sentence, model, std::move(forbidden)).run();
}

}  // namespace dparse::testsupport
