#pragma once

// Hashed binary features over parser configurations: base templates plus the
// DLM templates attached to a model.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dparse/corpus.h"
#include "dparse/transition.h"

namespace dparse {

class WeightModel;

// Sparse feature-id -> count mapping. Addition is pointwise.
class FeatureVector {
 public:
  void add(uint64_t id, int count = 1);
  void add_ids(const std::vector<uint64_t>& ids);

  FeatureVector& operator+=(const FeatureVector& other);
  friend FeatureVector operator+(FeatureVector a, const FeatureVector& b) {
    a += b;
    return a;
  }
  bool operator==(const FeatureVector& other) const = default;

  bool empty() const { return counts_.empty(); }
  size_t size() const { return counts_.size(); }
  const std::map<uint64_t, int>& counts() const { return counts_; }

 private:
  std::map<uint64_t, int> counts_;
};

// 64-bit FNV-1a, masked to the model's hash width. Stable across runs and
// platforms by construction.
class FeatureHasher {
 public:
  explicit FeatureHasher(int hash_bits)
      : mask_((uint64_t{1} << hash_bits) - 1) {}

  void reset(uint8_t template_id) {
    state_ = 14695981039346656037ull;
    byte(template_id);
  }
  void byte(uint8_t b) {
    state_ ^= b;
    state_ *= 1099511628211ull;
  }
  void text(const std::string& s) {
    for (char c : s) byte(static_cast<uint8_t>(c));
    byte(0xff);
  }
  uint64_t value() const { return state_ & mask_; }

 private:
  uint64_t state_ = 0;
  uint64_t mask_;
};

// Feature ids of one (configuration, candidate transition) pair. The
// candidate must be permissible. Deterministic: same inputs, same ids, in the
// same order.
std::vector<uint64_t> extract_features(const Configuration& config,
                                       const Transition& candidate,
                                       const Sentence& sentence,
                                       const WeightModel& model);

// Same features annotated with their template names, for tests and debugging.
std::vector<std::pair<std::string, uint64_t>> extract_features_named(
    const Configuration& config, const Transition& candidate, const Sentence& sentence,
    const WeightModel& model);

// Descriptors of the base template set, in emission order.
std::vector<std::string> base_template_registry();

}  // namespace dparse
