#pragma once

// N-gram dependency language models: extraction from auto-parsed corpora,
// probability-class tables (PH/PM/PL, PO for unseen) and their text format.

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "dparse/corpus.h"
#include "dparse/transition.h"

namespace dparse {

enum class DlmClass { PH, PM, PL, PO };
std::string to_string(DlmClass c);

enum class DlmUnitScheme { Form, Pos, FormPos };
DlmUnitScheme dlm_scheme_from_string(const std::string& name);
std::string to_string(DlmUnitScheme scheme);

// Unit of a token under a scheme; token index 0 is the artificial root.
std::string dlm_unit(const Sentence& sentence, int token, DlmUnitScheme scheme);

// Head-plus-history key. Context holds the N-1 previous children of the same
// head on the same side, most recent (nearest the new child) first, padded
// with <s> when fewer exist.
struct DlmKey {
  char side = 'L';  // 'L' or 'R'
  std::string head;
  std::vector<std::string> context;

  auto operator<=>(const DlmKey& other) const = default;
};

class DlmTable {
 public:
  DlmTable() = default;
  DlmTable(int order, int min_count, DlmUnitScheme scheme)
      : order_(order), min_count_(min_count), scheme_(scheme) {}

  int order() const { return order_; }
  int min_count() const { return min_count_; }
  DlmUnitScheme scheme() const { return scheme_; }
  size_t size() const { return entries_.size(); }

  DlmClass lookup(const DlmKey& key, const std::string& child) const;

  // Class of `dependent` were it attached to `head` next, with the history
  // drawn from the children already attached in `config`.
  DlmClass classify_prospective(const Configuration& config, const Sentence& sentence,
                                int head, int dependent) const;

  void insert(const DlmKey& key, const std::string& child, DlmClass cls);

  void save(std::ostream& out) const;
  void save_file(const std::string& path) const;
  static DlmTable load(std::istream& in);
  static DlmTable load_file(const std::string& path);

  bool operator==(const DlmTable& other) const = default;

 private:
  int order_ = 1;
  int min_count_ = 3;
  DlmUnitScheme scheme_ = DlmUnitScheme::Form;
  std::map<std::pair<DlmKey, std::string>, DlmClass> entries_;
};

DlmTable extract_dlm(const Corpus& parsed, int order, int min_count = 3,
                     DlmUnitScheme scheme = DlmUnitScheme::Form);

struct DlmClassPair {
  DlmClass s0 = DlmClass::PO;
  DlmClass s1 = DlmClass::PO;
};

// Per attached table (indexed by NO_DLM): classes of the top two stack tokens
// as prospective children of each other. The candidate must be arc-creating.
std::vector<DlmClassPair> classify_for_configuration(
    const std::vector<const DlmTable*>& tables, const Configuration& config,
    const Sentence& sentence, const Transition& candidate);

}  // namespace dparse
