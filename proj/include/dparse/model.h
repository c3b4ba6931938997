#pragma once

// Linear scoring model: dense hashed weight vector, label inventory, online
// passive-aggressive updates with weight averaging, binary serialization.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "dparse/dlm.h"
#include "dparse/features.h"
#include "dparse/transition.h"

namespace dparse {

struct DlmAttachment {
  std::string path;     // where the table was loaded from / will be reloaded
  int index = 0;        // NO_DLM
  DlmTable table;
};

class WeightModel {
 public:
  WeightModel() = default;
  WeightModel(SystemKind system, std::vector<std::string> labels, int hash_bits = 22);

  SystemKind system() const { return system_; }
  int hash_bits() const { return hash_bits_; }
  size_t dimension() const { return weights_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<std::string>& template_registry() const { return templates_; }

  void attach_dlm(const std::string& path, DlmTable table);
  const std::vector<DlmAttachment>& dlm_attachments() const { return dlms_; }
  std::vector<const DlmTable*> dlm_tables() const;

  bool has_averaged() const { return has_averaged_; }
  double weight(uint64_t id) const { return weights_[id]; }
  void set_weight(uint64_t id, double value) { weights_[id] = value; }

  double score(const FeatureVector& features, bool averaged = false) const;
  double score_ids(const std::vector<uint64_t>& ids, bool averaged = false) const;

  // w += (gold - predicted) / ||gold - predicted||^2; no-op on a zero
  // difference. Raises the gold-predicted margin by exactly 1.
  void pa_update(const FeatureVector& gold, const FeatureVector& predicted);

  // Averaging clock, stepped once per training sentence visit.
  void advance_clock() { ++clock_; }
  void finalize_average();

  void save(std::ostream& out) const;
  void save_file(const std::string& path) const;
  static WeightModel load(std::istream& in, const std::string& model_dir = "");
  static WeightModel load_file(const std::string& path);

 private:
  SystemKind system_ = SystemKind::ArcStandardSwap;
  int hash_bits_ = 22;
  std::vector<std::string> labels_;
  std::vector<std::string> templates_;
  std::vector<double> weights_;
  std::vector<double> averaged_;
  bool has_averaged_ = false;
  std::map<uint64_t, double> accum_;  // clock-weighted update sums
  long clock_ = 0;
  std::vector<DlmAttachment> dlms_;
};

}  // namespace dparse
