#include "dparse/model.h"

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "dparse/error.h"

namespace dparse {

namespace {

constexpr char kMagic[8] = {'D', 'P', 'M', 'o', 'd', 'e', 'l', '1'};
constexpr uint32_t kVersion = 1;

template <typename T>
void write_pod(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_pod(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw ParseError("truncated model file");
  return value;
}

void write_string(std::ostream& out, const std::string& s) {
  write_pod<uint32_t>(out, static_cast<uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string read_string(std::istream& in) {
  uint32_t size = read_pod<uint32_t>(in);
  std::string s(size, '\0');
  in.read(s.data(), size);
  if (!in) throw ParseError("truncated model file");
  return s;
}

void write_sparse(std::ostream& out, const std::vector<double>& dense) {
  uint64_t nonzero = 0;
  for (double w : dense)
    if (w != 0.0) ++nonzero;
  write_pod<uint64_t>(out, nonzero);
  for (size_t i = 0; i < dense.size(); ++i) {
    if (dense[i] == 0.0) continue;
    write_pod<uint64_t>(out, static_cast<uint64_t>(i));
    write_pod<double>(out, dense[i]);
  }
}

void read_sparse(std::istream& in, std::vector<double>& dense) {
  uint64_t nonzero = read_pod<uint64_t>(in);
  for (uint64_t k = 0; k < nonzero; ++k) {
    uint64_t id = read_pod<uint64_t>(in);
    double value = read_pod<double>(in);
    if (id >= dense.size()) throw ParseError("weight id out of range in model file");
    dense[id] = value;
  }
}

}  // namespace

WeightModel::WeightModel(SystemKind system, std::vector<std::string> labels, int hash_bits)
    : system_(system), hash_bits_(hash_bits), labels_(std::move(labels)) {
  if (hash_bits < 1 || hash_bits > 30)
    throw std::invalid_argument("hash bits must lie in [1, 30]");
  templates_ = base_template_registry();
  weights_.assign(size_t{1} << hash_bits, 0.0);
}

void WeightModel::attach_dlm(const std::string& path, DlmTable table) {
  dlms_.push_back({path, static_cast<int>(dlms_.size()), std::move(table)});
}

std::vector<const DlmTable*> WeightModel::dlm_tables() const {
  std::vector<const DlmTable*> tables;
  tables.reserve(dlms_.size());
  for (const DlmAttachment& a : dlms_) tables.push_back(&a.table);
  return tables;
}

double WeightModel::score(const FeatureVector& features, bool averaged) const {
  const std::vector<double>& w = averaged && has_averaged_ ? averaged_ : weights_;
  double total = 0.0;
  for (const auto& [id, count] : features.counts()) total += w[id] * count;
  return total;
}

double WeightModel::score_ids(const std::vector<uint64_t>& ids, bool averaged) const {
  const std::vector<double>& w = averaged && has_averaged_ ? averaged_ : weights_;
  double total = 0.0;
  for (uint64_t id : ids) total += w[id];
  return total;
}

void WeightModel::pa_update(const FeatureVector& gold, const FeatureVector& predicted) {
  std::map<uint64_t, int> diff;
  for (const auto& [id, count] : gold.counts()) diff[id] += count;
  for (const auto& [id, count] : predicted.counts()) diff[id] -= count;

  double norm2 = 0.0;
  for (const auto& [id, d] : diff) norm2 += static_cast<double>(d) * d;
  if (norm2 == 0.0) return;

  for (const auto& [id, d] : diff) {
    if (d == 0) continue;
    double step = static_cast<double>(d) / norm2;
    weights_[id] += step;
    accum_[id] += static_cast<double>(clock_) * step;
  }
}

void WeightModel::finalize_average() {
  averaged_ = weights_;
  if (clock_ > 0) {
    for (const auto& [id, u] : accum_)
      averaged_[id] -= u / static_cast<double>(clock_);
  }
  has_averaged_ = true;
}

void WeightModel::save(std::ostream& out) const {
  out.write(kMagic, sizeof(kMagic));
  write_pod<uint32_t>(out, kVersion);
  write_pod<uint32_t>(out, static_cast<uint32_t>(hash_bits_));
  write_pod<uint8_t>(out, system_ == SystemKind::ArcStandardSwap ? 0 : 1);
  write_pod<uint8_t>(out, has_averaged_ ? 1 : 0);
  write_pod<uint32_t>(out, static_cast<uint32_t>(labels_.size()));
  for (const std::string& label : labels_) write_string(out, label);
  write_sparse(out, weights_);
  if (has_averaged_) write_sparse(out, averaged_);
  write_pod<uint32_t>(out, static_cast<uint32_t>(templates_.size()));
  for (const std::string& name : templates_) write_string(out, name);
  write_pod<uint32_t>(out, static_cast<uint32_t>(dlms_.size()));
  for (const DlmAttachment& a : dlms_) {
    write_string(out, a.path);
    write_pod<uint32_t>(out, static_cast<uint32_t>(a.index));
  }
}

void WeightModel::save_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open file for writing: " + path);
  save(out);
}

WeightModel WeightModel::load(std::istream& in, const std::string& model_dir) {
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw ParseError("not a model file (bad magic)");
  uint32_t version = read_pod<uint32_t>(in);
  if (version != kVersion)
    throw ParseError("unsupported model version " + std::to_string(version));

  uint32_t hash_bits = read_pod<uint32_t>(in);
  uint8_t system = read_pod<uint8_t>(in);
  uint8_t has_averaged = read_pod<uint8_t>(in);
  uint32_t label_count = read_pod<uint32_t>(in);
  std::vector<std::string> labels;
  labels.reserve(label_count);
  for (uint32_t i = 0; i < label_count; ++i) labels.push_back(read_string(in));

  WeightModel model(system == 0 ? SystemKind::ArcStandardSwap : SystemKind::ArcEager,
                    std::move(labels), static_cast<int>(hash_bits));
  read_sparse(in, model.weights_);
  if (has_averaged) {
    model.averaged_.assign(model.weights_.size(), 0.0);
    read_sparse(in, model.averaged_);
    model.has_averaged_ = true;
  }
  uint32_t template_count = read_pod<uint32_t>(in);
  model.templates_.clear();
  for (uint32_t i = 0; i < template_count; ++i) model.templates_.push_back(read_string(in));

  uint32_t dlm_count = read_pod<uint32_t>(in);
  for (uint32_t i = 0; i < dlm_count; ++i) {
    std::string path = read_string(in);
    uint32_t index = read_pod<uint32_t>(in);
    std::string resolved = path;
    if (!std::filesystem::exists(resolved) && !model_dir.empty())
      resolved = (std::filesystem::path(model_dir) / path).string();
    DlmAttachment attachment{path, static_cast<int>(index), DlmTable::load_file(resolved)};
    model.dlms_.push_back(std::move(attachment));
  }
  return model;
}

WeightModel WeightModel::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open model file: " + path);
  return load(in, std::filesystem::path(path).parent_path().string());
}

}  // namespace dparse
