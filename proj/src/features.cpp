#include "dparse/features.h"

#include <array>

#include "dparse/model.h"

namespace dparse {

void FeatureVector::add(uint64_t id, int count) {
  auto it = counts_.find(id);
  if (it == counts_.end()) {
    counts_[id] = count;
  } else {
    it->second += count;
    if (it->second == 0) counts_.erase(it);
  }
}

void FeatureVector::add_ids(const std::vector<uint64_t>& ids) {
  for (uint64_t id : ids) add(id, 1);
}

FeatureVector& FeatureVector::operator+=(const FeatureVector& other) {
  for (const auto& [id, count] : other.counts_) add(id, count);
  return *this;
}

namespace {

const std::string kNone = "<none>";

enum TemplateId : uint8_t {
  T_S0W, T_S0P, T_S1W, T_S1P, T_S2W, T_S2P,
  T_B0W, T_B0P, T_B1W, T_B1P, T_B2W, T_B2P,
  T_S0S1_WW, T_S0S1_PP, T_S0S1_WP,
  T_S0B0_WW, T_S0B0_PP, T_S0B0_WP,
  T_S0_LC, T_S0_RC, T_S1_LC, T_S1_RC,
  T_DIST, T_S0_LVAL, T_S0_RVAL, T_S1_LVAL, T_S1_RVAL,
  T_DLM_BASE,  // seven consecutive ids per Table row
};

const char* kTemplateNames[] = {
    "s0.w", "s0.p", "s1.w", "s1.p", "s2.w", "s2.p",
    "b0.w", "b0.p", "b1.w", "b1.p", "b2.w", "b2.p",
    "s0s1.ww", "s0s1.pp", "s0s1.wp",
    "s0b0.ww", "s0b0.pp", "s0b0.wp",
    "s0.lc", "s0.rc", "s1.lc", "s1.rc",
    "dist.s0s1", "s0.lval", "s0.rval", "s1.lval", "s1.rval",
    "dlm.cls", "dlm.cls+s0p", "dlm.cls+s0w", "dlm.cls+s1p", "dlm.cls+s1w",
    "dlm.cls+pp", "dlm.cls+ww",
};

struct TokenView {
  const std::string* form = nullptr;
  const std::string* pos = nullptr;
};

TokenView view(const Sentence& sentence, int index) {
  if (index < 0) return {&kNone, &kNone};
  return {&sentence.form(index), &sentence.pos(index)};
}

std::string distance_bucket(int s0, int s1) {
  if (s0 < 0 || s1 < 0) return kNone;
  int d = s0 > s1 ? s0 - s1 : s1 - s0;
  if (d <= 4) return std::to_string(d);
  if (d <= 6) return "5-6";
  if (d <= 9) return "7-9";
  return "10+";
}

char valency_bucket(int count) {
  return count >= 3 ? '3' : static_cast<char>('0' + count);
}

// Emits every feature of one (config, candidate) pair through `sink`.
template <typename Sink>
void extract_all(const Configuration& config, const Transition& candidate,
                 const Sentence& sentence, const WeightModel& model, Sink&& sink) {
  FeatureHasher hasher(model.hash_bits());
  const auto& stack = config.stack;
  const auto& buffer = config.buffer;
  const bool standard = config.system == SystemKind::ArcStandardSwap;

  const int s0 = stack.size() >= 1 ? stack[stack.size() - 1] : -1;
  const int s1 = stack.size() >= 2 ? stack[stack.size() - 2] : -1;
  const int s2 = stack.size() >= 3 ? stack[stack.size() - 3] : -1;
  const int b0 = buffer.size() >= 1 ? buffer[0] : -1;
  const int b1 = buffer.size() >= 2 ? buffer[1] : -1;
  const int b2 = buffer.size() >= 3 ? buffer[2] : -1;

  TokenView vs0 = view(sentence, s0), vs1 = view(sentence, s1), vs2 = view(sentence, s2);
  TokenView vb0 = view(sentence, b0), vb1 = view(sentence, b1), vb2 = view(sentence, b2);

  auto conjoin_and_emit = [&](uint8_t tid) {
    hasher.byte(static_cast<uint8_t>(candidate.kind));
    hasher.text(candidate.label);
    sink(tid, hasher.value());
  };
  auto unary = [&](uint8_t tid, const std::string& a) {
    hasher.reset(tid);
    hasher.text(a);
    conjoin_and_emit(tid);
  };
  auto binary = [&](uint8_t tid, const std::string& a, const std::string& b) {
    hasher.reset(tid);
    hasher.text(a);
    hasher.text(b);
    conjoin_and_emit(tid);
  };

  unary(T_S0W, *vs0.form);
  unary(T_S0P, *vs0.pos);
  unary(T_S1W, *vs1.form);
  unary(T_S1P, *vs1.pos);
  unary(T_S2W, *vs2.form);
  unary(T_S2P, *vs2.pos);
  unary(T_B0W, *vb0.form);
  unary(T_B0P, *vb0.pos);
  unary(T_B1W, *vb1.form);
  unary(T_B1P, *vb1.pos);
  unary(T_B2W, *vb2.form);
  unary(T_B2P, *vb2.pos);

  binary(T_S0S1_WW, *vs0.form, *vs1.form);
  binary(T_S0S1_PP, *vs0.pos, *vs1.pos);
  binary(T_S0S1_WP, *vs0.form, *vs1.pos);
  binary(T_S0B0_WW, *vs0.form, *vb0.form);
  binary(T_S0B0_PP, *vs0.pos, *vb0.pos);
  binary(T_S0B0_WP, *vs0.form, *vb0.pos);

  // leftmost/rightmost attached child of s0 and s1: pos conjoined with label
  int lc[2] = {-1, -1}, rc[2] = {-1, -1};
  int lval[2] = {0, 0}, rval[2] = {0, 0};
  const int anchors[2] = {s0, s1};
  for (int a = 0; a < 2; ++a) {
    if (anchors[a] < 0) continue;
    for (int i = 1; i <= sentence.size(); ++i) {
      if (config.head[static_cast<size_t>(i)] != anchors[a]) continue;
      if (i < anchors[a]) {
        ++lval[a];
        if (lc[a] < 0 || i < lc[a]) lc[a] = i;
      } else {
        ++rval[a];
        if (i > rc[a]) rc[a] = i;
      }
    }
  }
  auto child_feature = [&](uint8_t tid, int child) {
    hasher.reset(tid);
    if (child < 0) {
      hasher.text(kNone);
    } else {
      hasher.text(sentence.pos(child));
      hasher.text(config.label[static_cast<size_t>(child)]);
    }
    conjoin_and_emit(tid);
  };
  child_feature(T_S0_LC, lc[0]);
  child_feature(T_S0_RC, rc[0]);
  child_feature(T_S1_LC, lc[1]);
  child_feature(T_S1_RC, rc[1]);

  binary(T_DIST, distance_bucket(s0, s1), *vs0.pos + "~" + *vs1.pos);

  auto valency = [&](uint8_t tid, int count, const TokenView& v) {
    hasher.reset(tid);
    hasher.byte(static_cast<uint8_t>(valency_bucket(count)));
    hasher.text(*v.pos);
    conjoin_and_emit(tid);
  };
  valency(T_S0_LVAL, lval[0], vs0);
  valency(T_S0_RVAL, rval[0], vs0);
  valency(T_S1_LVAL, lval[1], vs1);
  valency(T_S1_RVAL, rval[1], vs1);

  // DLM templates fire for arc candidates only
  const bool arc = candidate.kind == TransitionKind::LeftArc ||
                   candidate.kind == TransitionKind::RightArc;
  if (!arc || model.dlm_attachments().empty()) return;

  // the second token of the candidate arc; see dlm.cpp
  TokenView vd1 = standard ? vs1 : vb0;
  std::vector<DlmClassPair> classes =
      classify_for_configuration(model.dlm_tables(), config, sentence, candidate);
  for (size_t no_dlm = 0; no_dlm < classes.size(); ++no_dlm) {
    const std::string phi0 = to_string(classes[no_dlm].s0);
    const std::string phi1 = to_string(classes[no_dlm].s1);
    auto dlm_feature = [&](int row, const std::string* extra1, const std::string* extra2) {
      uint8_t tid = static_cast<uint8_t>(T_DLM_BASE + row);
      hasher.reset(tid);
      hasher.byte(static_cast<uint8_t>(no_dlm));
      hasher.text(phi0);
      hasher.text(phi1);
      if (extra1) hasher.text(*extra1);
      if (extra2) hasher.text(*extra2);
      conjoin_and_emit(tid);
    };
    dlm_feature(0, nullptr, nullptr);
    dlm_feature(1, vs0.pos, nullptr);
    dlm_feature(2, vs0.form, nullptr);
    dlm_feature(3, vd1.pos, nullptr);
    dlm_feature(4, vd1.form, nullptr);
    dlm_feature(5, vs0.pos, vd1.pos);
    dlm_feature(6, vs0.form, vd1.form);
  }
}

}  // namespace

std::vector<uint64_t> extract_features(const Configuration& config,
                                       const Transition& candidate,
                                       const Sentence& sentence,
                                       const WeightModel& model) {
  std::vector<uint64_t> ids;
  ids.reserve(32);
  extract_all(config, candidate, sentence, model,
              [&](uint8_t, uint64_t id) { ids.push_back(id); });
  return ids;
}

std::vector<std::pair<std::string, uint64_t>> extract_features_named(
    const Configuration& config, const Transition& candidate, const Sentence& sentence,
    const WeightModel& model) {
  std::vector<std::pair<std::string, uint64_t>> named;
  extract_all(config, candidate, sentence, model, [&](uint8_t tid, uint64_t id) {
    named.emplace_back(kTemplateNames[tid], id);
  });
  return named;
}

std::vector<std::string> base_template_registry() {
  std::vector<std::string> names;
  for (int t = 0; t <= T_S1_RVAL; ++t) names.emplace_back(kTemplateNames[t]);
  return names;
}

}  // namespace dparse
