#include "dparse/dlm.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "dparse/error.h"

namespace dparse {

namespace {
const std::string kBoundaryUnit = "<s>";
const std::string kRootUnit = "<root>";

std::string lowercased(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

DlmClass class_from_string(const std::string& name) {
  if (name == "PH") return DlmClass::PH;
  if (name == "PM") return DlmClass::PM;
  if (name == "PL") return DlmClass::PL;
  if (name == "PO") return DlmClass::PO;
  throw ParseError("unknown DLM class: " + name);
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream iss(text);
  while (std::getline(iss, item, sep)) parts.push_back(item);
  return parts;
}

}  // namespace

std::string to_string(DlmClass c) {
  switch (c) {
    case DlmClass::PH: return "PH";
    case DlmClass::PM: return "PM";
    case DlmClass::PL: return "PL";
    case DlmClass::PO: return "PO";
  }
  return "?";
}

DlmUnitScheme dlm_scheme_from_string(const std::string& name) {
  if (name == "form") return DlmUnitScheme::Form;
  if (name == "pos") return DlmUnitScheme::Pos;
  if (name == "form_pos") return DlmUnitScheme::FormPos;
  throw ConfigError("unknown DLM unit scheme: " + name);
}

std::string to_string(DlmUnitScheme scheme) {
  switch (scheme) {
    case DlmUnitScheme::Form: return "form";
    case DlmUnitScheme::Pos: return "pos";
    case DlmUnitScheme::FormPos: return "form_pos";
  }
  return "?";
}

std::string dlm_unit(const Sentence& sentence, int token, DlmUnitScheme scheme) {
  if (token == 0) return kRootUnit;
  const Token& t = sentence.at(token);
  switch (scheme) {
    case DlmUnitScheme::Form: return lowercased(t.form);
    case DlmUnitScheme::Pos: return t.pos;
    case DlmUnitScheme::FormPos: return lowercased(t.form) + "/" + t.pos;
  }
  return kRootUnit;
}

DlmClass DlmTable::lookup(const DlmKey& key, const std::string& child) const {
  if (static_cast<int>(key.context.size()) != order_ - 1)
    throw std::invalid_argument("DLM key context size " + std::to_string(key.context.size()) +
                                " does not match table order " + std::to_string(order_));
  auto it = entries_.find({key, child});
  return it == entries_.end() ? DlmClass::PO : it->second;
}

DlmClass DlmTable::classify_prospective(const Configuration& config, const Sentence& sentence,
                                        int head, int dependent) const {
  if (dependent == 0) return DlmClass::PO;
  DlmKey key;
  key.side = dependent < head ? 'L' : 'R';

  // Attached children of `head` on the same side, strictly closer than the
  // prospective dependent, nearest the dependent first.
  std::vector<int> previous;
  for (int i = 1; i <= sentence.size(); ++i) {
    if (config.head[static_cast<size_t>(i)] != head) continue;
    if (key.side == 'L' ? (i > dependent && i < head) : (i < dependent && i > head))
      previous.push_back(i);
  }
  if (key.side == 'L')
    std::sort(previous.begin(), previous.end());
  else
    std::sort(previous.begin(), previous.end(), std::greater<int>());

  key.head = dlm_unit(sentence, head, scheme_);
  for (int i = 0; i < order_ - 1; ++i)
    key.context.push_back(i < static_cast<int>(previous.size())
                              ? dlm_unit(sentence, previous[static_cast<size_t>(i)], scheme_)
                              : kBoundaryUnit);
  return lookup(key, dlm_unit(sentence, dependent, scheme_));
}

void DlmTable::insert(const DlmKey& key, const std::string& child, DlmClass cls) {
  entries_[{key, child}] = cls;
}

void DlmTable::save(std::ostream& out) const {
  out << "dlm\torder=" << order_ << "\tmin_count=" << min_count_
      << "\tscheme=" << to_string(scheme_) << "\n";
  for (const auto& [key, cls] : entries_) {
    out << order_ << '\t' << key.first.side << '\t' << key.first.head << '\t'
        << join(key.first.context, '|') << '\t' << key.second << '\t' << to_string(cls)
        << '\n';
  }
}

void DlmTable::save_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open file for writing: " + path);
  save(out);
}

DlmTable DlmTable::load(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw ParseError("empty DLM file");
  std::vector<std::string> head_cols = split(header, '\t');
  if (head_cols.size() != 4 || head_cols[0] != "dlm")
    throw ParseError("bad DLM header: " + header);
  auto value_of = [&](size_t i, const std::string& name) {
    const std::string& col = head_cols[i];
    if (col.rfind(name + "=", 0) != 0) throw ParseError("bad DLM header field: " + col);
    return col.substr(name.size() + 1);
  };
  DlmTable table(std::stoi(value_of(1, "order")), std::stoi(value_of(2, "min_count")),
                 dlm_scheme_from_string(value_of(3, "scheme")));

  std::string line;
  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> cols = split(line, '\t');
    if (cols.size() != 6) throw ParseError("expected 6 tab-separated fields", line_no);
    DlmKey key;
    if (cols[1] != "L" && cols[1] != "R") throw ParseError("bad side: " + cols[1], line_no);
    key.side = cols[1][0];
    key.head = cols[2];
    if (!cols[3].empty()) key.context = split(cols[3], '|');
    if (static_cast<int>(key.context.size()) != table.order_ - 1)
      throw ParseError("context size does not match order", line_no);
    table.insert(key, cols[4], class_from_string(cols[5]));
  }
  return table;
}

DlmTable DlmTable::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open DLM file: " + path);
  return load(in);
}

DlmTable extract_dlm(const Corpus& parsed, int order, int min_count, DlmUnitScheme scheme) {
  if (order < 1) throw std::invalid_argument("DLM order must be >= 1");

  // count[HIS][child]
  std::map<DlmKey, std::map<std::string, long>> counts;
  for (const Sentence& sentence : parsed) {
    std::vector<std::vector<int>> left(static_cast<size_t>(sentence.size()) + 1);
    std::vector<std::vector<int>> right(static_cast<size_t>(sentence.size()) + 1);
    for (int i = 1; i <= sentence.size(); ++i) {
      int h = sentence.at(i).head;
      if (h < 0) throw ValidationError("unannotated token in DLM extraction input");
      (i < h ? left : right)[static_cast<size_t>(h)].push_back(i);
    }
    for (int h = 0; h <= sentence.size(); ++h) {
      // enumerate children outward from the head, separately per side
      for (char side : {'L', 'R'}) {
        std::vector<int>& kids =
            side == 'L' ? left[static_cast<size_t>(h)] : right[static_cast<size_t>(h)];
        if (side == 'L')
          std::sort(kids.begin(), kids.end(), std::greater<int>());
        else
          std::sort(kids.begin(), kids.end());
        for (size_t k = 0; k < kids.size(); ++k) {
          DlmKey key;
          key.side = side;
          key.head = dlm_unit(sentence, h, scheme);
          for (int c = 1; c < order; ++c) {
            key.context.push_back(static_cast<size_t>(c) <= k
                                      ? dlm_unit(sentence, kids[k - static_cast<size_t>(c)], scheme)
                                      : kBoundaryUnit);
          }
          ++counts[key][dlm_unit(sentence, kids[k], scheme)];
        }
      }
    }
  }

  struct Entry {
    DlmKey key;
    std::string child;
    double probability;
  };
  std::vector<Entry> entries;
  for (const auto& [key, children] : counts) {
    long total = 0;
    for (const auto& [child, count] : children) total += count;
    for (const auto& [child, count] : children) {
      if (count < min_count) continue;
      entries.push_back({key, child, static_cast<double>(count) / static_cast<double>(total)});
    }
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.probability != b.probability) return a.probability > b.probability;
    if (a.key != b.key) return a.key < b.key;
    return a.child < b.child;
  });

  DlmTable table(order, min_count, scheme);
  const size_t m = entries.size();
  // first 10% of the sorted list -> PH, (10%, 30%] -> PM, rest -> PL;
  // boundary probability ties take the better class
  const size_t ph = (m + 9) / 10;
  const size_t pm = (3 * m + 9) / 10;
  for (size_t i = 0; i < m; ++i) {
    DlmClass cls;
    if (i < ph || (ph > 0 && entries[i].probability == entries[ph - 1].probability))
      cls = DlmClass::PH;
    else if (i < pm || (pm > 0 && entries[i].probability == entries[pm - 1].probability))
      cls = DlmClass::PM;
    else
      cls = DlmClass::PL;
    table.insert(entries[i].key, entries[i].child, cls);
  }
  return table;
}

std::vector<DlmClassPair> classify_for_configuration(
    const std::vector<const DlmTable*>& tables, const Configuration& config,
    const Sentence& sentence, const Transition& candidate) {
  if (candidate.kind != TransitionKind::LeftArc && candidate.kind != TransitionKind::RightArc)
    throw std::invalid_argument("DLM classification requires an arc-creating candidate");
  std::vector<DlmClassPair> result;
  if (tables.empty()) return result;
  // The two tokens the candidate arc connects: stack top pair for the
  // arc-standard system, stack top and buffer front for arc-eager.
  const bool standard = config.system == SystemKind::ArcStandardSwap;
  const int s0 = config.stack_top();
  const int s1 = standard ? config.stack_second() : config.buffer.front();
  result.reserve(tables.size());
  for (const DlmTable* table : tables) {
    DlmClassPair pair;
    pair.s0 = table->classify_prospective(config, sentence, s1, s0);
    pair.s1 = table->classify_prospective(config, sentence, s0, s1);
    result.push_back(pair);
  }
  return result;
}

}  // namespace dparse
