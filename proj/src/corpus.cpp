#include "dparse/corpus.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "dparse/error.h"

namespace dparse {

namespace {

const std::string kRootForm = "<root>";
const std::string kRootPos = "<root>";
const std::string kAbsent = "_";

// Column layout of a format: where the modelled fields live and which of the
// remaining columns are preserved verbatim.
struct Layout {
  size_t min_columns;
  bool exact_column_count;
  size_t form, lemma, pos, head, deprel;
  std::vector<size_t> extras;
};

// CoNLL-X: ID FORM LEMMA CPOSTAG POSTAG FEATS HEAD DEPREL PHEAD PDEPREL
const Layout kConll06{10, true, 1, 2, 4, 6, 7, {3, 5, 8, 9}};
// CoNLL-2009: ID FORM LEMMA PLEMMA POS PPOS FEAT PFEAT HEAD PHEAD DEPREL
//             PDEPREL FILLPRED PRED APRED*
const Layout kConll09{14, false, 1, 2, 4, 8, 10, {3, 5, 6, 7, 9, 11, 12, 13}};

const Layout& layout_for(ConllFormat format) {
  return format == ConllFormat::Conll06 ? kConll06 : kConll09;
}

std::vector<std::string> split_columns(const std::string& line) {
  std::vector<std::string> cols;
  std::istringstream iss(line);
  std::string col;
  while (iss >> col) cols.push_back(col);
  return cols;
}

bool blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

std::string field_or_absent(const std::string& value) {
  return value == kAbsent ? std::string() : value;
}

void finish_sentence(Sentence& sentence, Corpus& corpus, long line_no) {
  for (const Token& t : sentence.tokens) {
    if (t.head > sentence.size())
      throw ValidationError("head " + std::to_string(t.head) + " out of range for token " +
                            std::to_string(t.index) + " in sentence ending at line " +
                            std::to_string(line_no));
    if (t.head == t.index)
      throw ValidationError("token " + std::to_string(t.index) +
                            " is its own head in sentence ending at line " +
                            std::to_string(line_no));
  }
  corpus.push_back(std::move(sentence));
  sentence = Sentence{};
}

}  // namespace

const std::string& Sentence::form(int index) const {
  return index == 0 ? kRootForm : at(index).form;
}

const std::string& Sentence::pos(int index) const {
  return index == 0 ? kRootPos : at(index).pos;
}

ConllFormat conll_format_from_string(const std::string& name) {
  if (name == "conll06") return ConllFormat::Conll06;
  if (name == "conll09") return ConllFormat::Conll09;
  throw ParseError("unknown CoNLL format: " + name);
}

std::string to_string(ConllFormat format) {
  return format == ConllFormat::Conll06 ? "conll06" : "conll09";
}

Corpus read_conll(std::istream& in, ConllFormat format) {
  const Layout& layout = layout_for(format);
  Corpus corpus;
  Sentence sentence;
  std::string line;
  long line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) {
      if (!sentence.empty()) finish_sentence(sentence, corpus, line_no);
      continue;
    }
    std::vector<std::string> cols = split_columns(line);
    if (cols.size() < layout.min_columns ||
        (layout.exact_column_count && cols.size() != layout.min_columns)) {
      throw ParseError("expected " + std::to_string(layout.min_columns) +
                           (layout.exact_column_count ? "" : "+") + " columns, got " +
                           std::to_string(cols.size()),
                       line_no);
    }

    Token token;
    try {
      token.index = std::stoi(cols[0]);
    } catch (const std::exception&) {
      throw ParseError("non-integer token id '" + cols[0] + "'", line_no);
    }
    if (token.index != sentence.size() + 1)
      throw ParseError("token id " + std::to_string(token.index) + " out of sequence",
                       line_no);
    token.form = cols[layout.form];
    token.lemma = field_or_absent(cols[layout.lemma]);
    token.pos = field_or_absent(cols[layout.pos]);
    const std::string& head = cols[layout.head];
    if (head == kAbsent) {
      token.head = -1;
    } else {
      try {
        size_t used = 0;
        token.head = std::stoi(head, &used);
        if (used != head.size()) throw std::invalid_argument(head);
      } catch (const std::exception&) {
        throw ParseError("non-integer head '" + head + "'", line_no);
      }
      if (token.head < 0) throw ParseError("negative head '" + head + "'", line_no);
    }
    token.deprel = field_or_absent(cols[layout.deprel]);
    for (size_t pos : layout.extras)
      token.extras.push_back(cols[pos]);
    for (size_t c = layout.min_columns; c < cols.size(); ++c)
      token.extras.push_back(cols[c]);
    sentence.tokens.push_back(std::move(token));
  }
  if (!sentence.empty()) finish_sentence(sentence, corpus, line_no);
  return corpus;
}

Corpus read_conll_file(const std::string& path, ConllFormat format) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  return read_conll(in, format);
}

void write_conll(std::ostream& out, const Corpus& corpus, ConllFormat format) {
  const Layout& layout = layout_for(format);
  for (const Sentence& sentence : corpus) {
    for (const Token& token : sentence.tokens) {
      size_t width = std::max(layout.min_columns,
                              layout.min_columns - layout.extras.size() + token.extras.size());
      std::vector<std::string> cols(width, kAbsent);
      cols[0] = std::to_string(token.index);
      cols[layout.form] = token.form;
      if (!token.lemma.empty()) cols[layout.lemma] = token.lemma;
      if (!token.pos.empty()) cols[layout.pos] = token.pos;
      if (token.head >= 0) cols[layout.head] = std::to_string(token.head);
      if (!token.deprel.empty()) cols[layout.deprel] = token.deprel;
      for (size_t i = 0; i < token.extras.size(); ++i) {
        size_t pos = i < layout.extras.size() ? layout.extras[i]
                                              : layout.min_columns + i - layout.extras.size();
        cols[pos] = token.extras[i];
      }
      for (size_t i = 0; i < cols.size(); ++i) {
        if (i) out << '\t';
        out << cols[i];
      }
      out << '\n';
    }
    out << '\n';
  }
}

void write_conll_file(const std::string& path, const Corpus& corpus, ConllFormat format) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open file for writing: " + path);
  write_conll(out, corpus, format);
}

CorpusStats corpus_stats(const Corpus& corpus) {
  CorpusStats stats;
  stats.sentence_count = static_cast<long>(corpus.size());
  for (const Sentence& sentence : corpus) {
    stats.token_count += sentence.size();
    for (const Token& token : sentence.tokens) stats.vocabulary.insert(token.form);
  }
  stats.average_length = stats.sentence_count == 0
                             ? 0.0
                             : static_cast<double>(stats.token_count) /
                                   static_cast<double>(stats.sentence_count);
  return stats;
}

void validate_tree(const Sentence& sentence) {
  const int n = sentence.size();
  for (const Token& token : sentence.tokens) {
    if (token.head < 0)
      throw ValidationError("token " + std::to_string(token.index) + " has no head");
    if (token.head > n)
      throw ValidationError("token " + std::to_string(token.index) + " has head " +
                            std::to_string(token.head) + " out of range");
    if (token.head == token.index)
      throw ValidationError("token " + std::to_string(token.index) + " is its own head");
  }
  // Every token must reach the root without revisiting a node.
  for (int i = 1; i <= n; ++i) {
    int cursor = i;
    int steps = 0;
    while (cursor != 0) {
      cursor = sentence.at(cursor).head;
      if (++steps > n)
        throw ValidationError("cycle through token " + std::to_string(i));
    }
  }
}

bool is_valid_tree(const Sentence& sentence) {
  try {
    validate_tree(sentence);
    return true;
  } catch (const ValidationError&) {
    return false;
  }
}

bool is_projective(const Sentence& sentence) {
  const int n = sentence.size();
  for (int i = 1; i <= n; ++i) {
    int lo1 = std::min(sentence.at(i).head, i);
    int hi1 = std::max(sentence.at(i).head, i);
    for (int j = i + 1; j <= n; ++j) {
      int lo2 = std::min(sentence.at(j).head, j);
      int hi2 = std::max(sentence.at(j).head, j);
      if ((lo1 < lo2 && lo2 < hi1 && hi1 < hi2) || (lo2 < lo1 && lo1 < hi2 && hi2 < hi1))
        return false;
    }
  }
  return true;
}

}  // namespace dparse
