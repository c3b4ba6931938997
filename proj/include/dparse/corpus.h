#pragma once

// CoNLL column-format treebank I/O and corpus statistics.

#include <iosfwd>
#include <set>
#include <string>
#include <vector>

namespace dparse {

// Head index 0 is the artificial root token.
struct Token {
  int index = 0;            // 1-based position in the sentence
  std::string form;
  std::string lemma;        // empty = absent ("_")
  std::string pos;          // empty = absent
  int head = -1;            // -1 = absent, 0 = <root>
  std::string deprel;       // empty = absent
  std::vector<std::string> extras;  // unmodelled columns, kept verbatim
};

struct Sentence {
  std::vector<Token> tokens;

  int size() const { return static_cast<int>(tokens.size()); }
  bool empty() const { return tokens.empty(); }
  Token& at(int index) { return tokens[static_cast<size_t>(index) - 1]; }
  const Token& at(int index) const { return tokens[static_cast<size_t>(index) - 1]; }

  // Surface attributes addressed by token index, with 0 mapped to <root>.
  const std::string& form(int index) const;
  const std::string& pos(int index) const;
};

using Corpus = std::vector<Sentence>;

struct CorpusStats {
  long sentence_count = 0;
  long token_count = 0;
  double average_length = 0.0;  // tokens per sentence, 0 for an empty corpus
  std::set<std::string> vocabulary;
};

enum class ConllFormat { Conll06, Conll09 };

ConllFormat conll_format_from_string(const std::string& name);
std::string to_string(ConllFormat format);

Corpus read_conll(std::istream& in, ConllFormat format);
Corpus read_conll_file(const std::string& path, ConllFormat format);
void write_conll(std::ostream& out, const Corpus& corpus, ConllFormat format);
void write_conll_file(const std::string& path, const Corpus& corpus, ConllFormat format);

CorpusStats corpus_stats(const Corpus& corpus);

// Throws ValidationError unless every head lies in [0, n], no token is its own
// head and the heads form a single tree rooted at token 0.
void validate_tree(const Sentence& sentence);
bool is_valid_tree(const Sentence& sentence);

// True when no two dependency edges (including root attachments) cross.
bool is_projective(const Sentence& sentence);

}  // namespace dparse
