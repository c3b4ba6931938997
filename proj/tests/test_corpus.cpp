#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "dparse/corpus.h"
#include "dparse/error.h"
#include "support/synthetic.h"

using namespace dparse;

namespace {

const char* kTwoRowBlock =
    "1\tTom\t_\t_\tNNP\t_\t2\tSBJ\t_\t_\n"
    "2\tplays\t_\t_\tVBZ\t_\t0\tROOT\t_\t_\n";

Corpus parse06(const std::string& text) {
  std::istringstream in(text);
  return read_conll(in, ConllFormat::Conll06);
}

}  // namespace

TEST_CASE("conll06 rows map onto token fields") {
  Corpus corpus = parse06(kTwoRowBlock);
  REQUIRE(corpus.size() == 1);
  const Sentence& s = corpus[0];
  REQUIRE(s.size() == 2);
  CHECK(s.at(1).form == "Tom");
  CHECK(s.at(1).head == 2);
  CHECK(s.at(1).deprel == "SBJ");
  CHECK(s.at(1).pos == "NNP");
  CHECK(s.at(1).lemma == "");
  CHECK(s.at(2).form == "plays");
  CHECK(s.at(2).head == 0);
  CHECK(s.at(2).deprel == "ROOT");
}

TEST_CASE("empty stream gives an empty corpus") {
  CHECK(parse06("").empty());
  CHECK(parse06("\n\n\n").empty());
}

TEST_CASE("malformed rows carry their line number") {
  CHECK_THROWS_AS(parse06("1\tTom\t_\t_\tNNP\t_\tx\tSBJ\t_\t_\n"), ParseError);
  try {
    parse06("1\tTom\t_\t_\tNNP\t_\t2\tSBJ\t_\t_\n"
            "2\tplays\t_\t_\tVBZ\t_\tbad\tROOT\t_\t_\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  // wrong column count
  CHECK_THROWS_AS(parse06("1\tTom\tNNP\t2\tSBJ\n"), ParseError);
  // ids out of sequence
  CHECK_THROWS_AS(parse06("2\tTom\t_\t_\tNNP\t_\t0\tROOT\t_\t_\n"), ParseError);
}

TEST_CASE("out-of-range head is a validation error") {
  CHECK_THROWS_AS(parse06("1\tTom\t_\t_\tNNP\t_\t7\tSBJ\t_\t_\n"), ValidationError);
  CHECK_THROWS_AS(parse06("1\tTom\t_\t_\tNNP\t_\t1\tSBJ\t_\t_\n"), ValidationError);
}

TEST_CASE("write then read reproduces every populated field") {
  auto rng = testsupport::make_rng(7);
  Corpus corpus;
  for (int i = 0; i < 25; ++i)
    corpus.push_back(testsupport::random_tree(rng, testsupport::rand_int(rng, 1, 9)));
  corpus[3].tokens[0].lemma = "lemma";
  corpus[3].tokens[0].extras = {"NN", "f=1", "_", "_"};

  for (ConllFormat format : {ConllFormat::Conll06, ConllFormat::Conll09}) {
    Corpus reread = format == ConllFormat::Conll06 ? corpus : Corpus{};
    if (format == ConllFormat::Conll09) {
      reread = corpus;
      for (Sentence& s : reread)
        for (Token& t : s.tokens) t.extras.clear();
    }
    std::ostringstream out;
    write_conll(out, reread, format);
    std::istringstream in(out.str());
    Corpus back = read_conll(in, format);
    REQUIRE(back.size() == reread.size());
    for (size_t i = 0; i < back.size(); ++i) {
      REQUIRE(back[i].size() == reread[i].size());
      for (int t = 1; t <= back[i].size(); ++t) {
        CHECK(back[i].at(t).form == reread[i].at(t).form);
        CHECK(back[i].at(t).lemma == reread[i].at(t).lemma);
        CHECK(back[i].at(t).pos == reread[i].at(t).pos);
        CHECK(back[i].at(t).head == reread[i].at(t).head);
        CHECK(back[i].at(t).deprel == reread[i].at(t).deprel);
      }
    }
  }
}

TEST_CASE("absent lemma is written as underscore") {
  Sentence s;
  s.tokens.push_back({1, "plays", "", "VBZ", 0, "ROOT", {}});
  std::ostringstream out;
  write_conll(out, {s}, ConllFormat::Conll06);
  CHECK(out.str() == "1\tplays\t_\t_\tVBZ\t_\t0\tROOT\t_\t_\n\n");
}

TEST_CASE("empty corpus writes an empty stream") {
  std::ostringstream out;
  write_conll(out, {}, ConllFormat::Conll06);
  CHECK(out.str().empty());
}

TEST_CASE("conll09 uses the 14-column layout") {
  std::string row = "1\tTom\ttom\ttom\tNNP\tNNP\t_\t_\t2\t2\tSBJ\tSBJ\t_\t_\n"
                    "2\tplays\tplay\tplay\tVBZ\tVBZ\t_\t_\t0\t0\tROOT\tROOT\t_\t_\tA0\n";
  std::istringstream in(row);
  Corpus corpus = read_conll(in, ConllFormat::Conll09);
  REQUIRE(corpus.size() == 1);
  CHECK(corpus[0].at(1).pos == "NNP");
  CHECK(corpus[0].at(1).head == 2);
  CHECK(corpus[0].at(1).deprel == "SBJ");
  CHECK(corpus[0].at(2).extras.back() == "A0");  // extra APRED column survives

  std::ostringstream out;
  write_conll(out, corpus, ConllFormat::Conll09);
  CHECK(out.str() == row + "\n");
}

TEST_CASE("corpus statistics") {
  auto rng = testsupport::make_rng(3);
  Corpus corpus{testsupport::random_tree(rng, 3), testsupport::random_tree(rng, 5)};
  CorpusStats stats = corpus_stats(corpus);
  CHECK(stats.sentence_count == 2);
  CHECK(stats.token_count == 8);
  CHECK(stats.average_length == doctest::Approx(4.0));

  CHECK(corpus_stats({}).sentence_count == 0);
  CHECK(corpus_stats({}).token_count == 0);
  CHECK(corpus_stats({}).average_length == 0.0);

  Sentence repeated;
  repeated.tokens.push_back({1, "a", "", "X", 2, "DEP", {}});
  repeated.tokens.push_back({2, "a", "", "X", 0, "DEP", {}});
  CHECK(corpus_stats({repeated}).vocabulary.size() == 1);
}

TEST_CASE("tree validation agrees with a brute-force connectivity check") {
  auto rng = testsupport::make_rng(11);
  int valid_seen = 0, invalid_seen = 0;
  for (int trial = 0; trial < 600; ++trial) {
    int n = testsupport::rand_int(rng, 1, 10);
    // arbitrary head assignment, self-loops and cycles included
    Sentence s = testsupport::random_tree(rng, n);
    for (int i = 1; i <= n; ++i) s.at(i).head = testsupport::rand_int(rng, 0, n);
    bool brute = testsupport::brute_force_is_tree(s);
    CHECK(is_valid_tree(s) == brute);
    (brute ? valid_seen : invalid_seen)++;
  }
  CHECK(valid_seen > 50);
  CHECK(invalid_seen > 50);
}

TEST_CASE("validation rejects cycles, self-heads and missing heads") {
  Sentence cycle;
  cycle.tokens.push_back({1, "a", "", "X", 2, "DEP", {}});
  cycle.tokens.push_back({2, "b", "", "X", 1, "DEP", {}});
  CHECK_THROWS_AS(validate_tree(cycle), ValidationError);

  Sentence unannotated;
  unannotated.tokens.push_back({1, "a", "", "X", -1, "", {}});
  CHECK_THROWS_AS(validate_tree(unannotated), ValidationError);

  // two root children still form a single tree rooted at 0
  Sentence multi;
  multi.tokens.push_back({1, "a", "", "X", 0, "DEP", {}});
  multi.tokens.push_back({2, "b", "", "X", 0, "DEP", {}});
  CHECK_NOTHROW(validate_tree(multi));
}

TEST_CASE("projectivity check") {
  Sentence chain;
  for (int i = 1; i <= 4; ++i) chain.tokens.push_back({i, "w", "", "X", i - 1, "DEP", {}});
  CHECK(is_projective(chain));

  // "A hearing is scheduled on the issue": crossing hearing->on over the root arc
  Sentence hearing;
  hearing.tokens.push_back({1, "A", "", "DT", 2, "DET", {}});
  hearing.tokens.push_back({2, "hearing", "", "NN", 3, "SBJ", {}});
  hearing.tokens.push_back({3, "is", "", "VBZ", 0, "ROOT", {}});
  hearing.tokens.push_back({4, "scheduled", "", "VBN", 3, "VG", {}});
  hearing.tokens.push_back({5, "on", "", "IN", 2, "NMOD", {}});
  hearing.tokens.push_back({6, "the", "", "DT", 7, "DET", {}});
  hearing.tokens.push_back({7, "issue", "", "NN", 5, "PC", {}});
  CHECK_FALSE(is_projective(hearing));
}
