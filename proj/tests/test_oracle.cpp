#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "dparse/error.h"
#include "dparse/transition.h"
#include "support/synthetic.h"

using namespace dparse;

namespace {

std::vector<Arc> gold_arcs(const Sentence& s) {
  std::vector<Arc> arcs;
  for (int i = 1; i <= s.size(); ++i) arcs.push_back({s.at(i).head, i, s.at(i).deprel});
  return arcs;
}

std::vector<Arc> replay(const Sentence& s, const std::vector<Transition>& sequence,
                        SystemKind system) {
  Configuration c = initial_configuration(s, system);
  for (const Transition& t : sequence) c = apply(c, t);
  REQUIRE(is_terminal(c));
  return c.arcs();
}

Sentence hearing_sentence() {
  Sentence s;
  s.tokens.push_back({1, "A", "", "DT", 2, "DET", {}});
  s.tokens.push_back({2, "hearing", "", "NN", 3, "SBJ", {}});
  s.tokens.push_back({3, "is", "", "VBZ", 0, "ROOT", {}});
  s.tokens.push_back({4, "scheduled", "", "VBN", 3, "VG", {}});
  s.tokens.push_back({5, "on", "", "IN", 2, "NMOD", {}});
  s.tokens.push_back({6, "the", "", "DT", 7, "DET", {}});
  s.tokens.push_back({7, "issue", "", "NN", 5, "PC", {}});
  return s;
}

}  // namespace

TEST_CASE("projective trees need no swaps") {
  auto rng = testsupport::make_rng(5);
  for (int trial = 0; trial < 150; ++trial) {
    Sentence s = testsupport::random_projective_tree(rng, testsupport::rand_int(rng, 1, 10));
    std::vector<Transition> sequence = oracle_sequence(s, SystemKind::ArcStandardSwap);
    for (const Transition& t : sequence) CHECK(t.kind != TransitionKind::Swap);
    CHECK(replay(s, sequence, SystemKind::ArcStandardSwap) == gold_arcs(s));
  }
}

TEST_CASE("the worked non-projective trace comes out move for move") {
  Sentence s = hearing_sentence();
  std::vector<Transition> sequence = oracle_sequence(s, SystemKind::ArcStandardSwap);

  const std::vector<Transition> expected{
      shift(), shift(), left_arc("DET"),
      shift(), shift(), shift(), swap(), swap(),
      shift(), shift(), shift(), swap(), swap(),
      shift(), shift(), shift(), swap(), swap(),
      left_arc("DET"), right_arc("PC"), right_arc("NMOD"),
      shift(), left_arc("SBJ"),
      shift(), right_arc("VG"), right_arc("ROOT")};
  REQUIRE(sequence.size() == expected.size());
  for (size_t i = 0; i < expected.size(); ++i) {
    CAPTURE(i);
    CHECK(sequence[i] == expected[i]);
  }
  CHECK(replay(s, sequence, SystemKind::ArcStandardSwap) == gold_arcs(s));
}

TEST_CASE("oracle replay reconstructs random trees of mixed projectivity") {
  auto rng = testsupport::make_rng(17);
  int nonprojective = 0;
  for (int trial = 0; trial < 300; ++trial) {
    Sentence s = testsupport::random_tree(rng, testsupport::rand_int(rng, 1, 12));
    if (!is_projective(s)) ++nonprojective;
    std::vector<Transition> sequence = oracle_sequence(s, SystemKind::ArcStandardSwap);
    CHECK(replay(s, sequence, SystemKind::ArcStandardSwap) == gold_arcs(s));
  }
  CHECK(nonprojective > 60);
}

TEST_CASE("arc-eager oracle handles projective trees and rejects the rest") {
  auto rng = testsupport::make_rng(29);
  for (int trial = 0; trial < 150; ++trial) {
    Sentence s = testsupport::random_projective_tree(rng, testsupport::rand_int(rng, 1, 10));
    std::vector<Transition> sequence = oracle_sequence(s, SystemKind::ArcEager);
    CHECK(replay(s, sequence, SystemKind::ArcEager) == gold_arcs(s));
  }
  CHECK_THROWS_AS(oracle_sequence(hearing_sentence(), SystemKind::ArcEager),
                  UnsupportedStructureError);
}

TEST_CASE("degenerate oracle inputs") {
  Sentence empty;
  CHECK(oracle_sequence(empty, SystemKind::ArcStandardSwap).empty());

  Sentence one;
  one.tokens.push_back({1, "w", "", "X", 0, "ROOT", {}});
  std::vector<Transition> sequence = oracle_sequence(one, SystemKind::ArcStandardSwap);
  CHECK(replay(one, sequence, SystemKind::ArcStandardSwap) == gold_arcs(one));

  Sentence invalid;
  invalid.tokens.push_back({1, "w", "", "X", -1, "", {}});
  CHECK_THROWS_AS(oracle_sequence(invalid, SystemKind::ArcStandardSwap), ValidationError);
}

TEST_CASE("projective order is the surface order exactly on projective trees") {
  auto rng = testsupport::make_rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    Sentence s = testsupport::random_projective_tree(rng, testsupport::rand_int(rng, 1, 9));
    std::vector<int> order = projective_order(s);
    for (int i = 0; i <= s.size(); ++i) CHECK(order[static_cast<size_t>(i)] == i);
  }
}
