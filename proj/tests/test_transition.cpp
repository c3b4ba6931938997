#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dparse/transition.h"
#include "support/synthetic.h"

using namespace dparse;

namespace {

Sentence plain_sentence(int n) {
  Sentence s;
  for (int i = 1; i <= n; ++i) s.tokens.push_back({i, "w" + std::to_string(i), "", "X", -1, "", {}});
  return s;
}

// a configuration with the given stack/buffer, arcs empty
Configuration make_config(SystemKind system, std::vector<int> stack, std::vector<int> buffer,
                          int n) {
  Configuration c;
  c.system = system;
  c.stack = std::move(stack);
  c.buffer = std::move(buffer);
  c.head.assign(static_cast<size_t>(n) + 1, -1);
  c.label.assign(static_cast<size_t>(n) + 1, "");
  return c;
}

}  // namespace

TEST_CASE("initial configuration: root on the stack, tokens in the buffer") {
  Configuration c = initial_configuration(plain_sentence(3));
  CHECK(c.stack == std::vector<int>{0});
  CHECK(c.buffer == std::vector<int>{1, 2, 3});
  CHECK(c.arcs().empty());
  CHECK(c.history.empty());
  CHECK_FALSE(is_terminal(c));
}

TEST_CASE("an empty sentence is terminal immediately") {
  CHECK(is_terminal(initial_configuration(plain_sentence(0))));
  CHECK(is_terminal(initial_configuration(plain_sentence(0), SystemKind::ArcEager)));
}

TEST_CASE("swap permissibility follows the original word order condition") {
  Configuration in_order = make_config(SystemKind::ArcStandardSwap, {0, 3, 5}, {}, 6);
  CHECK(permissible(in_order, swap()));
  Configuration swapped = make_config(SystemKind::ArcStandardSwap, {0, 5, 3}, {}, 6);
  CHECK_FALSE(permissible(swapped, swap()));
  Configuration with_root = make_config(SystemKind::ArcStandardSwap, {0, 5}, {}, 6);
  CHECK_FALSE(permissible(with_root, swap()));
}

TEST_CASE("left-arc never takes the root as dependent") {
  Configuration c = make_config(SystemKind::ArcStandardSwap, {0, 2}, {}, 3);
  CHECK_FALSE(permissible(c, left_arc("DEP")));
  CHECK(permissible(c, right_arc("DEP")));
}

TEST_CASE("right-arc removes the top and records the arc") {
  Sentence s = plain_sentence(2);
  s.at(1).form = "plays";
  s.at(2).form = "football";
  Configuration c = make_config(SystemKind::ArcStandardSwap, {0, 1, 2}, {}, 2);
  Configuration next = apply(c, right_arc("OBJ"));
  CHECK(next.stack == std::vector<int>{0, 1});
  REQUIRE(next.arcs().size() == 1);
  CHECK(next.arcs()[0] == Arc{1, 2, "OBJ"});
  // purity: the input configuration is untouched
  CHECK(c.arcs().empty());
  CHECK(c.stack == std::vector<int>{0, 1, 2});
  CHECK(next.history.size() == 1);
}

TEST_CASE("swap moves the second-top token back to the buffer front") {
  Configuration c = make_config(SystemKind::ArcStandardSwap, {0, 3, 4}, {5, 6}, 6);
  Configuration next = apply(c, swap());
  CHECK(next.stack == std::vector<int>{0, 4});
  CHECK(next.buffer == std::vector<int>{3, 5, 6});
}

TEST_CASE("non-permissible transitions are contract violations") {
  Configuration c = initial_configuration(plain_sentence(2));
  CHECK_THROWS_AS(apply(c, left_arc("DEP")), std::logic_error);
  CHECK_THROWS_AS(apply(c, swap()), std::logic_error);
}

TEST_CASE("arc-eager transition effects") {
  Sentence s = plain_sentence(3);
  Configuration c = initial_configuration(s, SystemKind::ArcEager);
  c = apply(c, shift());  // [0 1] [2 3]
  Configuration la = apply(c, left_arc("DEP"));
  CHECK(la.stack == std::vector<int>{0});
  CHECK(la.arcs()[0] == Arc{2, 1, "DEP"});

  Configuration ra = apply(c, right_arc("MOD"));  // arc 1 -> 2, push 2
  CHECK(ra.stack == std::vector<int>{0, 1, 2});
  CHECK(ra.buffer == std::vector<int>{3});
  CHECK(ra.arcs()[0] == Arc{1, 2, "MOD"});
  CHECK(permissible(ra, reduce()));  // 2 has a head now
  Configuration red = apply(ra, reduce());
  CHECK(red.stack == std::vector<int>{0, 1});

  CHECK_FALSE(permissible(c, reduce()));  // 1 has no head yet
}

TEST_CASE("random transition walks keep the invariants") {
  auto rng = testsupport::make_rng(23);
  for (SystemKind system : {SystemKind::ArcStandardSwap, SystemKind::ArcEager}) {
    for (int trial = 0; trial < 120; ++trial) {
      int n = testsupport::rand_int(rng, 0, 12);
      Sentence s = plain_sentence(n);
      Configuration c = initial_configuration(s, system);
      std::vector<Transition> moves{shift(), left_arc("DEP"), right_arc("DEP"),
                                    system == SystemKind::ArcStandardSwap ? swap() : reduce()};
      long steps = 0;
      const long bound = 4 * static_cast<long>(n) * n + 1;
      while (!is_terminal(c)) {
        std::vector<Transition> open;
        for (const Transition& t : moves)
          if (permissible(c, t)) open.push_back(t);
        // no deadlock: a non-terminal configuration always has a move
        REQUIRE(!open.empty());
        c = apply(c, open[static_cast<size_t>(testsupport::rand_int(
                      rng, 0, static_cast<int>(open.size()) - 1))]);
        ++steps;
        REQUIRE(steps <= bound);
        // single-head: arcs() collects one entry per attached dependent by
        // construction; stack/buffer tokens must still be unattached in the
        // arc-standard system
        if (system == SystemKind::ArcStandardSwap) {
          for (int tok : c.stack)
            if (tok != 0) CHECK_FALSE(c.attached(tok));
          for (int tok : c.buffer) CHECK_FALSE(c.attached(tok));
        }
      }
      if (system == SystemKind::ArcStandardSwap) CHECK(c.arc_count() == n);
    }
  }
}
