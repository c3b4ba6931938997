#pragma once

// Parser configurations and transition systems: arc-standard with Swap
// (primary) and arc-eager (used for learner diversity).

#include <string>
#include <vector>

#include "dparse/corpus.h"

namespace dparse {

enum class SystemKind { ArcStandardSwap, ArcEager };

SystemKind system_from_string(const std::string& name);
std::string to_string(SystemKind system);

enum class TransitionKind { Shift, LeftArc, RightArc, Swap, Reduce };

// Tie-break order between kinds: Shift < LeftArc < RightArc < Swap/Reduce.
int ordinal(TransitionKind kind);

struct Transition {
  TransitionKind kind = TransitionKind::Shift;
  std::string label;  // set exactly on arc-creating kinds

  bool operator==(const Transition& other) const = default;
};

Transition shift();
Transition left_arc(std::string label);
Transition right_arc(std::string label);
Transition swap();
Transition reduce();

std::string to_string(const Transition& t);

struct Arc {
  int head = 0;
  int dependent = 0;
  std::string label;

  bool operator==(const Arc& other) const = default;
  auto operator<=>(const Arc& other) const = default;
};

// Parser state. Stack top is at the back, buffer front at index 0. Arcs are
// stored as head/label arrays indexed by dependent.
struct Configuration {
  SystemKind system = SystemKind::ArcStandardSwap;
  std::vector<int> stack;
  std::vector<int> buffer;
  std::vector<int> head;            // size n+1, -1 while unattached
  std::vector<std::string> label;   // parallel to head
  std::vector<Transition> history;

  int stack_top() const { return stack.back(); }
  int stack_second() const { return stack[stack.size() - 2]; }
  bool attached(int token) const { return head[static_cast<size_t>(token)] >= 0; }
  int arc_count() const;
  std::vector<Arc> arcs() const;  // sorted by dependent
};

Configuration initial_configuration(const Sentence& sentence,
                                    SystemKind system = SystemKind::ArcStandardSwap);

bool is_terminal(const Configuration& config);

bool permissible(const Configuration& config, const Transition& transition);

// Pure: returns the successor configuration, the input is untouched.
// Throws std::logic_error on a non-permissible transition.
Configuration apply(const Configuration& config, const Transition& transition);

// The annotated tree of a terminal configuration: a copy of the sentence with
// heads/labels taken from the arc set. Tokens the arc-eager system left
// unattached are given to the root under the ROOT label.
Sentence tree_of(const Sentence& sentence, const Configuration& config);

// Inorder positions of all tokens (index 0 = root included); equals surface
// order exactly for projective trees.
std::vector<int> projective_order(const Sentence& sentence);

// Static oracle. Replaying the returned sequence from the initial
// configuration reproduces the gold arcs exactly and ends in a terminal
// configuration. The arc-eager system supports projective trees only.
std::vector<Transition> oracle_sequence(const Sentence& sentence, SystemKind system);

}  // namespace dparse
