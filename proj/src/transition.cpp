#include "dparse/transition.h"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "dparse/error.h"

namespace dparse {

namespace {
const std::string kRootLabel = "ROOT";
}

SystemKind system_from_string(const std::string& name) {
  if (name == "arc_standard_swap" || name == "arc_standard") return SystemKind::ArcStandardSwap;
  if (name == "arc_eager") return SystemKind::ArcEager;
  throw ConfigError("unknown transition system: " + name);
}

std::string to_string(SystemKind system) {
  return system == SystemKind::ArcStandardSwap ? "arc_standard_swap" : "arc_eager";
}

int ordinal(TransitionKind kind) {
  switch (kind) {
    case TransitionKind::Shift: return 0;
    case TransitionKind::LeftArc: return 1;
    case TransitionKind::RightArc: return 2;
    case TransitionKind::Swap: return 3;
    case TransitionKind::Reduce: return 3;
  }
  return 4;
}

Transition shift() { return {TransitionKind::Shift, ""}; }
Transition left_arc(std::string label) { return {TransitionKind::LeftArc, std::move(label)}; }
Transition right_arc(std::string label) { return {TransitionKind::RightArc, std::move(label)}; }
Transition swap() { return {TransitionKind::Swap, ""}; }
Transition reduce() { return {TransitionKind::Reduce, ""}; }

std::string to_string(const Transition& t) {
  switch (t.kind) {
    case TransitionKind::Shift: return "Shift";
    case TransitionKind::LeftArc: return "LeftArc(" + t.label + ")";
    case TransitionKind::RightArc: return "RightArc(" + t.label + ")";
    case TransitionKind::Swap: return "Swap";
    case TransitionKind::Reduce: return "Reduce";
  }
  return "?";
}

int Configuration::arc_count() const {
  int count = 0;
  for (size_t i = 1; i < head.size(); ++i)
    if (head[i] >= 0) ++count;
  return count;
}

std::vector<Arc> Configuration::arcs() const {
  std::vector<Arc> result;
  for (size_t i = 1; i < head.size(); ++i)
    if (head[i] >= 0) result.push_back({head[i], static_cast<int>(i), label[i]});
  return result;
}

Configuration initial_configuration(const Sentence& sentence, SystemKind system) {
  Configuration config;
  config.system = system;
  config.stack.push_back(0);
  config.buffer.resize(static_cast<size_t>(sentence.size()));
  for (int i = 1; i <= sentence.size(); ++i) config.buffer[static_cast<size_t>(i) - 1] = i;
  config.head.assign(static_cast<size_t>(sentence.size()) + 1, -1);
  config.label.assign(static_cast<size_t>(sentence.size()) + 1, "");
  return config;
}

bool is_terminal(const Configuration& config) {
  if (!config.buffer.empty()) return false;
  if (config.system == SystemKind::ArcEager) return true;
  return config.stack.size() == 1;
}

bool permissible(const Configuration& config, const Transition& transition) {
  if (config.system == SystemKind::ArcStandardSwap) {
    switch (transition.kind) {
      case TransitionKind::Shift:
        return !config.buffer.empty();
      case TransitionKind::LeftArc:
        return config.stack.size() >= 2 && config.stack_second() != 0;
      case TransitionKind::RightArc:
        return config.stack.size() >= 2;
      case TransitionKind::Swap:
        return config.stack.size() >= 2 && 0 < config.stack_second() &&
               config.stack_second() < config.stack_top();
      case TransitionKind::Reduce:
        return false;
    }
  } else {
    switch (transition.kind) {
      case TransitionKind::Shift:
        return !config.buffer.empty();
      case TransitionKind::LeftArc:
        return !config.buffer.empty() && !config.stack.empty() && config.stack_top() != 0 &&
               !config.attached(config.stack_top());
      case TransitionKind::RightArc:
        return !config.buffer.empty() && !config.stack.empty();
      case TransitionKind::Reduce:
        return !config.stack.empty() && config.attached(config.stack_top());
      case TransitionKind::Swap:
        return false;
    }
  }
  return false;
}

Configuration apply(const Configuration& config, const Transition& transition) {
  if (!permissible(config, transition))
    throw std::logic_error("non-permissible transition " + to_string(transition));
  Configuration next = config;
  next.history.push_back(transition);
  const size_t depth = config.stack.size();

  if (config.system == SystemKind::ArcStandardSwap) {
    switch (transition.kind) {
      case TransitionKind::Shift:
        next.stack.push_back(next.buffer.front());
        next.buffer.erase(next.buffer.begin());
        break;
      case TransitionKind::LeftArc: {
        int dependent = next.stack[depth - 2];
        next.head[static_cast<size_t>(dependent)] = next.stack[depth - 1];
        next.label[static_cast<size_t>(dependent)] = transition.label;
        next.stack.erase(next.stack.end() - 2);
        break;
      }
      case TransitionKind::RightArc: {
        int dependent = next.stack[depth - 1];
        next.head[static_cast<size_t>(dependent)] = next.stack[depth - 2];
        next.label[static_cast<size_t>(dependent)] = transition.label;
        next.stack.pop_back();
        break;
      }
      case TransitionKind::Swap: {
        int moved = next.stack[depth - 2];
        next.stack.erase(next.stack.end() - 2);
        next.buffer.insert(next.buffer.begin(), moved);
        break;
      }
      default:
        break;
    }
  } else {
    switch (transition.kind) {
      case TransitionKind::Shift:
        next.stack.push_back(next.buffer.front());
        next.buffer.erase(next.buffer.begin());
        break;
      case TransitionKind::LeftArc: {
        int dependent = next.stack.back();
        next.head[static_cast<size_t>(dependent)] = next.buffer.front();
        next.label[static_cast<size_t>(dependent)] = transition.label;
        next.stack.pop_back();
        break;
      }
      case TransitionKind::RightArc: {
        int dependent = next.buffer.front();
        next.head[static_cast<size_t>(dependent)] = next.stack.back();
        next.label[static_cast<size_t>(dependent)] = transition.label;
        next.stack.push_back(dependent);
        next.buffer.erase(next.buffer.begin());
        break;
      }
      case TransitionKind::Reduce:
        next.stack.pop_back();
        break;
      default:
        break;
    }
  }
  return next;
}

Sentence tree_of(const Sentence& sentence, const Configuration& config) {
  Sentence tree = sentence;
  for (int i = 1; i <= tree.size(); ++i) {
    if (config.attached(i)) {
      tree.at(i).head = config.head[static_cast<size_t>(i)];
      tree.at(i).deprel = config.label[static_cast<size_t>(i)];
    } else {
      tree.at(i).head = 0;
      tree.at(i).deprel = kRootLabel;
    }
  }
  return tree;
}

std::vector<int> projective_order(const Sentence& sentence) {
  const int n = sentence.size();
  std::vector<std::vector<int>> children(static_cast<size_t>(n) + 1);
  for (int i = 1; i <= n; ++i)
    children[static_cast<size_t>(sentence.at(i).head)].push_back(i);

  std::vector<int> order(static_cast<size_t>(n) + 1, 0);
  struct Frame {
    int node;
    size_t next = 0;
    bool self_done = false;
  };
  std::vector<Frame> frames{{0}};
  int counter = 0;
  while (!frames.empty()) {
    Frame& frame = frames.back();
    const auto& kids = children[static_cast<size_t>(frame.node)];
    if (!frame.self_done && (frame.next >= kids.size() || kids[frame.next] > frame.node)) {
      order[static_cast<size_t>(frame.node)] = counter++;
      frame.self_done = true;
      continue;
    }
    if (frame.next < kids.size())
      frames.push_back({kids[frame.next++]});
    else
      frames.pop_back();
  }
  return order;
}

namespace {

// Arc-standard oracle: run the eager arc-standard derivation over the
// projectivized token order, then express each of its shifts in surface order
// as Shift-up-to-target followed by Swaps that send the overshot tokens back.
// On projective input the two orders coincide and no Swap is ever emitted;
// the grouped Shift/Swap blocks on non-projective input match the way the
// system is normally traced.
std::vector<Transition> arc_standard_oracle(const Sentence& sentence) {
  const int n = sentence.size();
  std::vector<int> order = projective_order(sentence);
  std::vector<int> by_order(static_cast<size_t>(n));
  for (int i = 1; i <= n; ++i) by_order[static_cast<size_t>(order[static_cast<size_t>(i)]) - 1] = i;

  std::vector<int> pending_children(static_cast<size_t>(n) + 1, 0);
  for (int i = 1; i <= n; ++i) ++pending_children[static_cast<size_t>(sentence.at(i).head)];

  std::vector<Transition> result;
  Configuration real = initial_configuration(sentence, SystemKind::ArcStandardSwap);
  auto emit = [&](const Transition& t) {
    result.push_back(t);
    real = apply(real, t);
  };

  std::vector<int> pstack{0};
  size_t pnext = 0;  // cursor into by_order
  while (!(pnext == by_order.size() && pstack.size() == 1)) {
    bool arc_taken = false;
    if (pstack.size() >= 2) {
      int second = pstack[pstack.size() - 2];
      int top = pstack.back();
      if (second != 0 && sentence.at(second).head == top &&
          pending_children[static_cast<size_t>(second)] == 0) {
        emit(left_arc(sentence.at(second).deprel));
        --pending_children[static_cast<size_t>(top)];
        pstack.erase(pstack.end() - 2);
        arc_taken = true;
      } else if (sentence.at(top).head == second &&
                 pending_children[static_cast<size_t>(top)] == 0) {
        emit(right_arc(sentence.at(top).deprel));
        --pending_children[static_cast<size_t>(second)];
        pstack.pop_back();
        arc_taken = true;
      }
    }
    if (arc_taken) continue;
    if (pnext >= by_order.size())
      throw ValidationError("oracle stuck; gold tree is not a valid tree");

    int target = by_order[pnext++];
    int below = pstack.back();
    pstack.push_back(target);
    while (real.stack_top() != target) emit(shift());
    while (real.stack_second() != below) emit(swap());
  }
  assert(real.stack == pstack);
  return result;
}

std::vector<Transition> arc_eager_oracle(const Sentence& sentence) {
  if (!is_projective(sentence))
    throw UnsupportedStructureError("arc-eager oracle requires a projective tree");

  std::vector<Transition> result;
  Configuration config = initial_configuration(sentence, SystemKind::ArcEager);
  while (!is_terminal(config)) {
    int top = config.stack_top();
    int front = config.buffer.front();
    Transition next = shift();
    if (top != 0 && sentence.at(top).head == front) {
      next = left_arc(sentence.at(top).deprel);
    } else if (sentence.at(front).head == top) {
      next = right_arc(sentence.at(front).deprel);
    } else {
      for (size_t d = 0; d + 1 < config.stack.size(); ++d) {
        int below = config.stack[d];
        if (sentence.at(front).head == below ||
            (below != 0 && sentence.at(below).head == front)) {
          next = reduce();
          break;
        }
      }
    }
    result.push_back(next);
    config = apply(config, next);
  }
  return result;
}

}  // namespace

std::vector<Transition> oracle_sequence(const Sentence& sentence, SystemKind system) {
  validate_tree(sentence);
  if (sentence.empty()) return {};
  return system == SystemKind::ArcStandardSwap ? arc_standard_oracle(sentence)
                                               : arc_eager_oracle(sentence);
}

}  // namespace dparse
