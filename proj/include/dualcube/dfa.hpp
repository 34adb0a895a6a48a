// Copyright (c) 2026 The dualcube authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace dualcube {

using Letter = int;
using Letters = std::vector<Letter>;

// Complete deterministic acceptor over letters 0..alphabetSize-1.
// Transitions are total; partial automata are modelled with an explicit
// rejecting sink. Canonical form (minimal automaton, states numbered in
// BFS order from the start) makes language equality a structural
// comparison and serialization deterministic.
class Dfa {
 public:
  Dfa() = default;
  Dfa(int alphabet_size, int num_states);

  int alphabetSize() const { return alphabet_; }
  int numStates() const { return static_cast<int>(accept_.size()); }
  int start() const { return start_; }
  void setStart(int s) { start_ = s; }
  bool accepting(int s) const { return accept_[static_cast<size_t>(s)]; }
  void setAccepting(int s, bool b) { accept_[static_cast<size_t>(s)] = b; }
  int next(int s, Letter a) const {
    return trans_[static_cast<size_t>(s) * static_cast<size_t>(alphabet_) +
                  static_cast<size_t>(a)];
  }
  void setNext(int s, Letter a, int t) {
    trans_[static_cast<size_t>(s) * static_cast<size_t>(alphabet_) +
           static_cast<size_t>(a)] = t;
  }
  int addState(bool accepting = false);

  bool accepts(const Letters& word) const;
  int run(int state, const Letters& word) const;

  enum class BoolOp { And, Or, Diff, Xor };
  static Dfa product(const Dfa& a, const Dfa& b, BoolOp op);

  Dfa complemented() const;

  // Minimal automaton with BFS-canonical state numbering.
  Dfa minimized() const;

  bool isEmpty() const;
  bool isFinite() const;  // accepted language is a finite set
  std::optional<Letters> shortestAccepted() const;

  // Accepted words of length <= max_len in shortlex order (letter index
  // order). Throws ResourceLimit past `cap`.
  std::vector<Letters> enumerate(int max_len, size_t cap) const;

  // Words accepted regardless of length, in shortlex order, up to `count`
  // of them (empty result if language has fewer). Throws ResourceLimit if
  // the search frontier exceeds `cap`.
  std::vector<Letters> firstWords(size_t count, size_t cap) const;

  bool includes(const Dfa& other) const;      // other subseteq this
  bool sameLanguage(const Dfa& other) const;  // via minimized comparison

  // Structural equality (meaningful on canonical automata).
  bool operator==(const Dfa& other) const;

  // Deterministic byte string; canon automata with equal languages agree.
  std::string structuralKey() const;
  uint64_t fingerprint() const;

  std::vector<bool> reachableStates() const;
  std::vector<bool> coaccessibleStates() const;

 private:
  int alphabet_ = 0;
  int start_ = 0;
  std::vector<int> trans_;
  std::vector<bool> accept_;
};

// Nondeterministic acceptor with epsilon moves, used to assemble
// languages before determinization.
class Nfa {
 public:
  explicit Nfa(int alphabet_size) : alphabet_(alphabet_size) {}

  int addState(bool accepting = false);
  int numStates() const { return static_cast<int>(accept_.size()); }
  void setStart(int s) { start_ = s; }
  void setAccepting(int s, bool b) { accept_[static_cast<size_t>(s)] = b; }
  void addEdge(int from, Letter a, int to);
  void addEps(int from, int to);

  // Subset construction (with epsilon closure); complete result.
  Dfa determinized(size_t state_cap = 1u << 20) const;

 private:
  int alphabet_ = 0;
  int start_ = 0;
  std::vector<std::map<Letter, std::set<int>>> edges_;
  std::vector<std::set<int>> eps_;
  std::vector<bool> accept_;
};

}  // namespace dualcube
