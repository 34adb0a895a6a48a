// Copyright (c) 2026 The dualcube authors
// SPDX-License-Identifier: Apache-2.0

#include "dualcube/dfa.hpp"

#include <algorithm>
#include <deque>
#include <queue>

#include "dualcube/errors.hpp"

namespace dualcube {

Dfa::Dfa(int alphabet_size, int num_states)
    : alphabet_(alphabet_size),
      trans_(static_cast<size_t>(alphabet_size) * static_cast<size_t>(num_states), 0),
      accept_(static_cast<size_t>(num_states), false) {}

int Dfa::addState(bool accepting) {
  int id = numStates();
  accept_.push_back(accepting);
  trans_.resize(trans_.size() + static_cast<size_t>(alphabet_), 0);
  return id;
}

bool Dfa::accepts(const Letters& word) const {
  return accepting(run(start_, word));
}

int Dfa::run(int state, const Letters& word) const {
  for (Letter a : word) state = next(state, a);
  return state;
}

Dfa Dfa::product(const Dfa& a, const Dfa& b, BoolOp op) {
  if (a.alphabetSize() != b.alphabetSize())
    throw Error(ErrorCode::Internal, "dfa product: alphabet mismatch");
  auto combine = [op](bool x, bool y) {
    switch (op) {
      case BoolOp::And: return x && y;
      case BoolOp::Or: return x || y;
      case BoolOp::Diff: return x && !y;
      case BoolOp::Xor: return x != y;
    }
    return false;
  };
  Dfa out(a.alphabetSize(), 0);
  std::map<std::pair<int, int>, int> ids;
  std::deque<std::pair<int, int>> todo;
  auto intern = [&](int x, int y) {
    auto key = std::make_pair(x, y);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    int id = out.addState(combine(a.accepting(x), b.accepting(y)));
    ids.emplace(key, id);
    todo.push_back(key);
    return id;
  };
  out.setStart(intern(a.start(), b.start()));
  while (!todo.empty()) {
    auto [x, y] = todo.front();
    todo.pop_front();
    int from = ids[{x, y}];
    for (Letter l = 0; l < a.alphabetSize(); ++l)
      out.setNext(from, l, intern(a.next(x, l), b.next(y, l)));
  }
  return out;
}

Dfa Dfa::complemented() const {
  Dfa out = *this;
  for (int s = 0; s < out.numStates(); ++s) out.setAccepting(s, !out.accepting(s));
  return out;
}

std::vector<bool> Dfa::reachableStates() const {
  std::vector<bool> seen(static_cast<size_t>(numStates()), false);
  std::deque<int> todo{start_};
  seen[static_cast<size_t>(start_)] = true;
  while (!todo.empty()) {
    int s = todo.front();
    todo.pop_front();
    for (Letter l = 0; l < alphabet_; ++l) {
      int t = next(s, l);
      if (!seen[static_cast<size_t>(t)]) {
        seen[static_cast<size_t>(t)] = true;
        todo.push_back(t);
      }
    }
  }
  return seen;
}

std::vector<bool> Dfa::coaccessibleStates() const {
  // reverse reachability from accepting states
  int n = numStates();
  std::vector<std::vector<int>> rev(static_cast<size_t>(n));
  for (int s = 0; s < n; ++s)
    for (Letter l = 0; l < alphabet_; ++l) rev[static_cast<size_t>(next(s, l))].push_back(s);
  std::vector<bool> seen(static_cast<size_t>(n), false);
  std::deque<int> todo;
  for (int s = 0; s < n; ++s)
    if (accepting(s)) {
      seen[static_cast<size_t>(s)] = true;
      todo.push_back(s);
    }
  while (!todo.empty()) {
    int s = todo.front();
    todo.pop_front();
    for (int p : rev[static_cast<size_t>(s)])
      if (!seen[static_cast<size_t>(p)]) {
        seen[static_cast<size_t>(p)] = true;
        todo.push_back(p);
      }
  }
  return seen;
}

Dfa Dfa::minimized() const {
  // Moore partition refinement on the reachable part, then BFS renumber.
  auto reach = reachableStates();
  std::vector<int> cls(static_cast<size_t>(numStates()), -1);
  for (int s = 0; s < numStates(); ++s)
    if (reach[static_cast<size_t>(s)]) cls[static_cast<size_t>(s)] = accepting(s) ? 1 : 0;
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<std::vector<int>, int> sig_ids;
    std::vector<int> next_cls(cls.size(), -1);
    for (int s = 0; s < numStates(); ++s) {
      if (!reach[static_cast<size_t>(s)]) continue;
      std::vector<int> sig;
      sig.reserve(static_cast<size_t>(alphabet_) + 1);
      sig.push_back(cls[static_cast<size_t>(s)]);
      for (Letter l = 0; l < alphabet_; ++l) sig.push_back(cls[static_cast<size_t>(next(s, l))]);
      auto [it, fresh] = sig_ids.emplace(sig, static_cast<int>(sig_ids.size()));
      (void)fresh;
      next_cls[static_cast<size_t>(s)] = it->second;
    }
    if (next_cls != cls) {
      // count distinct old classes among reachable
      std::set<int> olds, news;
      for (int s = 0; s < numStates(); ++s)
        if (reach[static_cast<size_t>(s)]) {
          olds.insert(cls[static_cast<size_t>(s)]);
          news.insert(next_cls[static_cast<size_t>(s)]);
        }
      changed = news.size() != olds.size();
      cls = next_cls;
    }
  }
  // representative per class
  std::map<int, int> rep;
  for (int s = 0; s < numStates(); ++s)
    if (reach[static_cast<size_t>(s)]) rep.emplace(cls[static_cast<size_t>(s)], s);
  // BFS renumber from start class
  std::map<int, int> newid;
  std::deque<int> todo;
  int sc = cls[static_cast<size_t>(start_)];
  newid.emplace(sc, 0);
  todo.push_back(sc);
  std::vector<int> order{sc};
  while (!todo.empty()) {
    int c = todo.front();
    todo.pop_front();
    int s = rep[c];
    for (Letter l = 0; l < alphabet_; ++l) {
      int tc = cls[static_cast<size_t>(next(s, l))];
      if (!newid.count(tc)) {
        newid.emplace(tc, static_cast<int>(newid.size()));
        order.push_back(tc);
        todo.push_back(tc);
      }
    }
  }
  Dfa out(alphabet_, static_cast<int>(newid.size()));
  out.setStart(0);
  for (int c : order) {
    int s = rep[c];
    int id = newid[c];
    out.setAccepting(id, accepting(s));
    for (Letter l = 0; l < alphabet_; ++l)
      out.setNext(id, l, newid[cls[static_cast<size_t>(next(s, l))]]);
  }
  return out;
}

bool Dfa::isEmpty() const {
  auto reach = reachableStates();
  for (int s = 0; s < numStates(); ++s)
    if (reach[static_cast<size_t>(s)] && accepting(s)) return false;
  return true;
}

bool Dfa::isFinite() const {
  // finite iff no cycle among states that are both reachable and coaccessible
  auto reach = reachableStates();
  auto coacc = coaccessibleStates();
  int n = numStates();
  std::vector<int> color(static_cast<size_t>(n), 0);  // 0 new, 1 open, 2 done
  std::vector<std::pair<int, Letter>> stack;
  for (int s0 = 0; s0 < n; ++s0) {
    if (!reach[static_cast<size_t>(s0)] || !coacc[static_cast<size_t>(s0)]) continue;
    if (color[static_cast<size_t>(s0)] != 0) continue;
    stack.push_back({s0, 0});
    color[static_cast<size_t>(s0)] = 1;
    while (!stack.empty()) {
      auto& [s, l] = stack.back();
      if (l == alphabet_) {
        color[static_cast<size_t>(s)] = 2;
        stack.pop_back();
        continue;
      }
      int t = next(s, l++);
      if (!reach[static_cast<size_t>(t)] || !coacc[static_cast<size_t>(t)]) continue;
      if (color[static_cast<size_t>(t)] == 1) return false;
      if (color[static_cast<size_t>(t)] == 0) {
        color[static_cast<size_t>(t)] = 1;
        stack.push_back({t, 0});
      }
    }
  }
  return true;
}

std::optional<Letters> Dfa::shortestAccepted() const {
  std::vector<bool> seen(static_cast<size_t>(numStates()), false);
  std::deque<std::pair<int, Letters>> todo{{start_, {}}};
  seen[static_cast<size_t>(start_)] = true;
  while (!todo.empty()) {
    auto [s, w] = todo.front();
    todo.pop_front();
    if (accepting(s)) return w;
    for (Letter l = 0; l < alphabet_; ++l) {
      int t = next(s, l);
      if (!seen[static_cast<size_t>(t)]) {
        seen[static_cast<size_t>(t)] = true;
        Letters w2 = w;
        w2.push_back(l);
        todo.push_back({t, std::move(w2)});
      }
    }
  }
  return std::nullopt;
}

std::vector<Letters> Dfa::enumerate(int max_len, size_t cap) const {
  auto coacc = coaccessibleStates();
  std::vector<Letters> out;
  std::deque<std::pair<int, Letters>> layer{{start_, {}}};
  if (!coacc[static_cast<size_t>(start_)]) return out;
  for (int len = 0; len <= max_len; ++len) {
    std::deque<std::pair<int, Letters>> nxt;
    for (auto& [s, w] : layer) {
      if (accepting(s)) {
        out.push_back(w);
        if (out.size() > cap)
          throw Error(ErrorCode::ResourceLimit, "enumeration exceeded element cap");
      }
      if (len == max_len) continue;
      for (Letter l = 0; l < alphabet_; ++l) {
        int t = next(s, l);
        if (!coacc[static_cast<size_t>(t)]) continue;
        Letters w2 = w;
        w2.push_back(l);
        nxt.push_back({t, std::move(w2)});
        if (nxt.size() > cap)
          throw Error(ErrorCode::ResourceLimit, "enumeration frontier exceeded cap");
      }
    }
    layer = std::move(nxt);
  }
  return out;
}

std::vector<Letters> Dfa::firstWords(size_t count, size_t cap) const {
  auto coacc = coaccessibleStates();
  std::vector<Letters> out;
  if (!coacc[static_cast<size_t>(start_)]) return out;
  std::deque<std::pair<int, Letters>> layer{{start_, {}}};
  while (!layer.empty() && out.size() < count) {
    std::deque<std::pair<int, Letters>> nxt;
    for (auto& [s, w] : layer) {
      if (accepting(s)) {
        out.push_back(w);
        if (out.size() >= count) break;
      }
      for (Letter l = 0; l < alphabet_; ++l) {
        int t = next(s, l);
        if (!coacc[static_cast<size_t>(t)]) continue;
        Letters w2 = w;
        w2.push_back(l);
        nxt.push_back({t, std::move(w2)});
        if (nxt.size() > cap)
          throw Error(ErrorCode::ResourceLimit, "word search frontier exceeded cap");
      }
    }
    layer = std::move(nxt);
  }
  return out;
}

bool Dfa::includes(const Dfa& other) const {
  return product(other, *this, BoolOp::Diff).isEmpty();
}

bool Dfa::sameLanguage(const Dfa& other) const {
  return minimized() == other.minimized();
}

bool Dfa::operator==(const Dfa& other) const {
  return alphabet_ == other.alphabet_ && start_ == other.start_ &&
         trans_ == other.trans_ && accept_ == other.accept_;
}

std::string Dfa::structuralKey() const {
  std::string key;
  key.reserve(trans_.size() * 2 + accept_.size() + 8);
  auto put = [&key](int v) {
    key.push_back(static_cast<char>(v & 0xff));
    key.push_back(static_cast<char>((v >> 8) & 0xff));
  };
  put(alphabet_);
  put(numStates());
  put(start_);
  for (int t : trans_) put(t);
  for (bool b : accept_) key.push_back(b ? '1' : '0');
  return key;
}

uint64_t Dfa::fingerprint() const {
  uint64_t h = 1469598103934665603ull;
  for (char c : structuralKey()) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

int Nfa::addState(bool accepting) {
  int id = numStates();
  accept_.push_back(accepting);
  edges_.emplace_back();
  eps_.emplace_back();
  return id;
}

void Nfa::addEdge(int from, Letter a, int to) {
  edges_[static_cast<size_t>(from)][a].insert(to);
}

void Nfa::addEps(int from, int to) { eps_[static_cast<size_t>(from)].insert(to); }

Dfa Nfa::determinized(size_t state_cap) const {
  auto closure = [this](std::set<int> s) {
    std::deque<int> todo(s.begin(), s.end());
    while (!todo.empty()) {
      int v = todo.front();
      todo.pop_front();
      for (int w : eps_[static_cast<size_t>(v)])
        if (s.insert(w).second) todo.push_back(w);
    }
    return s;
  };
  Dfa out(alphabet_, 0);
  int dead = -1;
  std::map<std::set<int>, int> ids;
  std::deque<std::set<int>> todo;
  auto intern = [&](std::set<int> s) {
    s = closure(std::move(s));
    auto it = ids.find(s);
    if (it != ids.end()) return it->second;
    bool acc = false;
    for (int v : s) acc = acc || accept_[static_cast<size_t>(v)];
    int id = out.addState(acc);
    if (ids.size() >= state_cap)
      throw Error(ErrorCode::ResourceLimit, "determinization exceeded state cap");
    ids.emplace(s, id);
    if (s.empty()) dead = id;
    todo.push_back(std::move(s));
    return id;
  };
  out.setStart(intern({start_}));
  (void)dead;
  while (!todo.empty()) {
    std::set<int> s = todo.front();
    todo.pop_front();
    int from = ids[s];
    for (Letter l = 0; l < alphabet_; ++l) {
      std::set<int> t;
      for (int v : s) {
        auto it = edges_[static_cast<size_t>(v)].find(l);
        if (it != edges_[static_cast<size_t>(v)].end())
          t.insert(it->second.begin(), it->second.end());
      }
      out.setNext(from, l, intern(std::move(t)));
    }
  }
  return out;
}

}  // namespace dualcube
