// Copyright (c) 2026 The dualcube authors
// SPDX-License-Identifier: Apache-2.0

#include "dualcube/group.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "dualcube/errors.hpp"
#include "dualcube/models.hpp"

namespace dualcube {

bool shortlexLess(const Letters& a, const Letters& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::optional<Letter> GroupSpec::letterByName(char c) const {
  for (size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == c) return static_cast<Letter>(i);
  return std::nullopt;
}

Word GroupSpec::parseWord(const std::string& text) const {
  Letters out;
  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '*' || c == '.') {
      ++i;
      continue;
    }
    if (c == '1' && out.empty() && text.find_first_not_of("1 \t", i) == std::string::npos) break;
    auto l = letterByName(c);
    if (!l)
      throw Error(ErrorCode::UnknownLetter,
                  std::string("unknown letter '") + c + "' in word \"" + text + "\"");
    ++i;
    long long pow = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      bool neg = false;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) neg = text[i++] == '-';
      long long val = 0;
      if (i >= text.size() || !isdigit(static_cast<unsigned char>(text[i])))
        throw Error(ErrorCode::ParseError, "expected exponent digits in \"" + text + "\"");
      while (i < text.size() && isdigit(static_cast<unsigned char>(text[i])))
        val = val * 10 + (text[i++] - '0');
      pow = neg ? -val : val;
    }
    Letter use = *l;
    if (pow < 0) {
      use = inverseLetter(use);
      pow = -pow;
    }
    for (long long k = 0; k < pow; ++k) out.push_back(use);
  }
  return Word{std::move(out), false};
}

std::string GroupSpec::formatWord(const Word& w) const {
  if (w.ls.empty()) return "1";
  std::string s;
  for (Letter l : w.ls) s.push_back(letterName(l));
  return s;
}

Letters GroupSpec::rewriteToNormal(Letters w) const {
  size_t max_lhs = 1;
  for (const auto& r : rules_) max_lhs = std::max(max_lhs, r.lhs.size());
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t pos = 0; pos < w.size() && !changed; ++pos) {
      for (const auto& r : rules_) {
        if (pos + r.lhs.size() > w.size()) continue;
        if (!std::equal(r.lhs.begin(), r.lhs.end(), w.begin() + static_cast<long long>(pos)))
          continue;
        Letters nw;
        nw.reserve(w.size() - r.lhs.size() + r.rhs.size());
        nw.insert(nw.end(), w.begin(), w.begin() + static_cast<long long>(pos));
        nw.insert(nw.end(), r.rhs.begin(), r.rhs.end());
        nw.insert(nw.end(), w.begin() + static_cast<long long>(pos + r.lhs.size()), w.end());
        w = std::move(nw);
        changed = true;
        break;
      }
    }
  }
  return w;
}

Word GroupSpec::normalize(const Word& w) const {
  for (Letter l : w.ls)
    if (l < 0 || l >= alphabetSize())
      throw Error(ErrorCode::UnknownLetter, "letter outside alphabet");
  if (w.canonical) return w;
  return Word{rewriteToNormal(w.ls), true};
}

Word GroupSpec::multiply(const Word& u, const Word& v) const {
  Letters cat = u.ls;
  cat.insert(cat.end(), v.ls.begin(), v.ls.end());
  return normalize(Word{std::move(cat), false});
}

Word GroupSpec::inverse(const Word& u) const {
  Letters inv;
  inv.reserve(u.ls.size());
  for (auto it = u.ls.rbegin(); it != u.ls.rend(); ++it) inv.push_back(inverseLetter(*it));
  return normalize(Word{std::move(inv), false});
}

std::vector<Word> GroupSpec::ball(int radius) const {
  // Rules never lengthen words, so |normal form| is the word length and
  // the ball is the set of normal forms of length <= radius.
  auto words = nf_.enumerate(radius, static_cast<size_t>(element_cap_));
  std::vector<Word> out;
  out.reserve(words.size());
  for (auto& ls : words) out.push_back(Word{std::move(ls), true});
  return out;
}

bool GroupSpec::inBall(const Word& w, int radius) const {
  return static_cast<int>(w.ls.size()) <= radius;
}

void GroupSpec::checkRulesReduce() const {
  for (const auto& r : rules_) {
    if (r.lhs.empty()) throw Error(ErrorCode::BadRules, "empty rule lhs");
    if (r.rhs.size() < r.lhs.size()) continue;
    if (r.rhs.size() == r.lhs.size() &&
        std::lexicographical_compare(r.rhs.begin(), r.rhs.end(), r.lhs.begin(), r.lhs.end()))
      continue;
    throw Error(ErrorCode::BadRules, "rule does not reduce in shortlex order");
  }
}

void GroupSpec::checkLocalConfluence() const {
  auto joinable = [this](const Letters& a, const Letters& b) {
    return rewriteToNormal(a) == rewriteToNormal(b);
  };
  for (const auto& r1 : rules_) {
    for (const auto& r2 : rules_) {
      // overlaps: proper suffix of r1.lhs equals proper prefix of r2.lhs
      for (size_t k = 1; k < r1.lhs.size() && k <= r2.lhs.size(); ++k) {
        if (!std::equal(r2.lhs.begin(), r2.lhs.begin() + static_cast<long long>(k),
                        r1.lhs.end() - static_cast<long long>(k)))
          continue;
        // w = r1.lhs + r2.lhs[k:]
        Letters w = r1.lhs;
        w.insert(w.end(), r2.lhs.begin() + static_cast<long long>(k), r2.lhs.end());
        Letters via1 = r1.rhs;
        via1.insert(via1.end(), r2.lhs.begin() + static_cast<long long>(k), r2.lhs.end());
        Letters via2(r1.lhs.begin(), r1.lhs.end() - static_cast<long long>(k));
        via2.insert(via2.end(), r2.rhs.begin(), r2.rhs.end());
        if (!joinable(via1, via2))
          throw Error(ErrorCode::NotConfluent, "critical pair does not resolve");
      }
      // inclusion: r2.lhs inside r1.lhs
      if (&r1 == &r2) continue;
      if (r2.lhs.size() >= r1.lhs.size()) continue;
      for (size_t pos = 0; pos + r2.lhs.size() <= r1.lhs.size(); ++pos) {
        if (!std::equal(r2.lhs.begin(), r2.lhs.end(),
                        r1.lhs.begin() + static_cast<long long>(pos)))
          continue;
        Letters via2(r1.lhs.begin(), r1.lhs.begin() + static_cast<long long>(pos));
        via2.insert(via2.end(), r2.rhs.begin(), r2.rhs.end());
        via2.insert(via2.end(), r1.lhs.begin() + static_cast<long long>(pos + r2.lhs.size()),
                    r1.lhs.end());
        if (!joinable(r1.rhs, via2))
          throw Error(ErrorCode::NotConfluent, "inclusion critical pair does not resolve");
      }
    }
  }
}

Dfa GroupSpec::buildNfAcceptor() const {
  // Words avoiding every rule lhs as a factor, via the Aho-Corasick
  // prefix automaton of the lhs set.
  std::vector<Letters> pats;
  for (const auto& r : rules_) pats.push_back(r.lhs);
  // trie
  std::vector<std::map<Letter, int>> kids(1);
  std::vector<bool> terminal(1, false);
  for (const auto& p : pats) {
    int v = 0;
    for (Letter l : p) {
      auto it = kids[static_cast<size_t>(v)].find(l);
      if (it == kids[static_cast<size_t>(v)].end()) {
        kids.emplace_back();
        terminal.push_back(false);
        it = kids[static_cast<size_t>(v)].emplace(l, static_cast<int>(kids.size()) - 1).first;
      }
      v = it->second;
    }
    terminal[static_cast<size_t>(v)] = true;
  }
  // BFS fail links
  std::vector<int> fail(kids.size(), 0);
  std::deque<int> order;
  for (auto [l, u] : kids[0]) order.push_back(u);
  std::deque<int> bfs = order;
  while (!bfs.empty()) {
    int v = bfs.front();
    bfs.pop_front();
    for (auto [l, u] : kids[static_cast<size_t>(v)]) {
      int f = fail[static_cast<size_t>(v)];
      while (f != 0 && !kids[static_cast<size_t>(f)].count(l)) f = fail[static_cast<size_t>(f)];
      auto it = kids[static_cast<size_t>(f)].find(l);
      fail[static_cast<size_t>(u)] = (it != kids[static_cast<size_t>(f)].end() && it->second != u)
                                         ? it->second
                                         : 0;
      terminal[static_cast<size_t>(u)] =
          terminal[static_cast<size_t>(u)] || terminal[static_cast<size_t>(fail[static_cast<size_t>(u)])];
      bfs.push_back(u);
    }
  }
  int n = static_cast<int>(kids.size());
  Dfa dfa(alphabetSize(), n + 1);
  int dead = n;
  dfa.setStart(0);
  for (int v = 0; v < n; ++v) dfa.setAccepting(v, !terminal[static_cast<size_t>(v)]);
  dfa.setAccepting(dead, false);
  for (Letter l = 0; l < alphabetSize(); ++l) dfa.setNext(dead, l, dead);
  for (int v = 0; v < n; ++v) {
    for (Letter l = 0; l < alphabetSize(); ++l) {
      int f = v;
      int target = -1;
      while (true) {
        auto it = kids[static_cast<size_t>(f)].find(l);
        if (it != kids[static_cast<size_t>(f)].end()) {
          target = it->second;
          break;
        }
        if (f == 0) break;
        f = fail[static_cast<size_t>(f)];
      }
      if (target == -1) target = 0;
      if (terminal[static_cast<size_t>(v)] || terminal[static_cast<size_t>(target)])
        dfa.setNext(v, l, dead);
      else
        dfa.setNext(v, l, target);
    }
  }
  return dfa.minimized();
}

GroupPtr GroupSpec::build(std::vector<char> names, std::vector<Letter> inverse,
                          std::vector<RewriteRule> rules, std::string preset,
                          std::shared_ptr<const FreeModel> fm,
                          std::shared_ptr<const VaModel> vm) {
  auto g = std::shared_ptr<GroupSpec>(new GroupSpec());
  g->names_ = std::move(names);
  g->inverse_ = std::move(inverse);
  g->rules_ = std::move(rules);
  g->preset_ = std::move(preset);
  g->free_ = std::move(fm);
  g->va_ = std::move(vm);
  for (size_t i = 0; i < g->names_.size(); ++i) {
    Letter inv = g->inverse_[i];
    if (inv < 0 || inv >= g->alphabetSize() ||
        g->inverse_[static_cast<size_t>(inv)] != static_cast<Letter>(i))
      throw Error(ErrorCode::BadRules, "alphabet inverses are not an involution");
  }
  g->checkRulesReduce();
  g->checkLocalConfluence();
  g->nf_ = g->buildNfAcceptor();
  return g;
}

namespace {

struct AlphabetBuilder {
  std::vector<char> names;
  std::vector<Letter> inverse;
  // adds generator c with inverse toupper(c); returns letter of c
  Letter addPair(char c) {
    Letter l = static_cast<Letter>(names.size());
    names.push_back(c);
    names.push_back(static_cast<char>(toupper(static_cast<unsigned char>(c))));
    inverse.push_back(l + 1);
    inverse.push_back(l);
    return l;
  }
};

void addCancellation(std::vector<RewriteRule>& rules, Letter a, Letter inv_a) {
  rules.push_back({{a, inv_a}, {}});
  rules.push_back({{inv_a, a}, {}});
}

// commutation rules putting block i before block j (i < j), all signs
void addCommutation(std::vector<RewriteRule>& rules, Letter xi, Letter xj) {
  for (Letter a : {xj, static_cast<Letter>(xj + 1)})
    for (Letter b : {xi, static_cast<Letter>(xi + 1)})
      rules.push_back({{a, b}, {b, a}});
}

const char* kAbelianNames = "xyzwvut";

}  // namespace

GroupPtr GroupSpec::freeGroup(int rank) {
  if (rank < 1 || rank > 8) throw Error(ErrorCode::BadRules, "free rank must be in 1..8");
  AlphabetBuilder ab;
  std::vector<RewriteRule> rules;
  for (int i = 0; i < rank; ++i) {
    Letter l = ab.addPair(static_cast<char>('a' + i));
    addCancellation(rules, l, l + 1);
  }
  auto fm = std::make_shared<FreeModel>();
  fm->rank = rank;
  return build(std::move(ab.names), std::move(ab.inverse), std::move(rules),
               "free(" + std::to_string(rank) + ")", std::move(fm), nullptr);
}

namespace {

std::shared_ptr<VaModel> abelianCore(int rank) {
  auto vm = std::make_shared<VaModel>();
  vm->rank = rank;
  vm->fsize = 1;
  vm->fmult = {{0}};
  vm->finv = {0};
  vm->permOf = {std::vector<int>(static_cast<size_t>(rank))};
  vm->signOf = {std::vector<int>(static_cast<size_t>(rank), 1)};
  for (int i = 0; i < rank; ++i) vm->permOf[0][static_cast<size_t>(i)] = i;
  vm->fWord = {Letters{}};
  return vm;
}

}  // namespace

GroupPtr GroupSpec::freeAbelian(int rank) {
  if (rank < 1 || rank > 7) throw Error(ErrorCode::BadRules, "free abelian rank must be in 1..7");
  AlphabetBuilder ab;
  std::vector<RewriteRule> rules;
  std::vector<Letter> blocks;
  for (int i = 0; i < rank; ++i) {
    Letter l = ab.addPair(kAbelianNames[i]);
    blocks.push_back(l);
    addCancellation(rules, l, l + 1);
  }
  for (int i = 0; i < rank; ++i)
    for (int j = i + 1; j < rank; ++j)
      addCommutation(rules, blocks[static_cast<size_t>(i)], blocks[static_cast<size_t>(j)]);
  auto vm = abelianCore(rank);
  return build(std::move(ab.names), std::move(ab.inverse), std::move(rules),
               "free_abelian(" + std::to_string(rank) + ")", nullptr, std::move(vm));
}

GroupPtr GroupSpec::p4() {
  // <x, y, r | [x,y], r^4, rxr^-1 = y, ryr^-1 = x^-1>
  AlphabetBuilder ab;
  Letter x = ab.addPair('x');
  Letter y = ab.addPair('y');
  Letter r = ab.addPair('r');
  Letter X = x + 1, Y = y + 1, R = r + 1;
  std::vector<RewriteRule> rules;
  addCancellation(rules, x, X);
  addCancellation(rules, y, Y);
  addCancellation(rules, r, R);
  addCommutation(rules, x, y);
  // conjugation: push r-letters right; r a r^-1 = phi(a)
  rules.push_back({{r, x}, {y, r}});
  rules.push_back({{r, X}, {Y, r}});
  rules.push_back({{r, y}, {X, r}});
  rules.push_back({{r, Y}, {x, r}});
  rules.push_back({{R, x}, {Y, R}});
  rules.push_back({{R, X}, {y, R}});
  rules.push_back({{R, y}, {x, R}});
  rules.push_back({{R, Y}, {X, R}});
  // r-block normal forms: eps, r, rr, R
  rules.push_back({{r, r, r}, {R}});
  rules.push_back({{R, R}, {r, r}});
  auto vm = std::make_shared<VaModel>();
  vm->rank = 2;
  vm->fsize = 4;
  vm->fmult.assign(4, std::vector<int>(4));
  vm->finv.assign(4, 0);
  for (int a = 0; a < 4; ++a) {
    vm->finv[static_cast<size_t>(a)] = (4 - a) % 4;
    for (int b = 0; b < 4; ++b) vm->fmult[static_cast<size_t>(a)][static_cast<size_t>(b)] = (a + b) % 4;
  }
  // M_r: e1 -> e2, e2 -> -e1 (rotation by 90 degrees)
  vm->permOf.assign(4, std::vector<int>(2));
  vm->signOf.assign(4, std::vector<int>(2));
  int perm[2] = {0, 1}, sign[2] = {1, 1};
  for (int k = 0; k < 4; ++k) {
    vm->permOf[static_cast<size_t>(k)] = {perm[0], perm[1]};
    vm->signOf[static_cast<size_t>(k)] = {sign[0], sign[1]};
    // compose with M_r on the left: e_i -> sign[i] e_{perm[i]} -> ...
    int nperm[2], nsign[2];
    for (int i = 0; i < 2; ++i) {
      // M_r(e_{perm[i]}): e1->e2 (+), e2->e1 (-)
      int p = perm[i] == 0 ? 1 : 0;
      int s = perm[i] == 0 ? 1 : -1;
      nperm[i] = p;
      nsign[i] = sign[i] * s;
    }
    perm[0] = nperm[0];
    perm[1] = nperm[1];
    sign[0] = nsign[0];
    sign[1] = nsign[1];
  }
  vm->tLetterValue = {1, 3};  // r, R
  vm->fWord = {Letters{}, Letters{r}, Letters{r, r}, Letters{R}};
  return build(std::move(ab.names), std::move(ab.inverse), std::move(rules), "p4", nullptr,
               std::move(vm));
}

GroupPtr GroupSpec::pmSwap() {
  // <x, y, s | [x,y], s^2, sxs^-1 = y>
  AlphabetBuilder ab;
  Letter x = ab.addPair('x');
  Letter y = ab.addPair('y');
  Letter s = ab.addPair('s');
  Letter X = x + 1, Y = y + 1, S = s + 1;
  std::vector<RewriteRule> rules;
  addCancellation(rules, x, X);
  addCancellation(rules, y, Y);
  addCommutation(rules, x, y);
  rules.push_back({{S}, {s}});
  rules.push_back({{s, s}, {}});
  rules.push_back({{s, x}, {y, s}});
  rules.push_back({{s, X}, {Y, s}});
  rules.push_back({{s, y}, {x, s}});
  rules.push_back({{s, Y}, {X, s}});
  auto vm = std::make_shared<VaModel>();
  vm->rank = 2;
  vm->fsize = 2;
  vm->fmult = {{0, 1}, {1, 0}};
  vm->finv = {0, 1};
  vm->permOf = {{0, 1}, {1, 0}};
  vm->signOf = {{1, 1}, {1, 1}};
  vm->tLetterValue = {1, 1};  // s, S
  vm->fWord = {Letters{}, Letters{s}};
  return build(std::move(ab.names), std::move(ab.inverse), std::move(rules), "pm_swap", nullptr,
               std::move(vm));
}

GroupPtr GroupSpec::fromPresetName(const std::string& name) {
  if (name == "p4") return p4();
  if (name == "pm_swap") return pmSwap();
  auto paren = name.find('(');
  if (paren != std::string::npos && name.back() == ')') {
    std::string head = name.substr(0, paren);
    int arg = 0;
    try {
      arg = std::stoi(name.substr(paren + 1, name.size() - paren - 2));
    } catch (...) {
      throw Error(ErrorCode::ParseError, "bad preset argument in " + name);
    }
    if (head == "free") return freeGroup(arg);
    if (head == "free_abelian") return freeAbelian(arg);
  }
  throw Error(ErrorCode::ParseError, "unknown group preset: " + name);
}

GroupPtr GroupSpec::fromRules(const std::vector<char>& gens,
                              const std::vector<std::pair<std::string, std::string>>& rules_raw) {
  AlphabetBuilder ab;
  for (char c : gens) {
    if (!islower(static_cast<unsigned char>(c)))
      throw Error(ErrorCode::BadRules, "generators must be lowercase letters");
    ab.addPair(c);
  }
  // temporary spec to parse rule words
  auto tmp = std::shared_ptr<GroupSpec>(new GroupSpec());
  tmp->names_ = ab.names;
  tmp->inverse_ = ab.inverse;
  std::vector<RewriteRule> rules;
  for (size_t i = 0; i < ab.names.size(); i += 2)
    addCancellation(rules, static_cast<Letter>(i), static_cast<Letter>(i + 1));
  for (const auto& [lhs, rhs] : rules_raw)
    rules.push_back({tmp->parseWord(lhs).ls, tmp->parseWord(rhs).ls});
  return build(std::move(ab.names), std::move(ab.inverse), std::move(rules), "custom", nullptr,
               nullptr);
}

bool GroupSpec::sameSpec(const GroupSpec& o) const {
  if (this == &o) return true;
  if (names_ != o.names_ || inverse_ != o.inverse_) return false;
  if (rules_.size() != o.rules_.size()) return false;
  for (size_t i = 0; i < rules_.size(); ++i)
    if (rules_[i].lhs != o.rules_[i].lhs || rules_[i].rhs != o.rules_[i].rhs) return false;
  return true;
}

}  // namespace dualcube
