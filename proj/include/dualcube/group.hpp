// Copyright (c) 2026 The dualcube authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dualcube/dfa.hpp"

namespace dualcube {

struct VaModel;
struct FreeModel;

// A group word over the generator alphabet. `canonical` marks words known
// to be in normal form for their GroupSpec.
struct Word {
  Letters ls;
  bool canonical = false;

  bool empty() const { return ls.empty(); }
  size_t size() const { return ls.size(); }
  bool operator==(const Word& o) const { return ls == o.ls; }
  bool operator!=(const Word& o) const { return ls != o.ls; }
};

bool shortlexLess(const Letters& a, const Letters& b);
inline bool shortlexLess(const Word& a, const Word& b) {
  return shortlexLess(a.ls, b.ls);
}

struct RewriteRule {
  Letters lhs;
  Letters rhs;
};

class GroupSpec;
using GroupPtr = std::shared_ptr<const GroupSpec>;

// Group arithmetic through a confluent, shortlex-reducing rewriting
// system with regular normal forms. Immutable after construction.
class GroupSpec {
 public:
  // Presets. Letter order is the shortlex order; each generator is a
  // lowercase letter immediately followed by its uppercase inverse
  // (a < A < b < B < ...).
  static GroupPtr freeGroup(int rank);
  static GroupPtr freeAbelian(int rank);
  static GroupPtr p4();
  static GroupPtr pmSwap();
  static GroupPtr fromPresetName(const std::string& name);

  // User-supplied system: `gens` lists generator names (single chars,
  // lowercase); the alphabet gains uppercase formal inverses. Rules must
  // be length-reducing or shortlex-reducing, with all critical pairs
  // resolving (checked here; no completion is attempted).
  static GroupPtr fromRules(const std::vector<char>& gens,
                            const std::vector<std::pair<std::string, std::string>>& rules);

  int alphabetSize() const { return static_cast<int>(names_.size()); }
  char letterName(Letter l) const { return names_[static_cast<size_t>(l)]; }
  Letter inverseLetter(Letter l) const { return inverse_[static_cast<size_t>(l)]; }
  std::optional<Letter> letterByName(char c) const;
  const std::string& presetName() const { return preset_; }
  const std::vector<RewriteRule>& rules() const { return rules_; }

  Word parseWord(const std::string& text) const;
  std::string formatWord(const Word& w) const;

  Word normalize(const Word& w) const;
  Word multiply(const Word& u, const Word& v) const;
  Word inverse(const Word& u) const;
  Word identity() const { return Word{{}, true}; }

  // Normal forms of all elements of word length <= R, shortlex sorted.
  std::vector<Word> ball(int radius) const;
  bool inBall(const Word& canonical_word, int radius) const;

  // Acceptor of the normal-form language (canonical minimized form).
  const Dfa& nfAcceptor() const { return nf_; }

  long long elementCap() const { return element_cap_; }

  // Element models backing exact set translation and subgroup
  // arithmetic; null for user-supplied rule systems.
  const FreeModel* freeModel() const { return free_.get(); }
  const VaModel* vaModel() const { return va_.get(); }

  bool sameSpec(const GroupSpec& o) const;

 private:
  GroupSpec() = default;
  static GroupPtr build(std::vector<char> names, std::vector<Letter> inverse,
                        std::vector<RewriteRule> rules, std::string preset,
                        std::shared_ptr<const FreeModel> fm,
                        std::shared_ptr<const VaModel> vm);
  void checkRulesReduce() const;
  void checkLocalConfluence() const;
  Letters rewriteToNormal(Letters w) const;
  Dfa buildNfAcceptor() const;

  std::vector<char> names_;
  std::vector<Letter> inverse_;
  std::vector<RewriteRule> rules_;
  std::string preset_;
  Dfa nf_;
  long long element_cap_ = 1000000;
  std::shared_ptr<const FreeModel> free_;
  std::shared_ptr<const VaModel> va_;
};

}  // namespace dualcube
