// Copyright (c) 2026 The dualcube authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dualcube/dfa.hpp"
#include "dualcube/group.hpp"
#include "dualcube/subgroup.hpp"
#include "dualcube/verdict.hpp"

#include "json.hpp"

namespace dualcube {

// Regular subset of a group: a canonical minimized acceptor over the
// generator alphabet whose language is a set of normal forms. Set
// equality is structural equality of the canonical acceptor.
class RegSet {
 public:
  static RegSet fromDfa(GroupPtr ambient, const Dfa& raw);
  static RegSet emptySet(GroupPtr ambient);
  static RegSet universe(GroupPtr ambient);
  static RegSet singleton(GroupPtr ambient, const Word& w);

  const GroupPtr& ambient() const { return ambient_; }
  const Dfa& dfa() const { return dfa_; }

  bool contains(const Word& w) const;  // w need not be canonical
  bool isEmpty() const;
  bool isFiniteSet() const;
  bool sameSet(const RegSet& o) const;
  bool includes(const RegSet& o) const;  // o subseteq this

  RegSet unionWith(const RegSet& o) const;
  RegSet intersectWith(const RegSet& o) const;
  RegSet differenceWith(const RegSet& o) const;
  RegSet symmetricDifference(const RegSet& o) const;
  RegSet complemented() const;  // relative to the normal-form universe

  RegSet leftTranslate(const Word& g) const;   // { g a : a in A }
  RegSet rightTranslate(const Word& g) const;  // { a g : a in A }

  std::optional<Word> someElement() const;
  std::vector<Word> elements(int max_len, size_t cap) const;
  std::vector<Word> firstElements(size_t count) const;

  std::string key() const { return dfa_.structuralKey(); }
  uint64_t fingerprint() const { return dfa_.fingerprint(); }

  nlohmann::json toJson() const;
  static RegSet fromJson(GroupPtr ambient, const nlohmann::json& j);

 private:
  RegSet(GroupPtr ambient, Dfa canonical) : ambient_(std::move(ambient)), dfa_(std::move(canonical)) {}
  void checkSameAmbient(const RegSet& o) const;

  GroupPtr ambient_;
  Dfa dfa_;
};

// ---------------------------------------------------------------------
// Almost-invariant-set calculus relative to a subgroup H.

// Certificate for H-finiteness: A subseteq H F with F finite.
struct HFiniteCertificate {
  std::vector<Word> f;
  // Independent re-check: the inclusion A subseteq union of H f holds as
  // a regular-language inclusion (needs a regular H-language).
  bool verify(const RegSet& a, const SubgroupRep& h) const;
  nlohmann::json toJson(const GroupSpec& g) const;
};

Verdict isHFinite(const RegSet& a, const SubgroupRep& h);
Verdict isHProper(const RegSet& a, const SubgroupRep& h);

enum class InvarianceSide { Left, Right, Both };
Verdict invarianceCheck(const RegSet& a, const SubgroupRep& h, InvarianceSide side);

// Checks A + As for every generator letter s; Yes carries one
// H-finiteness certificate per letter.
Verdict isAlmostInvariant(const RegSet& a, const SubgroupRep& h);

}  // namespace dualcube
