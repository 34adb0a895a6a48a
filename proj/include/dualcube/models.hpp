// Copyright (c) 2026 The dualcube authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dualcube/dfa.hpp"
#include "dualcube/group.hpp"
#include "dualcube/zmath.hpp"

namespace dualcube {

// ---------------------------------------------------------------------
// Free-group backend. Letters 2i / 2i+1 are generator i and its inverse;
// normal forms are freely reduced words.

// Folded subgroup graph with basepoint. Edges are stored one direction
// per letter; reading letter l from v follows edge(v, l).
class StallingsCore {
 public:
  StallingsCore(int rank, const std::vector<Letters>& generator_words);

  int rank() const { return rank_; }
  int numVertices() const { return static_cast<int>(edges_.size()); }
  int basepoint() const { return base_; }
  int edge(int v, Letter l) const { return edges_[static_cast<size_t>(v)][static_cast<size_t>(l)]; }
  int degree(int v) const;

  bool isTrivial() const;  // no edges at all
  bool contains(const Letters& reduced) const;

  // Trace from the basepoint; nullopt once an edge is missing.
  std::optional<int> trace(const Letters& reduced) const;

  // DFA over reduced words accepting exactly the subgroup's normal forms
  // (complete automaton; caller intersects with the ambient NF language).
  Dfa languageDfa(int alphabet_size) const;

  // Free basis of the subgroup from a spanning tree (deterministic).
  std::vector<Letters> freeBasis() const;

  // Rewrite a member word in the free basis returned by freeBasis();
  // letters 2i/2i+1 of the result index that basis. nullopt if not a
  // member.
  std::optional<Letters> expressInBasis(const Letters& reduced) const;

  // Deterministic serialization (BFS canonical numbering).
  std::string canonicalKey() const;

  static StallingsCore pullback(const StallingsCore& a, const StallingsCore& b);

 private:
  StallingsCore(int rank) : rank_(rank) {}
  void fold();
  void trim();
  void canonicalize();

  int rank_;
  int base_ = 0;
  std::vector<std::vector<int>> edges_;  // [vertex][letter] -> vertex or -1
};

struct FreeModel {
  int rank;

  Letter inv(Letter l) const { return l ^ 1; }
  Letters reduceWord(Letters w) const;  // free reduction
  // Exact images of regular sets of reduced words under one-letter
  // multiplication. `lang` must be a language of reduced words.
  Dfa leftMultLetter(Letter s, const Dfa& lang, const Dfa& nf) const;
  Dfa rightMultLetter(const Dfa& lang, Letter s, const Dfa& nf) const;
};

// ---------------------------------------------------------------------
// Virtually abelian backend: elements are (v, f) with v in Z^rank and f
// in a finite group acting by signed permutation matrices. Normal forms
// are x1-block ... xrank-block t-block.

struct VaElem {
  std::vector<int64_t> v;
  int f = 0;
  bool operator==(const VaElem& o) const { return v == o.v && f == o.f; }
  bool operator<(const VaElem& o) const { return v != o.v ? v < o.v : f < o.f; }
};

struct VaModel {
  int rank = 0;
  int fsize = 1;
  std::vector<std::vector<int>> fmult;  // fsize x fsize
  std::vector<int> finv;
  // M_f e_i = signOf[f][i] * e_{permOf[f][i]}
  std::vector<std::vector<int>> permOf;
  std::vector<std::vector<int>> signOf;
  // t-letters start at letter 2*rank; value in F per t-letter index
  std::vector<int> tLetterValue;
  // canonical normal-form word (t-letters only) per F element
  std::vector<Letters> fWord;

  int mulF(int a, int b) const { return fmult[static_cast<size_t>(a)][static_cast<size_t>(b)]; }
  int invF(int a) const { return finv[static_cast<size_t>(a)]; }
  std::vector<int64_t> applyF(int f, const std::vector<int64_t>& v) const;

  VaElem identityElem() const { return {std::vector<int64_t>(static_cast<size_t>(rank), 0), 0}; }
  VaElem mul(const VaElem& a, const VaElem& b) const;
  VaElem inverse(const VaElem& a) const;
  VaElem elemOfWord(const Letters& w) const;
  Letters wordOfElem(const VaElem& e) const;

  // --- regular-set machinery ------------------------------------------
  // A regular set of normal forms decomposes into finitely many pieces
  // (product of per-block Z-sets, fixed finite part).
  struct Piece {
    std::vector<ZSet> blocks;
    int f = 0;
  };
  std::vector<Piece> decompose(const Dfa& lang) const;
  Dfa assemble(const std::vector<Piece>& pieces, const Dfa& nf) const;
  Dfa leftMultLetter(Letter s, const Dfa& lang, const Dfa& nf) const;
  Dfa rightMultLetter(const Dfa& lang, Letter s, const Dfa& nf) const;
};

// Finitely generated subgroup of a virtually abelian preset: the finite
// quotient part F0, coset representatives, and the lattice H cap Z^rank.
class VaSubgroup {
 public:
  VaSubgroup(const VaModel& model, const std::vector<VaElem>& gens);

  const std::vector<int>& f0() const { return f0_; }
  const Lattice& lattice() const { return lat_; }
  const VaElem& rep(int f) const;

  bool contains(const VaElem& e) const;
  bool isTrivial() const;
  bool isFinite() const;
  VaSubgroup conjugated(const VaModel& model, const VaElem& g) const;
  VaSubgroup intersect(const VaModel& model, const VaSubgroup& other) const;
  // [this : sub] for sub <= this; nullopt when infinite.
  std::optional<int64_t> indexOver(const VaModel& model, const VaSubgroup& sub) const;

  // Normal-form language when it is regular (per-stratum residue or axis
  // decomposition); nullopt otherwise.
  std::optional<std::vector<VaModel::Piece>> languagePieces(const VaModel& model) const;

  std::string canonicalKey(const VaModel& model) const;

 private:
  std::vector<VaElem> gens_;
  std::vector<int> f0_;             // sorted
  std::map<int, VaElem> reps_;      // f -> representative with that part
  Lattice lat_;
};

}  // namespace dualcube
