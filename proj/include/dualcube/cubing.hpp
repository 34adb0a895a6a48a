// Copyright (c) 2026 The dualcube authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dualcube/regset.hpp"
#include "dualcube/subgroup.hpp"

namespace dualcube {

// The (G, H, A) input with its validation state. Building the dual
// complex requires Yes on properness, almost-invariance and HA=A; the
// corner/descent machinery additionally needs AH=A.
struct Validation {
  Verdict proper;
  Verdict almost_invariant;
  Verdict left_invariant;   // HA = A
  Verdict right_invariant;  // AH = A

  bool cubeReady() const {
    return proper.isYes() && almost_invariant.isYes() && left_invariant.isYes();
  }
  bool descentReady() const { return cubeReady() && right_invariant.isYes(); }
  nlohmann::json toJson() const;
};

struct Triple {
  GroupPtr group;
  SubgroupRep h;
  RegSet a;
  std::optional<Validation> validation;

  const Validation& requireValidated() const;
};

Validation validateTriple(const SubgroupRep& h, const RegSet& a);

// ---------------------------------------------------------------------
// Truncated halfspace system: all distinct translates gA, gA* for g in
// ball(R), stored as complementary pairs with the positive side the one
// containing the identity.
class SigmaView {
 public:
  SigmaView(const Triple& t, int radius);

  int radius() const { return radius_; }
  int numPairs() const { return static_cast<int>(pairs_.size()); }
  const RegSet& side(int pair, int s) const;  // s=0 positive, s=1 negative
  const Word& repElement(int pair) const { return pairs_[static_cast<size_t>(pair)].rep; }
  // pair whose positive side came from rep*A; pair 0 is A's own pair
  int pairOfA() const { return pair_of_a_; }

  // oriented halfspace h = 2*pair + side
  bool includesOriented(int h1, int h2) const;  // side(h1) subseteq side(h2)

  enum class Nesting { Nested, Crossing };
  Nesting nesting(int p, int q) const;
  // which of the four corners (s, t) are empty for the pair (p, q)
  std::vector<std::pair<int, int>> emptyCorners(int p, int q) const;

  // largest pairwise-crossing family (exact on the truncation)
  int width(std::vector<int>* witness = nullptr) const;

  // locate the pair of a translated set by canonical key; side reports
  // whether the set equals the positive (0) or negative (1) side
  std::optional<std::pair<int, int>> locate(const RegSet& set) const;

  const Triple& triple() const { return *triple_; }

 private:
  const Triple* triple_;
  int radius_;
  struct Pair {
    RegSet pos;
    RegSet neg;
    Word rep;  // shortlex-least g with {gA, gA*} = this pair
  };
  std::vector<Pair> pairs_;
  int pair_of_a_ = -1;
  std::map<std::string, std::pair<int, int>> by_key_;
  std::vector<std::vector<bool>> incl_;  // oriented inclusion table
};

// Vertex of the truncated dual complex: one side per halfspace pair.
using VertexSides = std::vector<bool>;  // sides[p] == true -> negative side

struct CubeComplexView {
  std::shared_ptr<SigmaView> sigma;
  std::vector<VertexSides> vertices;
  std::vector<int> vertex_rad;            // smallest interval tag that produced it
  std::map<VertexSides, int> vertex_ids;
  std::vector<std::pair<int, int>> principal_of;  // (vertex id, |g|) per ball index
  std::map<std::string, int> principal_by_word;
  std::vector<Word> ball;                 // ball(R), shortlex order

  struct Edge {
    int u, v;   // vertex ids, u < v
    int pair;   // exited halfspace pair
  };
  std::vector<Edge> edges;
  std::vector<std::vector<std::pair<int, int>>> adj;  // vertex -> (neighbor, pair)
  std::vector<std::array<int, 4>> squares;            // vertex ids, cyclic order
  std::vector<std::pair<int, int>> square_pairs;      // the two pairs spanning it
  int dimension = 0;
  std::vector<int> hyperplanes;  // pairs realized by at least one edge

  int margin = 0;  // trust region radius

  int principalVertex(const Word& g) const;  // -1 if outside truncation
  int distance(int u, int v) const;
  // majority vote; vertex id or -1 if absent
  int medianVertex(int u, int v, int w) const;
  bool interior(int v) const { return vertex_rad[static_cast<size_t>(v)] <= margin; }

  std::string toDot(const GroupSpec& g) const;
  nlohmann::json toJson(const GroupSpec& g) const;
  nlohmann::json summary() const;
};

CubeComplexView buildDual(const Triple& t, int radius);

struct IntervalView {
  std::vector<int> vertex_ids;
  int length = 0;                 // |V_x1 \ V_x2| over truncated pairs
  std::vector<int> separating;   // the differing pairs
};

IntervalView interval(const CubeComplexView& x, const Word& x1, const Word& x2);

// Lemma-level check: the g-image of [V_x1, V_x2] equals [V_gx1, V_gx2].
bool equivarianceCheck(const CubeComplexView& x, const Word& g, const Word& x1, const Word& x2);

struct CayleyComplexView {
  const CubeComplexView* complex;
  int radius;  // intervals taken over g in ball(radius - 1)
  struct GenInterval {
    Word g;
    Letter s;
    int u, v;                    // endpoint vertex ids
    std::vector<int> crossed;    // pairs separating g from gs
  };
  std::vector<GenInterval> intervals;
  std::set<int> vertex_ids;

  // distinct intervals crossing the given hyperplane pair
  int panelCrossings(int pair) const;
  nlohmann::json summary() const;
};

CayleyComplexView buildCayleyComplex(const CubeComplexView& x, int radius);

Verdict panellingCompactnessProbe(const Triple& t, int radius);

nlohmann::json hyperplaneStabiliserProbe(const Triple& t, int radius);

Verdict isTree(const Triple& t, const CubeComplexView& x);

}  // namespace dualcube
