// Copyright (c) 2026 The dualcube authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dualcube/cubing.hpp"

namespace dualcube {

// g lies in the splitting obstruction iff all four corners of (A, gA)
// are nonempty, i.e. gA and A are not nested.
Verdict obstructionMembership(const Triple& t, const Word& g);

struct ObstructionSample {
  int radius = 0;
  std::vector<Word> members;
  std::vector<Word> projection_reps;  // distinct left cosets gH met
  nlohmann::json toJson(const GroupSpec& g) const;
};

ObstructionSample obstructionSample(const Triple& t, int radius);

// Consistency of algebraic membership with geometric crossing of (J, gJ)
// in a built complex; returns mismatch words (empty = consistent).
std::vector<Word> obstructionCrossCheck(const Triple& t, const CubeComplexView& x, int radius);

// Growth probe for the projected obstruction over a radius window.
Verdict piFinitenessProbe(const Triple& t, const std::vector<int>& radii);

struct CornerReport {
  Word g;
  bool premises_ok = false;
  std::vector<std::string> violated_clauses;
  // fixed corner order: A&gA, A&gA*, A*&gA, A*&gA*
  std::vector<RegSet> corners;
  std::optional<SubgroupRep> k;  // H cap H^g
  Verdict k_almost_invariance;   // of the lemma corner A&gA
  Verdict corner_k_finite;
  Verdict cocorner_k_finite;
  nlohmann::json toJson(const GroupSpec& g) const;
};

CornerReport corner(const Triple& t, const Word& g);

struct DescentState {
  int index = 1;
  std::vector<Word> x_reps;  // left cosets of the original H
  SubgroupRep h;             // H_j = pointwise stabiliser of X_j
  RegSet a;                  // A_j
  Validation validation;     // H_j-proper, H_j-a.i., H_j A = A, A H = A (original H)
  nlohmann::json toJson(const GroupSpec& g) const;
};

DescentState initialDescentState(const Triple& t);

struct DescentStepResult {
  enum class Kind {
    Advanced,
    PreconditionFailure,  // g stabilises X_j
    DegenerateCorner,     // branch 1 with an empty K-finite side
    NoEligibleCorner,
  };
  Kind kind = Kind::NoEligibleCorner;
  std::optional<DescentState> next;
  nlohmann::json detail;
};

DescentStepResult descentStep(const Triple& t, const DescentState& state, const Word& g,
                              int radius);

struct DescentTrace {
  std::vector<DescentState> states;
  std::string status;  // "obstruction-empty" | "max-steps" | failure kinds
  nlohmann::json detail;
  nlohmann::json toJson(const GroupSpec& g) const;
};

DescentTrace runDescent(const Triple& t, int max_steps, int radius);

struct SearchBounds {
  int max_states = 2;
  long long budget = 200000;  // raw acceptors examined
  uint64_t seed = 1;
  int max_results = 8;
};

std::vector<Triple> searchTriples(GroupPtr g, const SubgroupRep& h, const SearchBounds& bounds,
                                  int radius);

}  // namespace dualcube
