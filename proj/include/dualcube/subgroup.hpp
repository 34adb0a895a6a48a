// Copyright (c) 2026 The dualcube authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dualcube/group.hpp"
#include "dualcube/models.hpp"
#include "dualcube/verdict.hpp"

namespace dualcube {

class RegSet;

// Finitely generated subgroup of a preset group. Exact backends exist
// for free ambients (folded core) and the virtually abelian presets
// (lattice plus finite part); other rule systems fall back to bounded
// search and three-valued answers.
class SubgroupRep {
 public:
  enum class Mode { Exact, Bounded };

  SubgroupRep(GroupPtr ambient, std::vector<Word> generators);

  const GroupPtr& ambient() const { return ambient_; }
  const std::vector<Word>& generators() const { return gens_; }
  Mode mode() const { return mode_; }

  Verdict membership(const Word& g) const;
  bool memberExact(const Word& g) const;  // requires exact mode

  // Finiteness of the subgroup itself (free: finite iff trivial).
  Verdict finiteness() const;
  bool isTrivialExact() const;

  SubgroupRep conjugated(const Word& g) const;  // g H g^-1
  static SubgroupRep intersect(const SubgroupRep& a, const SubgroupRep& b);

  // [this : sub] for sub <= this; nullopt encodes infinity.
  std::optional<int64_t> indexOver(const SubgroupRep& sub) const;

  // Normal-form language of the subgroup when it is regular.
  std::optional<RegSet> language() const;

  const StallingsCore* core() const { return core_.get(); }
  const VaSubgroup* vaSub() const { return va_.get(); }

  std::string canonicalKey() const;

 private:
  GroupPtr ambient_;
  std::vector<Word> gens_;
  Mode mode_;
  std::shared_ptr<const StallingsCore> core_;
  std::shared_ptr<const VaSubgroup> va_;
  // bounded fallback: known members within the exploration radius
  std::vector<Word> bounded_members_;
  int bounded_radius_ = 0;
};

// Left coset gH with a chosen representative.
struct CosetId {
  Word rep;
};

// Deduplicated finite set of left cosets (the X of a pointwise
// stabiliser query).
class CosetSet {
 public:
  CosetSet(const SubgroupRep& h, std::vector<Word> reps);
  const std::vector<CosetId>& cosets() const { return cosets_; }
  size_t size() const { return cosets_.size(); }

 private:
  std::vector<CosetId> cosets_;
};

bool sameLeftCoset(const SubgroupRep& h, const Word& a, const Word& b);
bool sameRightCoset(const SubgroupRep& h, const Word& a, const Word& b);

// H_X = intersection of the conjugates H^x over xH in X.
SubgroupRep pointwiseStabiliser(const SubgroupRep& h, const CosetSet& x);

// Commensurator test for one element: both indices |H : H cap H^g| and
// |H^g : H cap H^g| finite.
Verdict commensuratorProbe(const SubgroupRep& h, const Word& g);

struct SchreierGraph {
  std::vector<Word> vertex_rep;             // right coset representatives
  std::vector<std::vector<int>> adjacency;  // [vertex][letter] -> vertex or -1
  int basepoint = 0;

  std::string toDot(const GroupSpec& g) const;
  nlohmann::json toJson(const GroupSpec& g) const;
};

SchreierGraph schreierGraph(const SubgroupRep& h, int radius);

struct EndsReport {
  std::vector<int> counts;  // component counts outside balls of radius r
  int stable_value = 0;     // trailing plateau value, 0 if none
  int lower_bound = 0;
  bool many_ends_evidence = false;  // counts >= 3 and non-decreasing
  nlohmann::json toJson() const;
};

EndsReport relativeEndsEstimate(const SubgroupRep& h, int radius);

Verdict heightProbe(const SubgroupRep& h, int bound, int radius);

struct Attestation {
  // pattern: "all", "trivial", "finite", or "generators:<w1,w2,...>"
  std::string pattern;
  bool compatible = true;
};

nlohmann::json splittingHeightLedger(const SubgroupRep& h,
                                     const std::vector<Attestation>& attestations,
                                     int radius, int max_size);

}  // namespace dualcube
