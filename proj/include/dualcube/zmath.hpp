// Copyright (c) 2026 The dualcube authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace dualcube {

// Eventually periodic subset of the naturals: bit(i) = head[i] for
// i < head.size(), then cyc[(i - head.size()) mod cyc.size()]; an empty
// cyc means all-false past the head.
struct EpSet {
  std::vector<bool> head;
  std::vector<bool> cyc;

  bool bit(long long i) const;
  bool empty() const;
  bool finite() const;  // finitely many set bits
  // Set bits in increasing order, up to `count` of them.
  std::vector<long long> members(size_t count) const;

  static EpSet none() { return {}; }
  static EpSet all() { return {{}, {true}}; }
  static EpSet single(long long i);
};

// Eventually periodic subset of the integers. `pos.bit(m)` covers values
// m >= 0 and `neg.bit(i)` covers value -(i+1).
struct ZSet {
  EpSet pos;
  EpSet neg;

  bool bit(long long v) const;
  bool empty() const;
  bool finite() const;
  ZSet shifted(long long delta) const;  // { v + delta : v in S }
  ZSet negated() const;                 // { -v : v in S }
  // Members by increasing |v| (ties: nonnegative first), up to count.
  std::vector<long long> members(size_t count) const;

  static ZSet none() { return {}; }
  static ZSet all() { return {EpSet::all(), EpSet::all()}; }
  static ZSet single(long long v);
  static ZSet halfline(long long bound, bool greater);  // v > bound or v < bound
  static ZSet residue(long long modulus, long long cls);
};

// Sublattice of Z^n, kept as a Hermite-style triangular basis (rows).
class Lattice {
 public:
  explicit Lattice(int dim) : dim_(dim) {}
  static Lattice fromGenerators(int dim, const std::vector<std::vector<int64_t>>& gens);

  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(basis_.size()); }
  const std::vector<std::vector<int64_t>>& basis() const { return basis_; }

  bool contains(const std::vector<int64_t>& v) const;
  bool operator==(const Lattice& o) const;

  Lattice intersect(const Lattice& other) const;
  Lattice sum(const Lattice& other) const;

  // Index [this : sub] for sub <= this; nullopt when infinite.
  std::optional<int64_t> indexOver(const Lattice& sub) const;

  // Basis of { x : x . v = 0 for all v in lattice } (the integer kernel
  // of the basis matrix, as row vectors of length dim).
  std::vector<std::vector<int64_t>> orthogonalComplement() const;

  // Canonical residue of v modulo the lattice (greedy triangular
  // reduction); equal vectors mod lattice reduce identically.
  std::vector<int64_t> reduce(std::vector<int64_t> v) const;

 private:
  int dim_;
  std::vector<std::vector<int64_t>> basis_;  // triangular, canonicalized
};

// Integer kernel (row space) of an r x c matrix: solutions x (length r)
// with x * M = 0.
std::vector<std::vector<int64_t>> integerKernel(const std::vector<std::vector<int64_t>>& m,
                                                int cols);

// Integer solution x (length rows.size()) of x * rows = target, if any.
std::optional<std::vector<int64_t>> solveRowCombination(
    const std::vector<std::vector<int64_t>>& rows, int cols,
    const std::vector<int64_t>& target);

}  // namespace dualcube
