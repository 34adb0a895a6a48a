// Copyright (c) 2026 The dualcube authors
// SPDX-License-Identifier: Apache-2.0

#include "dualcube/zmath.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "dualcube/errors.hpp"

namespace dualcube {

bool EpSet::bit(long long i) const {
  if (i < 0) return false;
  if (i < static_cast<long long>(head.size())) return head[static_cast<size_t>(i)];
  if (cyc.empty()) return false;
  return cyc[static_cast<size_t>((i - static_cast<long long>(head.size())) %
                                 static_cast<long long>(cyc.size()))];
}

bool EpSet::empty() const {
  for (bool b : head)
    if (b) return false;
  for (bool b : cyc)
    if (b) return false;
  return true;
}

bool EpSet::finite() const {
  for (bool b : cyc)
    if (b) return false;
  return true;
}

std::vector<long long> EpSet::members(size_t count) const {
  std::vector<long long> out;
  long long horizon = static_cast<long long>(head.size());
  if (!finite()) horizon += static_cast<long long>(cyc.size()) * static_cast<long long>(count);
  for (long long i = 0; i <= horizon && out.size() < count; ++i)
    if (bit(i)) out.push_back(i);
  return out;
}

EpSet EpSet::single(long long i) {
  EpSet s;
  s.head.assign(static_cast<size_t>(i + 1), false);
  s.head[static_cast<size_t>(i)] = true;
  return s;
}

bool ZSet::bit(long long v) const { return v >= 0 ? pos.bit(v) : neg.bit(-v - 1); }

bool ZSet::empty() const { return pos.empty() && neg.empty(); }

bool ZSet::finite() const { return pos.finite() && neg.finite(); }

namespace {

// Rebuild an EpSet from a bit oracle known to be eventually periodic with
// period dividing `period` past `tail`.
EpSet rebuild(const std::vector<bool>& bits, size_t tail, size_t period) {
  EpSet s;
  s.head.assign(bits.begin(), bits.begin() + static_cast<long long>(tail));
  if (period > 0)
    s.cyc.assign(bits.begin() + static_cast<long long>(tail),
                 bits.begin() + static_cast<long long>(tail + period));
  return s;
}

}  // namespace

ZSet ZSet::shifted(long long delta) const {
  if (delta == 0) return *this;
  ZSet out;
  size_t pp = std::max<size_t>(1, pos.cyc.size());
  size_t np = std::max<size_t>(1, neg.cyc.size());
  size_t period = std::lcm(pp, np);
  size_t tail = std::max(pos.head.size(), neg.head.size()) +
                static_cast<size_t>(std::llabs(delta)) + 2;
  std::vector<bool> pbits(tail + period), nbits(tail + period);
  for (size_t i = 0; i < tail + period; ++i) {
    pbits[i] = bit(static_cast<long long>(i) - delta);
    nbits[i] = bit(-(static_cast<long long>(i) + 1) - delta);
  }
  out.pos = rebuild(pbits, tail, pos.finite() && neg.finite() ? 0 : period);
  out.neg = rebuild(nbits, tail, pos.finite() && neg.finite() ? 0 : period);
  if (pos.finite() && neg.finite()) {
    out.pos = rebuild(pbits, tail + period, 0);
    out.neg = rebuild(nbits, tail + period, 0);
  }
  return out;
}

ZSet ZSet::negated() const {
  ZSet out;
  size_t pp = std::max<size_t>(1, pos.cyc.size());
  size_t np = std::max<size_t>(1, neg.cyc.size());
  size_t period = std::lcm(pp, np);
  size_t tail = std::max(pos.head.size(), neg.head.size()) + 2;
  std::vector<bool> pbits(tail + period), nbits(tail + period);
  for (size_t i = 0; i < tail + period; ++i) {
    pbits[i] = bit(-static_cast<long long>(i));
    nbits[i] = bit(static_cast<long long>(i) + 1);
  }
  bool fin = pos.finite() && neg.finite();
  out.pos = rebuild(pbits, fin ? tail + period : tail, fin ? 0 : period);
  out.neg = rebuild(nbits, fin ? tail + period : tail, fin ? 0 : period);
  return out;
}

std::vector<long long> ZSet::members(size_t count) const {
  std::vector<long long> out;
  long long horizon = static_cast<long long>(
      std::max(pos.head.size(), neg.head.size()) +
      std::max<size_t>(1, std::max(pos.cyc.size(), neg.cyc.size())) * (count + 1));
  for (long long a = 0; a <= horizon && out.size() < count; ++a) {
    if (bit(a)) out.push_back(a);
    if (out.size() >= count) break;
    if (a > 0 && bit(-a)) out.push_back(-a);
  }
  return out;
}

ZSet ZSet::single(long long v) {
  ZSet s;
  if (v >= 0)
    s.pos = EpSet::single(v);
  else
    s.neg = EpSet::single(-v - 1);
  return s;
}

ZSet ZSet::halfline(long long bound, bool greater) {
  // greater: { v : v > bound }, else { v : v < bound }
  ZSet s;
  if (greater) {
    if (bound >= 0) {
      s.pos.head.assign(static_cast<size_t>(bound + 1), false);
      s.pos.cyc = {true};
    } else {
      s.pos = EpSet::all();
      long long first = -bound - 1;  // neg index of largest member < 0
      s.neg.head.assign(static_cast<size_t>(first), true);
    }
  } else {
    if (bound <= 0) {
      s.neg.head.assign(static_cast<size_t>(-bound), false);
      s.neg.cyc = {true};
    } else {
      s.neg = EpSet::all();
      s.pos.head.assign(static_cast<size_t>(bound), true);
    }
  }
  return s;
}

ZSet ZSet::residue(long long modulus, long long cls) {
  ZSet s;
  cls = ((cls % modulus) + modulus) % modulus;
  s.pos.cyc.assign(static_cast<size_t>(modulus), false);
  for (long long i = 0; i < modulus; ++i)
    s.pos.cyc[static_cast<size_t>(i)] = (i % modulus) == cls;
  s.neg.cyc.assign(static_cast<size_t>(modulus), false);
  for (long long i = 0; i < modulus; ++i)
    s.neg.cyc[static_cast<size_t>(i)] = (((-(i + 1)) % modulus + modulus) % modulus) == cls;
  return s;
}

namespace {

// Row-style Hermite reduction: returns triangular rows sorted by pivot
// column, pivots positive, entries above pivots reduced.
std::vector<std::vector<int64_t>> hermite(std::vector<std::vector<int64_t>> rows, int dim) {
  std::vector<std::vector<int64_t>> out;
  for (int col = 0; col < dim; ++col) {
    // gather rows with nonzero at col, eliminate by gcd steps
    size_t pivot_idx = rows.size();
    for (size_t i = 0; i < rows.size(); ++i) {
      if (rows[i][static_cast<size_t>(col)] == 0) continue;
      if (pivot_idx == rows.size()) {
        pivot_idx = i;
        continue;
      }
      // euclid on (pivot, row i)
      auto& p = rows[pivot_idx];
      auto& r = rows[i];
      while (r[static_cast<size_t>(col)] != 0) {
        int64_t q = p[static_cast<size_t>(col)] / r[static_cast<size_t>(col)];
        for (int j = 0; j < dim; ++j) p[static_cast<size_t>(j)] -= q * r[static_cast<size_t>(j)];
        std::swap(p, r);
      }
    }
    if (pivot_idx == rows.size()) continue;
    auto piv = rows[pivot_idx];
    rows.erase(rows.begin() + static_cast<long long>(pivot_idx));
    if (piv[static_cast<size_t>(col)] < 0)
      for (auto& x : piv) x = -x;
    out.push_back(std::move(piv));
  }
  // reduce entries above pivots
  for (size_t i = out.size(); i-- > 0;) {
    int col = 0;
    while (out[i][static_cast<size_t>(col)] == 0) ++col;
    for (size_t j = 0; j < i; ++j) {
      int64_t q = out[j][static_cast<size_t>(col)];
      int64_t p = out[i][static_cast<size_t>(col)];
      int64_t f = (q % p + p) % p;
      int64_t shift = (q - f) / p;
      for (int c = 0; c < dim; ++c)
        out[j][static_cast<size_t>(c)] -= shift * out[i][static_cast<size_t>(c)];
    }
  }
  return out;
}

}  // namespace

Lattice Lattice::fromGenerators(int dim, const std::vector<std::vector<int64_t>>& gens) {
  Lattice l(dim);
  std::vector<std::vector<int64_t>> rows;
  for (const auto& g : gens) {
    if (static_cast<int>(g.size()) != dim)
      throw Error(ErrorCode::Internal, "lattice generator dimension mismatch");
    bool zero = true;
    for (int64_t x : g) zero = zero && x == 0;
    if (!zero) rows.push_back(g);
  }
  l.basis_ = hermite(std::move(rows), dim);
  return l;
}

bool Lattice::contains(const std::vector<int64_t>& v) const {
  std::vector<int64_t> r = v;
  for (const auto& b : basis_) {
    int col = 0;
    while (b[static_cast<size_t>(col)] == 0) ++col;
    if (r[static_cast<size_t>(col)] % b[static_cast<size_t>(col)] != 0) {
      // may still clear later? triangular: no
    }
    int64_t q = r[static_cast<size_t>(col)] / b[static_cast<size_t>(col)];
    for (int c = 0; c < dim_; ++c) r[static_cast<size_t>(c)] -= q * b[static_cast<size_t>(c)];
    if (r[static_cast<size_t>(col)] != 0) return false;
  }
  for (int64_t x : r)
    if (x != 0) return false;
  return true;
}

bool Lattice::operator==(const Lattice& o) const {
  return dim_ == o.dim_ && basis_ == o.basis_;
}

std::vector<int64_t> Lattice::reduce(std::vector<int64_t> v) const {
  for (const auto& b : basis_) {
    int col = 0;
    while (b[static_cast<size_t>(col)] == 0) ++col;
    int64_t p = b[static_cast<size_t>(col)];
    int64_t f = ((v[static_cast<size_t>(col)] % p) + p) % p;
    int64_t q = (v[static_cast<size_t>(col)] - f) / p;
    for (int c = 0; c < dim_; ++c) v[static_cast<size_t>(c)] -= q * b[static_cast<size_t>(c)];
  }
  return v;
}

std::vector<std::vector<int64_t>> integerKernel(const std::vector<std::vector<int64_t>>& m,
                                                int cols) {
  // Column-reduce [M | I] rows: rows are (row of M, unit); Hermite on the
  // M part; rows whose M part vanishes give kernel combinations.
  int r = static_cast<int>(m.size());
  std::vector<std::vector<int64_t>> aug;
  for (int i = 0; i < r; ++i) {
    std::vector<int64_t> row = m[static_cast<size_t>(i)];
    row.resize(static_cast<size_t>(cols + r), 0);
    row[static_cast<size_t>(cols + i)] = 1;
    aug.push_back(std::move(row));
  }
  // eliminate like hermite over the first `cols` columns
  std::vector<std::vector<int64_t>> kept;
  for (int col = 0; col < cols; ++col) {
    size_t pivot_idx = aug.size();
    for (size_t i = 0; i < aug.size(); ++i) {
      if (aug[i][static_cast<size_t>(col)] == 0) continue;
      if (pivot_idx == aug.size()) {
        pivot_idx = i;
        continue;
      }
      auto& p = aug[pivot_idx];
      auto& rw = aug[i];
      while (rw[static_cast<size_t>(col)] != 0) {
        int64_t q = p[static_cast<size_t>(col)] / rw[static_cast<size_t>(col)];
        for (size_t j = 0; j < p.size(); ++j) p[j] -= q * rw[j];
        std::swap(p, rw);
      }
    }
    if (pivot_idx == aug.size()) continue;
    kept.push_back(aug[pivot_idx]);
    aug.erase(aug.begin() + static_cast<long long>(pivot_idx));
  }
  std::vector<std::vector<int64_t>> kernel;
  for (const auto& row : aug) {
    bool zero = true;
    for (int c = 0; c < cols; ++c) zero = zero && row[static_cast<size_t>(c)] == 0;
    if (!zero) continue;
    kernel.emplace_back(row.begin() + cols, row.end());
  }
  return kernel;
}

namespace {

struct RowReduction {
  // pivot rows of the reduced matrix paired with the combination of
  // original rows producing each; kernel rows are combinations giving 0.
  std::vector<std::vector<int64_t>> h;
  std::vector<std::vector<int64_t>> u;
  std::vector<std::vector<int64_t>> kernel;
};

RowReduction rowReduce(const std::vector<std::vector<int64_t>>& m, int cols) {
  int r = static_cast<int>(m.size());
  std::vector<std::vector<int64_t>> aug;
  for (int i = 0; i < r; ++i) {
    std::vector<int64_t> row = m[static_cast<size_t>(i)];
    row.resize(static_cast<size_t>(cols + r), 0);
    row[static_cast<size_t>(cols + i)] = 1;
    aug.push_back(std::move(row));
  }
  RowReduction out;
  for (int col = 0; col < cols; ++col) {
    size_t pivot_idx = aug.size();
    for (size_t i = 0; i < aug.size(); ++i) {
      if (aug[i][static_cast<size_t>(col)] == 0) continue;
      if (pivot_idx == aug.size()) {
        pivot_idx = i;
        continue;
      }
      auto& p = aug[pivot_idx];
      auto& rw = aug[i];
      while (rw[static_cast<size_t>(col)] != 0) {
        int64_t q = p[static_cast<size_t>(col)] / rw[static_cast<size_t>(col)];
        for (size_t j = 0; j < p.size(); ++j) p[j] -= q * rw[j];
        std::swap(p, rw);
      }
    }
    if (pivot_idx == aug.size()) continue;
    auto row = aug[pivot_idx];
    aug.erase(aug.begin() + static_cast<long long>(pivot_idx));
    if (row[static_cast<size_t>(col)] < 0)
      for (auto& x : row) x = -x;
    out.h.emplace_back(row.begin(), row.begin() + cols);
    out.u.emplace_back(row.begin() + cols, row.end());
  }
  for (const auto& row : aug) {
    bool zero = true;
    for (int c = 0; c < cols; ++c) zero = zero && row[static_cast<size_t>(c)] == 0;
    if (zero) out.kernel.emplace_back(row.begin() + cols, row.end());
  }
  return out;
}

}  // namespace

std::optional<std::vector<int64_t>> solveRowCombination(
    const std::vector<std::vector<int64_t>>& rows, int cols,
    const std::vector<int64_t>& target) {
  auto red = rowReduce(rows, cols);
  std::vector<int64_t> residual = target;
  std::vector<int64_t> coeff(rows.size(), 0);
  for (size_t i = 0; i < red.h.size(); ++i) {
    int col = 0;
    while (red.h[i][static_cast<size_t>(col)] == 0) ++col;
    int64_t p = red.h[i][static_cast<size_t>(col)];
    if (residual[static_cast<size_t>(col)] % p != 0) return std::nullopt;
    int64_t q = residual[static_cast<size_t>(col)] / p;
    for (int c = 0; c < cols; ++c) residual[static_cast<size_t>(c)] -= q * red.h[i][static_cast<size_t>(c)];
    for (size_t j = 0; j < coeff.size(); ++j) coeff[j] += q * red.u[i][j];
  }
  for (int64_t x : residual)
    if (x != 0) return std::nullopt;
  return coeff;
}

Lattice Lattice::intersect(const Lattice& other) const {
  if (dim_ != other.dim_) throw Error(ErrorCode::Internal, "lattice dim mismatch");
  // x = a * B1 = b * B2  =>  (a, -b) in kernel of [B1; B2]^T stacking
  std::vector<std::vector<int64_t>> stacked = basis_;
  for (const auto& rrow : other.basis_) {
    std::vector<int64_t> neg = rrow;
    for (auto& x : neg) x = -x;
    stacked.push_back(neg);
  }
  auto ker = integerKernel(stacked, dim_);
  std::vector<std::vector<int64_t>> gens;
  for (const auto& k : ker) {
    std::vector<int64_t> v(static_cast<size_t>(dim_), 0);
    for (size_t i = 0; i < basis_.size(); ++i)
      for (int c = 0; c < dim_; ++c)
        v[static_cast<size_t>(c)] += k[i] * basis_[i][static_cast<size_t>(c)];
    gens.push_back(std::move(v));
  }
  return fromGenerators(dim_, gens);
}

Lattice Lattice::sum(const Lattice& other) const {
  std::vector<std::vector<int64_t>> gens = basis_;
  gens.insert(gens.end(), other.basis_.begin(), other.basis_.end());
  return fromGenerators(dim_, gens);
}

std::optional<int64_t> Lattice::indexOver(const Lattice& sub) const {
  if (sub.rank() < rank()) return std::nullopt;
  if (sub.rank() > rank()) throw Error(ErrorCode::Internal, "indexOver: not a sublattice");
  // express sub basis in terms of this basis, take |det|
  int r = rank();
  if (r == 0) return 1;
  // solve X * basis_ = sub.basis_  (triangular back substitution per row)
  std::vector<std::vector<int64_t>> coeff;
  for (const auto& srow : sub.basis_) {
    std::vector<int64_t> v = srow;
    std::vector<int64_t> x(static_cast<size_t>(r), 0);
    for (int i = 0; i < r; ++i) {
      int col = 0;
      while (basis_[static_cast<size_t>(i)][static_cast<size_t>(col)] == 0) ++col;
      int64_t p = basis_[static_cast<size_t>(i)][static_cast<size_t>(col)];
      if (v[static_cast<size_t>(col)] % p != 0)
        throw Error(ErrorCode::Internal, "indexOver: not a sublattice");
      int64_t q = v[static_cast<size_t>(col)] / p;
      x[static_cast<size_t>(i)] = q;
      for (int c = 0; c < dim_; ++c)
        v[static_cast<size_t>(c)] -= q * basis_[static_cast<size_t>(i)][static_cast<size_t>(c)];
    }
    coeff.push_back(std::move(x));
  }
  // determinant by fraction-free gaussian elimination on small matrix
  long double det = 1.0L;
  std::vector<std::vector<long double>> md(coeff.size());
  for (size_t i = 0; i < coeff.size(); ++i) md[i].assign(coeff[i].begin(), coeff[i].end());
  for (size_t i = 0; i < md.size(); ++i) {
    size_t piv = i;
    while (piv < md.size() && md[piv][i] == 0) ++piv;
    if (piv == md.size()) return std::nullopt;
    if (piv != i) {
      std::swap(md[piv], md[i]);
      det = -det;
    }
    det *= md[i][i];
    for (size_t j = i + 1; j < md.size(); ++j) {
      long double f = md[j][i] / md[i][i];
      for (size_t c = i; c < md[j].size(); ++c) md[j][c] -= f * md[i][c];
    }
  }
  int64_t v = static_cast<int64_t>(det < 0 ? -det + 0.5L : det + 0.5L);
  return v;
}

std::vector<std::vector<int64_t>> Lattice::orthogonalComplement() const {
  if (basis_.empty()) {
    std::vector<std::vector<int64_t>> full;
    for (int i = 0; i < dim_; ++i) {
      std::vector<int64_t> e(static_cast<size_t>(dim_), 0);
      e[static_cast<size_t>(i)] = 1;
      full.push_back(std::move(e));
    }
    return full;
  }
  // kernel of basis^T: vectors x with basis * x^T = 0 -> use integerKernel
  // on transpose
  std::vector<std::vector<int64_t>> mt(static_cast<size_t>(dim_),
                                       std::vector<int64_t>(basis_.size(), 0));
  for (size_t i = 0; i < basis_.size(); ++i)
    for (int c = 0; c < dim_; ++c) mt[static_cast<size_t>(c)][i] = basis_[i][static_cast<size_t>(c)];
  return integerKernel(mt, static_cast<int>(basis_.size()));
}

}  // namespace dualcube
