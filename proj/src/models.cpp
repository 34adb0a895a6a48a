// Copyright (c) 2026 The dualcube authors
// SPDX-License-Identifier: Apache-2.0

#include "dualcube/models.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <set>

#include "dualcube/errors.hpp"

namespace dualcube {

// ---------------------------------------------------------------------
// StallingsCore

StallingsCore::StallingsCore(int rank, const std::vector<Letters>& generator_words)
    : rank_(rank) {
  edges_.push_back(std::vector<int>(static_cast<size_t>(2 * rank), -1));
  base_ = 0;
  // Wedge of loops at the basepoint; shared multi-edges resolved by fold.
  std::vector<std::vector<std::pair<Letter, int>>> multi(1);
  auto addVertex = [&]() {
    edges_.push_back(std::vector<int>(static_cast<size_t>(2 * rank_), -1));
    multi.emplace_back();
    return static_cast<int>(edges_.size()) - 1;
  };
  auto addEdge = [&](int v, Letter l, int w) {
    multi[static_cast<size_t>(v)].push_back({l, w});
    multi[static_cast<size_t>(w)].push_back({static_cast<Letter>(l ^ 1), v});
  };
  for (const auto& g : generator_words) {
    if (g.empty()) continue;
    int v = base_;
    for (size_t i = 0; i + 1 < g.size(); ++i) {
      int w = addVertex();
      addEdge(v, g[i], w);
      v = w;
    }
    addEdge(v, g.back(), base_);
  }
  // fold via union-find
  std::vector<int> uf(edges_.size());
  std::iota(uf.begin(), uf.end(), 0);
  std::function<int(int)> find = [&](int v) {
    while (uf[static_cast<size_t>(v)] != v) {
      uf[static_cast<size_t>(v)] = uf[static_cast<size_t>(uf[static_cast<size_t>(v)])];
      v = uf[static_cast<size_t>(v)];
    }
    return v;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t v = 0; v < multi.size(); ++v) {
      if (find(static_cast<int>(v)) != static_cast<int>(v)) continue;
      // collect all edges incident to the class of v
      std::map<Letter, std::set<int>> targets;
      for (size_t w = 0; w < multi.size(); ++w) {
        if (find(static_cast<int>(w)) != static_cast<int>(v)) continue;
        for (auto [l, t] : multi[w]) targets[l].insert(find(t));
      }
      for (auto& [l, ts] : targets) {
        if (ts.size() > 1) {
          auto it = ts.begin();
          int first = *it;
          for (++it; it != ts.end(); ++it) {
            uf[static_cast<size_t>(find(*it))] = find(first);
            first = find(first);
          }
          changed = true;
        }
      }
    }
  }
  // rebuild deterministic edge table on representatives
  std::map<int, int> newid;
  for (size_t v = 0; v < multi.size(); ++v) {
    int r = find(static_cast<int>(v));
    if (!newid.count(r)) newid.emplace(r, static_cast<int>(newid.size()));
  }
  std::vector<std::vector<int>> folded(newid.size(),
                                       std::vector<int>(static_cast<size_t>(2 * rank_), -1));
  for (size_t v = 0; v < multi.size(); ++v)
    for (auto [l, t] : multi[v])
      folded[static_cast<size_t>(newid[find(static_cast<int>(v))])][static_cast<size_t>(l)] =
          newid[find(t)];
  base_ = newid[find(base_)];
  edges_ = std::move(folded);
  trim();
  canonicalize();
}

int StallingsCore::degree(int v) const {
  int d = 0;
  for (int l = 0; l < 2 * rank_; ++l)
    if (edge(v, l) >= 0) ++d;
  return d;
}

void StallingsCore::trim() {
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < numVertices(); ++v) {
      if (v == base_ || degree(v) > 1) continue;
      // remove v
      for (int l = 0; l < 2 * rank_; ++l) {
        int w = edge(v, l);
        if (w >= 0) edges_[static_cast<size_t>(w)][static_cast<size_t>(l ^ 1)] = -1;
      }
      edges_.erase(edges_.begin() + v);
      for (auto& row : edges_)
        for (auto& t : row)
          if (t > v)
            --t;
          else if (t == v)
            t = -1;
      if (base_ > v) --base_;
      changed = true;
      break;
    }
  }
}

void StallingsCore::canonicalize() {
  std::vector<int> order;
  std::vector<int> newid(edges_.size(), -1);
  std::deque<int> todo{base_};
  newid[static_cast<size_t>(base_)] = 0;
  order.push_back(base_);
  while (!todo.empty()) {
    int v = todo.front();
    todo.pop_front();
    for (int l = 0; l < 2 * rank_; ++l) {
      int w = edge(v, l);
      if (w >= 0 && newid[static_cast<size_t>(w)] == -1) {
        newid[static_cast<size_t>(w)] = static_cast<int>(order.size());
        order.push_back(w);
        todo.push_back(w);
      }
    }
  }
  // core graphs are connected; anything unreached is unused
  std::vector<std::vector<int>> out(order.size(),
                                    std::vector<int>(static_cast<size_t>(2 * rank_), -1));
  for (size_t i = 0; i < order.size(); ++i)
    for (int l = 0; l < 2 * rank_; ++l) {
      int w = edge(order[i], l);
      out[i][static_cast<size_t>(l)] = w >= 0 ? newid[static_cast<size_t>(w)] : -1;
    }
  edges_ = std::move(out);
  base_ = 0;
}

bool StallingsCore::isTrivial() const {
  for (int v = 0; v < numVertices(); ++v)
    if (degree(v) > 0) return false;
  return true;
}

std::optional<int> StallingsCore::trace(const Letters& reduced) const {
  int v = base_;
  for (Letter l : reduced) {
    v = edge(v, l);
    if (v < 0) return std::nullopt;
  }
  return v;
}

bool StallingsCore::contains(const Letters& reduced) const {
  auto t = trace(reduced);
  return t && *t == base_;
}

Dfa StallingsCore::languageDfa(int alphabet_size) const {
  Dfa d(alphabet_size, numVertices() + 1);
  int dead = numVertices();
  d.setStart(base_);
  d.setAccepting(base_, true);
  for (int v = 0; v <= dead; ++v)
    for (Letter l = 0; l < alphabet_size; ++l) {
      int w = (v == dead || l >= 2 * rank_) ? -1 : edge(v, l);
      d.setNext(v, l, w >= 0 ? w : dead);
    }
  return d;
}

std::vector<Letters> StallingsCore::freeBasis() const {
  // BFS spanning tree, then one basis element per non-tree edge.
  std::vector<int> parent(edges_.size(), -1);
  std::vector<Letter> via(edges_.size(), -1);
  std::vector<bool> seen(edges_.size(), false);
  std::deque<int> todo{base_};
  seen[static_cast<size_t>(base_)] = true;
  std::set<std::pair<int, Letter>> tree;  // directed tree edges both ways
  while (!todo.empty()) {
    int v = todo.front();
    todo.pop_front();
    for (int l = 0; l < 2 * rank_; ++l) {
      int w = edge(v, l);
      if (w < 0 || seen[static_cast<size_t>(w)]) continue;
      seen[static_cast<size_t>(w)] = true;
      parent[static_cast<size_t>(w)] = v;
      via[static_cast<size_t>(w)] = static_cast<Letter>(l);
      tree.insert({v, static_cast<Letter>(l)});
      tree.insert({w, static_cast<Letter>(l ^ 1)});
      todo.push_back(w);
    }
  }
  auto pathFromBase = [&](int v) {
    Letters p;
    while (v != base_) {
      p.push_back(via[static_cast<size_t>(v)]);
      v = parent[static_cast<size_t>(v)];
    }
    std::reverse(p.begin(), p.end());
    return p;
  };
  std::vector<Letters> basis;
  for (int v = 0; v < numVertices(); ++v)
    for (int l = 0; l < 2 * rank_; ++l) {
      int w = edge(v, l);
      if (w < 0 || tree.count({v, static_cast<Letter>(l)})) continue;
      // canonical direction: smaller (v, l) endpoint first
      if (std::make_pair(w, l ^ 1) < std::make_pair(v, l)) continue;
      Letters word = pathFromBase(v);
      word.push_back(static_cast<Letter>(l));
      Letters back = pathFromBase(w);
      std::reverse(back.begin(), back.end());
      for (Letter b : back) word.push_back(static_cast<Letter>(b ^ 1));
      basis.push_back(std::move(word));
    }
  return basis;
}

std::optional<Letters> StallingsCore::expressInBasis(const Letters& reduced) const {
  // Recompute the same spanning tree and non-tree edge numbering as
  // freeBasis(), then read off the crossing sequence.
  std::vector<int> parent(edges_.size(), -1);
  std::vector<Letter> via(edges_.size(), -1);
  std::vector<bool> seen(edges_.size(), false);
  std::deque<int> todo{base_};
  seen[static_cast<size_t>(base_)] = true;
  std::set<std::pair<int, Letter>> tree;
  while (!todo.empty()) {
    int v = todo.front();
    todo.pop_front();
    for (int l = 0; l < 2 * rank_; ++l) {
      int w = edge(v, l);
      if (w < 0 || seen[static_cast<size_t>(w)]) continue;
      seen[static_cast<size_t>(w)] = true;
      parent[static_cast<size_t>(w)] = v;
      via[static_cast<size_t>(w)] = static_cast<Letter>(l);
      tree.insert({v, static_cast<Letter>(l)});
      tree.insert({w, static_cast<Letter>(l ^ 1)});
      todo.push_back(w);
    }
  }
  std::map<std::pair<int, Letter>, int> edge_index;  // canonical directed rep -> basis idx
  int idx = 0;
  for (int v = 0; v < numVertices(); ++v)
    for (int l = 0; l < 2 * rank_; ++l) {
      int w = edge(v, l);
      if (w < 0 || tree.count({v, static_cast<Letter>(l)})) continue;
      if (std::make_pair(w, l ^ 1) < std::make_pair(v, l)) continue;
      edge_index[{v, static_cast<Letter>(l)}] = idx++;
    }
  Letters out;
  int v = base_;
  for (Letter l : reduced) {
    int w = edge(v, l);
    if (w < 0) return std::nullopt;
    if (!tree.count({v, l})) {
      auto it = edge_index.find({v, l});
      if (it != edge_index.end()) {
        out.push_back(static_cast<Letter>(2 * it->second));
      } else {
        it = edge_index.find({w, static_cast<Letter>(l ^ 1)});
        out.push_back(static_cast<Letter>(2 * it->second + 1));
      }
    }
    v = w;
  }
  if (v != base_) return std::nullopt;
  // free reduction over basis letters
  Letters red;
  for (Letter l : out) {
    if (!red.empty() && (red.back() ^ 1) == l)
      red.pop_back();
    else
      red.push_back(l);
  }
  return red;
}

std::string StallingsCore::canonicalKey() const {
  std::string k;
  k += std::to_string(numVertices());
  k += ';';
  for (int v = 0; v < numVertices(); ++v)
    for (int l = 0; l < 2 * rank_; ++l) {
      k += std::to_string(edge(v, l));
      k += ',';
    }
  return k;
}

StallingsCore StallingsCore::pullback(const StallingsCore& a, const StallingsCore& b) {
  if (a.rank_ != b.rank_) throw Error(ErrorCode::Internal, "pullback rank mismatch");
  StallingsCore out(a.rank_);
  std::map<std::pair<int, int>, int> ids;
  std::deque<std::pair<int, int>> todo;
  auto intern = [&](int x, int y) {
    auto key = std::make_pair(x, y);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    out.edges_.push_back(std::vector<int>(static_cast<size_t>(2 * a.rank_), -1));
    int id = static_cast<int>(out.edges_.size()) - 1;
    ids.emplace(key, id);
    todo.push_back(key);
    return id;
  };
  out.base_ = intern(a.base_, b.base_);
  while (!todo.empty()) {
    auto [x, y] = todo.front();
    todo.pop_front();
    int from = ids[{x, y}];
    for (int l = 0; l < 2 * a.rank_; ++l) {
      int xa = a.edge(x, l), yb = b.edge(y, l);
      if (xa < 0 || yb < 0) continue;
      out.edges_[static_cast<size_t>(from)][static_cast<size_t>(l)] = intern(xa, yb);
    }
  }
  out.trim();
  out.canonicalize();
  return out;
}

// ---------------------------------------------------------------------
// FreeModel

Letters FreeModel::reduceWord(Letters w) const {
  Letters red;
  for (Letter l : w) {
    if (!red.empty() && (red.back() ^ 1) == l)
      red.pop_back();
    else
      red.push_back(l);
  }
  return red;
}

namespace {

Dfa prependLetter(Letter s, const Dfa& lang) {
  Dfa out(lang.alphabetSize(), lang.numStates() + 2);
  int fresh = lang.numStates();
  int dead = lang.numStates() + 1;
  for (int v = 0; v < lang.numStates(); ++v) {
    out.setAccepting(v, lang.accepting(v));
    for (Letter l = 0; l < lang.alphabetSize(); ++l) out.setNext(v, l, lang.next(v, l));
  }
  out.setStart(fresh);
  for (Letter l = 0; l < lang.alphabetSize(); ++l) {
    out.setNext(fresh, l, l == s ? lang.start() : dead);
    out.setNext(dead, l, dead);
  }
  return out;
}

Dfa appendLetter(const Dfa& lang, Letter s) {
  Nfa n(lang.alphabetSize());
  for (int v = 0; v < lang.numStates(); ++v) n.addState(false);
  int fin = n.addState(true);
  n.setStart(lang.start());
  for (int v = 0; v < lang.numStates(); ++v) {
    for (Letter l = 0; l < lang.alphabetSize(); ++l) n.addEdge(v, l, lang.next(v, l));
    if (lang.accepting(v)) n.addEdge(v, s, fin);
  }
  return n.determinized();
}

Dfa leftQuotientLetter(Letter s, const Dfa& lang) {
  Dfa out = lang;
  out.setStart(lang.next(lang.start(), s));
  return out;
}

Dfa rightQuotientLetter(const Dfa& lang, Letter s) {
  Dfa out = lang;
  for (int v = 0; v < lang.numStates(); ++v)
    out.setAccepting(v, lang.accepting(lang.next(v, s)));
  return out;
}

}  // namespace

Dfa FreeModel::leftMultLetter(Letter s, const Dfa& lang, const Dfa& nf) const {
  // nf(s w) is either the left quotient by s^-1 (when w cancels) or the
  // raw prepension; non-reduced junk dies in the nf intersection.
  Dfa part1 = leftQuotientLetter(inv(s), lang);
  Dfa part2 = prependLetter(s, lang);
  Dfa uni = Dfa::product(part1, part2, Dfa::BoolOp::Or);
  return Dfa::product(uni, nf, Dfa::BoolOp::And).minimized();
}

Dfa FreeModel::rightMultLetter(const Dfa& lang, Letter s, const Dfa& nf) const {
  Dfa part1 = rightQuotientLetter(lang, inv(s));
  Dfa part2 = appendLetter(lang, s);
  Dfa uni = Dfa::product(part1, part2, Dfa::BoolOp::Or);
  return Dfa::product(uni, nf, Dfa::BoolOp::And).minimized();
}

// ---------------------------------------------------------------------
// VaModel

std::vector<int64_t> VaModel::applyF(int f, const std::vector<int64_t>& v) const {
  std::vector<int64_t> out(static_cast<size_t>(rank), 0);
  for (int i = 0; i < rank; ++i)
    out[static_cast<size_t>(permOf[static_cast<size_t>(f)][static_cast<size_t>(i)])] =
        signOf[static_cast<size_t>(f)][static_cast<size_t>(i)] * v[static_cast<size_t>(i)];
  return out;
}

VaElem VaModel::mul(const VaElem& a, const VaElem& b) const {
  VaElem out;
  out.v = applyF(a.f, b.v);
  for (int i = 0; i < rank; ++i) out.v[static_cast<size_t>(i)] += a.v[static_cast<size_t>(i)];
  out.f = mulF(a.f, b.f);
  return out;
}

VaElem VaModel::inverse(const VaElem& a) const {
  VaElem out;
  std::vector<int64_t> neg = a.v;
  for (auto& x : neg) x = -x;
  out.f = invF(a.f);
  out.v = applyF(out.f, neg);
  return out;
}

VaElem VaModel::elemOfWord(const Letters& w) const {
  VaElem e = identityElem();
  for (Letter l : w) {
    VaElem le = identityElem();
    if (l < 2 * rank) {
      le.v[static_cast<size_t>(l / 2)] = (l % 2 == 0) ? 1 : -1;
    } else {
      le.f = tLetterValue[static_cast<size_t>(l - 2 * rank)];
    }
    e = mul(e, le);
  }
  return e;
}

Letters VaModel::wordOfElem(const VaElem& e) const {
  Letters w;
  for (int i = 0; i < rank; ++i) {
    int64_t c = e.v[static_cast<size_t>(i)];
    Letter pos = static_cast<Letter>(2 * i), neg = static_cast<Letter>(2 * i + 1);
    for (int64_t k = 0; k < (c >= 0 ? c : -c); ++k) w.push_back(c >= 0 ? pos : neg);
  }
  const Letters& fw = fWord[static_cast<size_t>(e.f)];
  w.insert(w.end(), fw.begin(), fw.end());
  return w;
}

namespace {

// {count : walking `letter` from p lands on q}, including count 0 when
// skip_zero is false.
EpSet walkBits(const Dfa& d, int p, Letter letter, int q, bool skip_zero) {
  std::vector<int> seq{p};
  std::map<int, size_t> seen{{p, 0}};
  size_t mu = 0, lambda = 0;
  int cur = p;
  while (true) {
    cur = d.next(cur, letter);
    auto it = seen.find(cur);
    if (it != seen.end()) {
      mu = it->second;
      lambda = seq.size() - it->second;
      break;
    }
    seen.emplace(cur, seq.size());
    seq.push_back(cur);
  }
  EpSet s;
  size_t from = skip_zero ? 1 : 0;
  // counts: index i corresponds to count i + (skip_zero ? 1 : 0)
  for (size_t i = from; i < mu; ++i) s.head.push_back(seq[i] == q);
  if (mu < from) {
    // the cycle starts before `from`: rotate the cycle so indexing works
    size_t off = (from - mu) % lambda;
    for (size_t j = 0; j < lambda; ++j)
      s.cyc.push_back(seq[mu + (off + j) % lambda] == q);
  } else {
    for (size_t j = 0; j < lambda; ++j) s.cyc.push_back(seq[mu + j] == q);
  }
  return s;
}

ZSet walkSet(const Dfa& d, int p, int block, int q) {
  ZSet z;
  z.pos = walkBits(d, p, static_cast<Letter>(2 * block), q, false);
  z.neg = walkBits(d, p, static_cast<Letter>(2 * block + 1), q, true);
  return z;
}

}  // namespace

std::vector<VaModel::Piece> VaModel::decompose(const Dfa& lang) const {
  std::vector<Piece> pieces;
  int n = lang.numStates();
  // state tuples (start = q0, q1, ..., q_rank), then the f word
  std::vector<std::vector<int>> paths{{lang.start()}};
  for (int b = 0; b < rank; ++b) {
    std::vector<std::vector<int>> nxt;
    for (const auto& path : paths)
      for (int q = 0; q < n; ++q) {
        ZSet z = walkSet(lang, path.back(), b, q);
        if (z.empty()) continue;
        auto p2 = path;
        p2.push_back(q);
        nxt.push_back(std::move(p2));
      }
    paths = std::move(nxt);
  }
  for (const auto& path : paths) {
    std::vector<ZSet> blocks;
    for (int b = 0; b < rank; ++b)
      blocks.push_back(walkSet(lang, path[static_cast<size_t>(b)], b,
                               path[static_cast<size_t>(b + 1)]));
    for (int f = 0; f < fsize; ++f) {
      int end = lang.run(path.back(), fWord[static_cast<size_t>(f)]);
      if (!lang.accepting(end)) continue;
      pieces.push_back(Piece{blocks, f});
    }
  }
  return pieces;
}

Dfa VaModel::assemble(const std::vector<Piece>& pieces, const Dfa& nf) const {
  Nfa n(nf.alphabetSize());
  int start = n.addState(false);
  n.setStart(start);
  for (const auto& piece : pieces) {
    int in = start;
    bool dead_piece = false;
    for (int b = 0; b < rank && !dead_piece; ++b) {
      const ZSet& z = piece.blocks[static_cast<size_t>(b)];
      if (z.empty()) {
        dead_piece = true;
        break;
      }
      int out = n.addState(false);
      if (z.bit(0)) n.addEps(in, out);
      for (int side = 0; side < 2; ++side) {
        // Chain of nodes, one per letter count j = 1..H+C; the node for
        // count j carries an exit iff the EpSet bit for that count is
        // set (pos side indexes bits by j, neg side by j-1). With a
        // cycle, the last node wraps back to the first in-cycle node.
        const EpSet& ep = side == 0 ? z.pos : z.neg;
        Letter letter = static_cast<Letter>(2 * b + side);
        size_t H = ep.head.size(), C = ep.cyc.size();
        size_t total = H + C;
        std::vector<int> nodes;
        int prev = in;
        for (size_t j = 1; j <= total; ++j) {
          long long bit_index = side == 0 ? static_cast<long long>(j)
                                          : static_cast<long long>(j) - 1;
          int node = n.addState(false);
          n.addEdge(prev, letter, node);
          if (ep.bit(bit_index)) n.addEps(node, out);
          nodes.push_back(node);
          prev = node;
        }
        if (C > 0 && !nodes.empty()) n.addEdge(nodes[total - 1], letter, nodes[H]);
      }
      in = out;
    }
    if (dead_piece) continue;
    // finite-part word
    int cur = in;
    for (Letter l : fWord[static_cast<size_t>(piece.f)]) {
      int nx = n.addState(false);
      n.addEdge(cur, l, nx);
      cur = nx;
    }
    n.setAccepting(cur, true);
  }
  Dfa d = n.determinized();
  return Dfa::product(d, nf, Dfa::BoolOp::And).minimized();
}

Dfa VaModel::leftMultLetter(Letter s, const Dfa& lang, const Dfa& nf) const {
  auto pieces = decompose(lang);
  std::vector<Piece> out;
  for (auto& p : pieces) {
    Piece q = p;
    if (s < 2 * rank) {
      int block = s / 2;
      long long delta = (s % 2 == 0) ? 1 : -1;
      q.blocks[static_cast<size_t>(block)] =
          q.blocks[static_cast<size_t>(block)].shifted(delta);
    } else {
      int t = tLetterValue[static_cast<size_t>(s - 2 * rank)];
      // (v, f) -> (M_t v, t*f); M_t is a signed permutation, so the
      // product-of-blocks shape is preserved with blocks permuted.
      std::vector<ZSet> nb(static_cast<size_t>(rank));
      for (int i = 0; i < rank; ++i) {
        ZSet z = p.blocks[static_cast<size_t>(i)];
        if (signOf[static_cast<size_t>(t)][static_cast<size_t>(i)] < 0) z = z.negated();
        nb[static_cast<size_t>(permOf[static_cast<size_t>(t)][static_cast<size_t>(i)])] =
            std::move(z);
      }
      q.blocks = std::move(nb);
      q.f = mulF(t, p.f);
    }
    out.push_back(std::move(q));
  }
  return assemble(out, nf);
}

Dfa VaModel::rightMultLetter(const Dfa& lang, Letter s, const Dfa& nf) const {
  auto pieces = decompose(lang);
  std::vector<Piece> out;
  for (auto& p : pieces) {
    Piece q = p;
    if (s < 2 * rank) {
      int block = s / 2;
      long long delta = (s % 2 == 0) ? 1 : -1;
      // (v, f) * (delta e_block, 0) = (v + delta * M_f e_block, f)
      int tgt = permOf[static_cast<size_t>(p.f)][static_cast<size_t>(block)];
      long long d2 = delta * signOf[static_cast<size_t>(p.f)][static_cast<size_t>(block)];
      q.blocks[static_cast<size_t>(tgt)] = q.blocks[static_cast<size_t>(tgt)].shifted(d2);
    } else {
      int t = tLetterValue[static_cast<size_t>(s - 2 * rank)];
      q.f = mulF(p.f, t);
    }
    out.push_back(std::move(q));
  }
  return assemble(out, nf);
}

// ---------------------------------------------------------------------
// VaSubgroup

VaSubgroup::VaSubgroup(const VaModel& model, const std::vector<VaElem>& gens)
    : gens_(gens), lat_(model.rank) {
  std::vector<VaElem> symmetric;
  for (const auto& g : gens) {
    symmetric.push_back(g);
    symmetric.push_back(model.inverse(g));
  }
  // BFS over finite parts for the quotient F0 and transversal reps
  reps_.clear();
  reps_.emplace(0, model.identityElem());
  std::deque<int> todo{0};
  while (!todo.empty()) {
    int f = todo.front();
    todo.pop_front();
    for (const auto& g : symmetric) {
      VaElem e = model.mul(reps_.at(f), g);
      if (!reps_.count(e.f)) {
        reps_.emplace(e.f, e);
        todo.push_back(e.f);
      }
    }
  }
  for (const auto& [f, e] : reps_) f0_.push_back(f);
  std::sort(f0_.begin(), f0_.end());
  // Schreier generators of the abelian kernel
  std::vector<std::vector<int64_t>> lat_gens;
  for (const auto& [f, rep] : reps_) {
    for (const auto& g : symmetric) {
      VaElem u = model.mul(rep, g);
      VaElem sch = model.mul(u, model.inverse(reps_.at(u.f)));
      if (sch.f != 0) throw Error(ErrorCode::Internal, "schreier generator has finite part");
      lat_gens.push_back(sch.v);
    }
  }
  lat_ = Lattice::fromGenerators(model.rank, lat_gens);
  // canonical reps: reduce vectors mod the lattice
  for (auto& [f, rep] : reps_) rep.v = lat_.reduce(rep.v);
}

const VaElem& VaSubgroup::rep(int f) const {
  auto it = reps_.find(f);
  if (it == reps_.end()) throw Error(ErrorCode::Internal, "rep for absent finite part");
  return it->second;
}

bool VaSubgroup::contains(const VaElem& e) const {
  // stratum f of the subgroup is the coset rep_f.v + L
  auto it = reps_.find(e.f);
  if (it == reps_.end()) return false;
  std::vector<int64_t> d(e.v.size());
  for (size_t i = 0; i < d.size(); ++i) d[i] = e.v[i] - it->second.v[i];
  return lat_.contains(d);
}

bool VaSubgroup::isTrivial() const {
  return lat_.rank() == 0 && f0_.size() == 1;
}

bool VaSubgroup::isFinite() const { return lat_.rank() == 0; }

VaSubgroup VaSubgroup::conjugated(const VaModel& model, const VaElem& g) const {
  std::vector<VaElem> ng;
  VaElem gi = model.inverse(g);
  for (const auto& h : gens_) ng.push_back(model.mul(model.mul(g, h), gi));
  return VaSubgroup(model, ng);
}

VaSubgroup VaSubgroup::intersect(const VaModel& model, const VaSubgroup& other) const {
  Lattice li = lat_.intersect(other.lat_);
  std::vector<VaElem> gens;
  for (const auto& row : li.basis()) gens.push_back(VaElem{row, 0});
  // common strata: f in both F0 with intersecting coset strata
  Lattice sum = lat_.sum(other.lat_);
  for (int f : f0_) {
    if (f == 0) continue;
    auto it = other.reps_.find(f);
    if (it == other.reps_.end()) continue;
    const auto& w1 = rep(f).v;
    const auto& w2 = it->second.v;
    std::vector<int64_t> d(w1.size());
    for (size_t i = 0; i < d.size(); ++i) d[i] = w2[i] - w1[i];
    if (!sum.contains(d)) continue;
    // find u in lat_ with d - u in other.lat_
    std::vector<std::vector<int64_t>> rows = lat_.basis();
    for (const auto& r : other.lat_.basis()) rows.push_back(r);
    auto coeff = solveRowCombination(rows, lat_.dim(), d);
    if (!coeff) continue;
    std::vector<int64_t> w = w1;
    for (size_t i = 0; i < lat_.basis().size(); ++i)
      for (int c = 0; c < lat_.dim(); ++c)
        w[static_cast<size_t>(c)] += (*coeff)[i] * lat_.basis()[i][static_cast<size_t>(c)];
    gens.push_back(VaElem{w, f});
  }
  return VaSubgroup(model, gens);
}

std::optional<int64_t> VaSubgroup::indexOver(const VaModel& model, const VaSubgroup& sub) const {
  (void)model;
  auto li = lat_.indexOver(sub.lat_);
  if (!li) return std::nullopt;
  return *li * static_cast<int64_t>(f0_.size() / sub.f0_.size());
}

std::optional<std::vector<VaModel::Piece>> VaSubgroup::languagePieces(const VaModel& model) const {
  int n = model.rank;
  // per-axis minimal periods inside the lattice
  std::vector<std::optional<int64_t>> axis(static_cast<size_t>(n));
  std::vector<std::vector<int64_t>> axis_rows;
  for (int i = 0; i < n; ++i) {
    std::vector<int64_t> e(static_cast<size_t>(n), 0);
    e[static_cast<size_t>(i)] = 1;
    Lattice ax = Lattice::fromGenerators(n, {e});
    Lattice cut = lat_.intersect(ax);
    if (cut.rank() == 1) {
      axis[static_cast<size_t>(i)] = cut.basis()[0][static_cast<size_t>(i)];
      axis_rows.push_back(cut.basis()[0]);
    }
  }
  std::vector<VaModel::Piece> pieces;
  if (lat_.rank() == n) {
    // full rank: membership in a coset depends only on residues mod the
    // per-axis periods
    int64_t cells = 1;
    std::vector<int64_t> d(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      d[static_cast<size_t>(i)] = *axis[static_cast<size_t>(i)];
      cells *= d[static_cast<size_t>(i)];
      if (cells > 4096) return std::nullopt;
    }
    // residue classes of the lattice
    std::set<std::vector<int64_t>> residues;
    std::deque<std::vector<int64_t>> todo{std::vector<int64_t>(static_cast<size_t>(n), 0)};
    residues.insert(todo.front());
    while (!todo.empty()) {
      auto v = todo.front();
      todo.pop_front();
      for (const auto& b : lat_.basis()) {
        auto w = v;
        for (int c = 0; c < n; ++c)
          w[static_cast<size_t>(c)] =
              ((w[static_cast<size_t>(c)] + b[static_cast<size_t>(c)]) % d[static_cast<size_t>(c)] +
               d[static_cast<size_t>(c)]) %
              d[static_cast<size_t>(c)];
        if (residues.insert(w).second) todo.push_back(w);
      }
    }
    for (int f : f0_) {
      const auto& w = rep(f).v;
      for (const auto& rho : residues) {
        VaModel::Piece piece;
        piece.f = f;
        for (int i = 0; i < n; ++i)
          piece.blocks.push_back(ZSet::residue(d[static_cast<size_t>(i)],
                                               rho[static_cast<size_t>(i)] + w[static_cast<size_t>(i)]));
        pieces.push_back(std::move(piece));
      }
    }
    return pieces;
  }
  // axis-decomposable case
  Lattice axsum = Lattice::fromGenerators(n, axis_rows);
  if (!(axsum == lat_)) return std::nullopt;
  for (int f : f0_) {
    const auto& w = rep(f).v;
    VaModel::Piece piece;
    piece.f = f;
    for (int i = 0; i < n; ++i) {
      if (axis[static_cast<size_t>(i)])
        piece.blocks.push_back(
            ZSet::residue(*axis[static_cast<size_t>(i)], w[static_cast<size_t>(i)]));
      else
        piece.blocks.push_back(ZSet::single(w[static_cast<size_t>(i)]));
    }
    pieces.push_back(std::move(piece));
  }
  return pieces;
}

std::string VaSubgroup::canonicalKey(const VaModel& model) const {
  (void)model;
  std::string k = "L:";
  for (const auto& row : lat_.basis()) {
    for (int64_t x : row) {
      k += std::to_string(x);
      k += ',';
    }
    k += ';';
  }
  k += "F:";
  for (int f : f0_) {
    k += std::to_string(f);
    k += '(';
    for (int64_t x : rep(f).v) {
      k += std::to_string(x);
      k += ',';
    }
    k += ')';
  }
  return k;
}

}  // namespace dualcube
