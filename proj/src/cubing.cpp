// Copyright (c) 2026 The dualcube authors
// SPDX-License-Identifier: Apache-2.0

#include "dualcube/cubing.hpp"

#include <algorithm>
#include <array>
#include <deque>

#include "dualcube/errors.hpp"

namespace dualcube {

nlohmann::json Validation::toJson() const {
  nlohmann::json j;
  j["h_proper"] = proper.toJson();
  j["h_almost_invariant"] = almost_invariant.toJson();
  j["left_invariant_HA_eq_A"] = left_invariant.toJson();
  j["right_invariant_AH_eq_A"] = right_invariant.toJson();
  return j;
}

const Validation& Triple::requireValidated() const {
  if (!validation || !validation->cubeReady())
    throw Error(ErrorCode::ValidationMissing,
                "triple lacks validated premises (H-proper, H-almost-invariant, HA=A)");
  return *validation;
}

Validation validateTriple(const SubgroupRep& h, const RegSet& a) {
  Validation v;
  v.proper = isHProper(a, h);
  v.almost_invariant = isAlmostInvariant(a, h);
  v.left_invariant = invarianceCheck(a, h, InvarianceSide::Left);
  v.right_invariant = invarianceCheck(a, h, InvarianceSide::Right);
  return v;
}

// ---------------------------------------------------------------------
// SigmaView

SigmaView::SigmaView(const Triple& t, int radius) : triple_(&t), radius_(radius) {
  const GroupSpec& g = *t.group;
  auto ball = g.ball(radius);
  for (const auto& w : ball) {
    RegSet trans = t.a.leftTranslate(w);
    RegSet comp = trans.complemented();
    bool trans_pos = trans.contains(g.identity());
    RegSet pos = trans_pos ? trans : comp;
    RegSet neg = trans_pos ? comp : trans;
    std::string key = pos.key();
    if (by_key_.count(key)) continue;
    int id = static_cast<int>(pairs_.size());
    by_key_.emplace(key, std::make_pair(id, 0));
    by_key_.emplace(neg.key(), std::make_pair(id, 1));
    pairs_.push_back(Pair{std::move(pos), std::move(neg), w});
    if (pair_of_a_ == -1 && w.empty()) pair_of_a_ = id;
  }
  // oriented inclusion table
  int n2 = 2 * numPairs();
  incl_.assign(static_cast<size_t>(n2), std::vector<bool>(static_cast<size_t>(n2), false));
  for (int h1 = 0; h1 < n2; ++h1)
    for (int h2 = 0; h2 < n2; ++h2) {
      if (h1 == h2) {
        incl_[static_cast<size_t>(h1)][static_cast<size_t>(h2)] = true;
        continue;
      }
      incl_[static_cast<size_t>(h1)][static_cast<size_t>(h2)] =
          side(h2 / 2, h2 % 2).includes(side(h1 / 2, h1 % 2));
    }
}

const RegSet& SigmaView::side(int pair, int s) const {
  const Pair& p = pairs_[static_cast<size_t>(pair)];
  return s == 0 ? p.pos : p.neg;
}

bool SigmaView::includesOriented(int h1, int h2) const {
  return incl_[static_cast<size_t>(h1)][static_cast<size_t>(h2)];
}

std::vector<std::pair<int, int>> SigmaView::emptyCorners(int p, int q) const {
  // corner (s, t) = side(p, s) cap side(q, t); empty iff side(p, s)
  // included in the opposite side of q
  std::vector<std::pair<int, int>> res;
  for (int s = 0; s < 2; ++s)
    for (int tt = 0; tt < 2; ++tt)
      if (includesOriented(2 * p + s, 2 * q + (1 - tt))) res.push_back({s, tt});
  return res;
}

SigmaView::Nesting SigmaView::nesting(int p, int q) const {
  return emptyCorners(p, q).empty() ? Nesting::Crossing : Nesting::Nested;
}

int SigmaView::width(std::vector<int>* witness) const {
  int n = numPairs();
  std::vector<int> best;
  std::vector<int> cur;
  // branch and bound over the crossing graph
  std::function<void(int)> grow = [&](int from) {
    if (static_cast<int>(cur.size()) > static_cast<int>(best.size())) best = cur;
    for (int cand = from; cand < n; ++cand) {
      bool ok = true;
      for (int c : cur) ok = ok && nesting(c, cand) == Nesting::Crossing;
      if (!ok) continue;
      cur.push_back(cand);
      grow(cand + 1);
      cur.pop_back();
    }
  };
  grow(0);
  if (witness) *witness = best;
  return static_cast<int>(best.size());
}

std::optional<std::pair<int, int>> SigmaView::locate(const RegSet& set) const {
  auto it = by_key_.find(set.key());
  if (it == by_key_.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------------
// Dual complex construction

namespace {

// vertices between u and v (agreeing where they agree), found by
// peeling one wall at a time; exactly the interval of the complex
std::vector<VertexSides> intervalVertices(const SigmaView& sv, const VertexSides& u,
                                          const VertexSides& v) {
  std::set<VertexSides> seen{u};
  std::deque<VertexSides> todo{u};
  int n = sv.numPairs();
  while (!todo.empty()) {
    VertexSides w = todo.front();
    todo.pop_front();
    for (int p = 0; p < n; ++p) {
      if (w[static_cast<size_t>(p)] == v[static_cast<size_t>(p)]) continue;
      VertexSides w2 = w;
      w2[static_cast<size_t>(p)] = v[static_cast<size_t>(p)];
      if (seen.count(w2)) continue;
      // incremental validity: only constraints touching p can break
      bool ok = true;
      int hp = 2 * p + (w2[static_cast<size_t>(p)] ? 1 : 0);
      for (int q = 0; q < n && ok; ++q) {
        if (q == p) continue;
        int hq = 2 * q + (w2[static_cast<size_t>(q)] ? 1 : 0);
        if (sv.includesOriented(hp, hq ^ 1) || sv.includesOriented(hq, hp ^ 1)) ok = false;
      }
      if (!ok) continue;
      seen.insert(w2);
      todo.push_back(w2);
    }
  }
  return std::vector<VertexSides>(seen.begin(), seen.end());
}

VertexSides principalSides(const SigmaView& sv, const Word& g) {
  VertexSides sides(static_cast<size_t>(sv.numPairs()));
  for (int p = 0; p < sv.numPairs(); ++p)
    sides[static_cast<size_t>(p)] = !sv.side(p, 0).contains(g);
  return sides;
}

}  // namespace

CubeComplexView buildDual(const Triple& t, int radius) {
  t.requireValidated();
  CubeComplexView x;
  x.sigma = std::make_shared<SigmaView>(t, radius);
  const SigmaView& sv = *x.sigma;
  const GroupSpec& g = *t.group;
  x.ball = g.ball(radius);
  x.margin = std::max(1, radius / 2);

  auto internVertex = [&x](const VertexSides& sides, int rad) {
    auto it = x.vertex_ids.find(sides);
    if (it != x.vertex_ids.end()) {
      x.vertex_rad[static_cast<size_t>(it->second)] =
          std::min(x.vertex_rad[static_cast<size_t>(it->second)], rad);
      return it->second;
    }
    int id = static_cast<int>(x.vertices.size());
    x.vertices.push_back(sides);
    x.vertex_rad.push_back(rad);
    x.vertex_ids.emplace(sides, id);
    return id;
  };

  // principal vertices
  std::vector<std::pair<VertexSides, int>> principal;  // sides, |g|
  for (const auto& w : x.ball) {
    VertexSides sides = principalSides(sv, w);
    int id = internVertex(sides, static_cast<int>(w.size()));
    x.principal_of.push_back({id, static_cast<int>(w.size())});
    x.principal_by_word.emplace(g.formatWord(w), id);
    principal.push_back({std::move(sides), static_cast<int>(w.size())});
  }

  // intervals between principal vertices
  size_t base_count = principal.size();
  for (size_t i = 0; i < base_count; ++i)
    for (size_t j = i + 1; j < base_count; ++j) {
      int rad = std::max(principal[i].second, principal[j].second);
      for (auto& sides : intervalVertices(sv, principal[i].first, principal[j].first))
        internVertex(sides, rad);
    }

  // close under medians (majority vote is valid and between each pair)
  bool grew = true;
  while (grew) {
    grew = false;
    size_t n = x.vertices.size();
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j)
        for (size_t k = j + 1; k < n; ++k) {
          VertexSides m(static_cast<size_t>(sv.numPairs()));
          for (int p = 0; p < sv.numPairs(); ++p) {
            int votes = static_cast<int>(x.vertices[i][static_cast<size_t>(p)]) +
                        static_cast<int>(x.vertices[j][static_cast<size_t>(p)]) +
                        static_cast<int>(x.vertices[k][static_cast<size_t>(p)]);
            m[static_cast<size_t>(p)] = votes >= 2;
          }
          if (!x.vertex_ids.count(m)) {
            int rad = std::max({x.vertex_rad[i], x.vertex_rad[j], x.vertex_rad[k]});
            internVertex(m, rad);
            grew = true;
          }
        }
    if (x.vertices.size() > 100000)
      throw Error(ErrorCode::ResourceLimit, "dual complex vertex cap exceeded");
  }

  // edges: vertices differing in exactly one pair
  x.adj.assign(x.vertices.size(), {});
  for (size_t i = 0; i < x.vertices.size(); ++i) {
    for (int p = 0; p < sv.numPairs(); ++p) {
      VertexSides w = x.vertices[i];
      w[static_cast<size_t>(p)] = !w[static_cast<size_t>(p)];
      auto it = x.vertex_ids.find(w);
      if (it == x.vertex_ids.end() || it->second < static_cast<int>(i)) continue;
      x.edges.push_back({static_cast<int>(i), it->second, p});
      x.adj[i].push_back({it->second, p});
      x.adj[static_cast<size_t>(it->second)].push_back({static_cast<int>(i), p});
    }
  }

  // squares and top dimension via flippable sets
  std::set<int> hyper;
  for (const auto& e : x.edges) hyper.insert(e.pair);
  x.hyperplanes.assign(hyper.begin(), hyper.end());

  auto hasVertex = [&x](const VertexSides& w) { return x.vertex_ids.count(w) != 0; };
  for (size_t i = 0; i < x.vertices.size(); ++i) {
    std::vector<int> flippable;
    for (auto [nb, p] : x.adj[i]) flippable.push_back(p);
    std::sort(flippable.begin(), flippable.end());
    // squares with this vertex as the least corner
    for (size_t a = 0; a < flippable.size(); ++a)
      for (size_t b = a + 1; b < flippable.size(); ++b) {
        int p = flippable[a], q = flippable[b];
        VertexSides w = x.vertices[i];
        VertexSides wp = w, wq = w, wpq = w;
        wp[static_cast<size_t>(p)] = !wp[static_cast<size_t>(p)];
        wq[static_cast<size_t>(q)] = !wq[static_cast<size_t>(q)];
        wpq[static_cast<size_t>(p)] = !wpq[static_cast<size_t>(p)];
        wpq[static_cast<size_t>(q)] = !wpq[static_cast<size_t>(q)];
        if (!hasVertex(wpq)) continue;
        int vi = static_cast<int>(i);
        int vp = x.vertex_ids.at(wp), vq = x.vertex_ids.at(wq), vpq = x.vertex_ids.at(wpq);
        if (vi < vp && vi < vq && vi < vpq) {
          x.squares.push_back({vi, vp, vpq, vq});
          x.square_pairs.push_back({p, q});
        }
      }
    // top dimension: grow flippable subsets whose full cube closure exists
    std::function<int(std::vector<int>&, size_t)> growCube =
        [&](std::vector<int>& cur, size_t from) -> int {
      int best = static_cast<int>(cur.size());
      for (size_t c = from; c < flippable.size(); ++c) {
        cur.push_back(flippable[c]);
        // all 2^|cur| corners present?
        bool full = true;
        for (size_t mask = 0; mask < (size_t{1} << cur.size()) && full; ++mask) {
          VertexSides w = x.vertices[i];
          for (size_t bit = 0; bit < cur.size(); ++bit)
            if (mask & (size_t{1} << bit)) {
              size_t p = static_cast<size_t>(cur[bit]);
              w[p] = !w[p];
            }
          full = hasVertex(w);
        }
        if (full) best = std::max(best, growCube(cur, c + 1));
        cur.pop_back();
      }
      return best;
    };
    std::vector<int> cur;
    x.dimension = std::max(x.dimension, growCube(cur, 0));
  }
  return x;
}

int CubeComplexView::principalVertex(const Word& g) const {
  auto it = principal_by_word.find(sigma->triple().group->formatWord(g));
  return it == principal_by_word.end() ? -1 : it->second;
}

int CubeComplexView::distance(int u, int v) const {
  int d = 0;
  const auto& a = vertices[static_cast<size_t>(u)];
  const auto& b = vertices[static_cast<size_t>(v)];
  for (size_t p = 0; p < a.size(); ++p) d += a[p] != b[p];
  return d;
}

int CubeComplexView::medianVertex(int u, int v, int w) const {
  VertexSides m(vertices[static_cast<size_t>(u)].size());
  for (size_t p = 0; p < m.size(); ++p) {
    int votes = static_cast<int>(vertices[static_cast<size_t>(u)][p]) +
                static_cast<int>(vertices[static_cast<size_t>(v)][p]) +
                static_cast<int>(vertices[static_cast<size_t>(w)][p]);
    m[p] = votes >= 2;
  }
  auto it = vertex_ids.find(m);
  return it == vertex_ids.end() ? -1 : it->second;
}

std::string CubeComplexView::toDot(const GroupSpec& g) const {
  (void)g;
  std::string s = "graph dual_complex {\n  node [shape=point];\n";
  static const char* palette[] = {"black",  "red",    "blue",   "green",
                                  "orange", "purple", "brown",  "cyan",
                                  "magenta", "gray"};
  for (size_t i = 0; i < vertices.size(); ++i)
    s += "  v" + std::to_string(i) + ";\n";
  for (const auto& e : edges)
    s += "  v" + std::to_string(e.u) + " -- v" + std::to_string(e.v) + " [color=" +
         palette[static_cast<size_t>(e.pair) % 10] + "];\n";
  s += "}\n";
  return s;
}

nlohmann::json CubeComplexView::toJson(const GroupSpec& g) const {
  nlohmann::json j;
  j["format"] = 1;
  j["radius"] = sigma->radius();
  j["margin"] = margin;
  nlohmann::json pairs = nlohmann::json::array();
  for (int p = 0; p < sigma->numPairs(); ++p)
    pairs.push_back({{"rep", g.formatWord(sigma->repElement(p))},
                     {"key", sigma->side(p, 0).fingerprint()}});
  j["halfspace_pairs"] = pairs;
  nlohmann::json verts = nlohmann::json::array();
  for (size_t i = 0; i < vertices.size(); ++i) {
    // canonical description: nearest principal base plus flip set
    int best = -1, bestd = 1 << 30;
    for (const auto& [word, id] : principal_by_word) {
      int d = distance(static_cast<int>(i), id);
      if (d < bestd) {
        bestd = d;
        best = id;
      }
    }
    std::string base;
    for (const auto& [word, id] : principal_by_word)
      if (id == best) {
        base = word;
        break;
      }
    nlohmann::json flips = nlohmann::json::array();
    for (size_t p = 0; p < vertices[i].size(); ++p)
      if (vertices[i][p] != vertices[static_cast<size_t>(best)][p])
        flips.push_back(static_cast<int>(p));
    verts.push_back({{"id", i}, {"base", base}, {"flips", flips}});
  }
  j["vertices"] = verts;
  nlohmann::json es = nlohmann::json::array();
  for (const auto& e : edges) es.push_back({{"u", e.u}, {"v", e.v}, {"exits_pair", e.pair}});
  j["edges"] = es;
  nlohmann::json sq = nlohmann::json::array();
  for (size_t i = 0; i < squares.size(); ++i)
    sq.push_back({{"vertices", squares[i]},
                  {"pairs", {square_pairs[i].first, square_pairs[i].second}}});
  j["squares"] = sq;
  j["dimension"] = dimension;
  j["hyperplanes"] = hyperplanes;
  return j;
}

nlohmann::json CubeComplexView::summary() const {
  nlohmann::json j;
  j["radius"] = sigma->radius();
  j["halfspace_pairs"] = sigma->numPairs();
  j["vertices"] = vertices.size();
  j["edges"] = edges.size();
  j["squares"] = squares.size();
  j["dimension"] = dimension;
  j["hyperplanes"] = hyperplanes.size();
  return j;
}

// ---------------------------------------------------------------------

IntervalView interval(const CubeComplexView& x, const Word& x1, const Word& x2) {
  const GroupSpec& g = *x.sigma->triple().group;
  Word c1 = g.normalize(x1), c2 = g.normalize(x2);
  int v1 = x.principalVertex(c1), v2 = x.principalVertex(c2);
  if (v1 < 0 || v2 < 0)
    throw Error(ErrorCode::TruncationEscape, "interval endpoint outside the truncation");
  IntervalView iv;
  const auto& a = x.vertices[static_cast<size_t>(v1)];
  const auto& b = x.vertices[static_cast<size_t>(v2)];
  for (size_t p = 0; p < a.size(); ++p)
    if (a[p] != b[p]) iv.separating.push_back(static_cast<int>(p));
  iv.length = static_cast<int>(iv.separating.size());
  for (auto& sides : intervalVertices(*x.sigma, a, b)) {
    auto it = x.vertex_ids.find(sides);
    if (it == x.vertex_ids.end())
      throw Error(ErrorCode::Internal, "interval vertex missing from complex");
    iv.vertex_ids.push_back(it->second);
  }
  std::sort(iv.vertex_ids.begin(), iv.vertex_ids.end());
  return iv;
}

bool equivarianceCheck(const CubeComplexView& x, const Word& g, const Word& x1, const Word& x2) {
  const GroupSpec& spec = *x.sigma->triple().group;
  const SigmaView& sv = *x.sigma;
  Word cg = spec.normalize(g);
  IntervalView src = interval(x, x1, x2);
  IntervalView dst = interval(x, spec.multiply(cg, x1), spec.multiply(cg, x2));
  // oriented image of each pair under left translation by g
  int n = sv.numPairs();
  std::vector<std::pair<int, int>> image(static_cast<size_t>(n));  // (pair, flip)
  for (int p = 0; p < n; ++p) {
    RegSet moved = sv.side(p, 0).leftTranslate(cg);
    auto loc = sv.locate(moved);
    if (!loc)
      throw Error(ErrorCode::TruncationEscape, "translated halfspace leaves the truncation");
    image[static_cast<size_t>(p)] = *loc;
  }
  std::set<VertexSides> mapped;
  for (int id : src.vertex_ids) {
    const auto& sides = x.vertices[static_cast<size_t>(id)];
    VertexSides out = x.vertices[static_cast<size_t>(dst.vertex_ids.front())];
    // only pairs in the image are determined; start from a dst vertex and
    // overwrite the determined coordinates
    for (int p = 0; p < n; ++p) {
      auto [q, flip] = image[static_cast<size_t>(p)];
      bool side = sides[static_cast<size_t>(p)];
      out[static_cast<size_t>(q)] = flip ? !side : side;
    }
    mapped.insert(out);
  }
  std::set<VertexSides> expected;
  for (int id : dst.vertex_ids) expected.insert(x.vertices[static_cast<size_t>(id)]);
  return mapped == expected;
}

CayleyComplexView buildCayleyComplex(const CubeComplexView& x, int radius) {
  const GroupSpec& g = *x.sigma->triple().group;
  CayleyComplexView c;
  c.complex = &x;
  c.radius = radius;
  for (const auto& w : g.ball(radius - 1)) {
    for (Letter l = 0; l < g.alphabetSize(); ++l) {
      Word ws = g.multiply(w, Word{Letters{l}, true});
      if (!g.inBall(ws, x.sigma->radius())) continue;
      IntervalView iv = interval(x, w, ws);
      CayleyComplexView::GenInterval gi;
      gi.g = w;
      gi.s = l;
      gi.u = x.principalVertex(w);
      gi.v = x.principalVertex(ws);
      gi.crossed = iv.separating;
      for (int id : iv.vertex_ids) c.vertex_ids.insert(id);
      c.intervals.push_back(std::move(gi));
    }
  }
  return c;
}

int CayleyComplexView::panelCrossings(int pair) const {
  std::set<std::pair<int, int>> distinct;
  for (const auto& gi : intervals) {
    if (std::find(gi.crossed.begin(), gi.crossed.end(), pair) == gi.crossed.end()) continue;
    distinct.insert({std::min(gi.u, gi.v), std::max(gi.u, gi.v)});
  }
  return static_cast<int>(distinct.size());
}

nlohmann::json CayleyComplexView::summary() const {
  nlohmann::json j;
  j["radius"] = radius;
  j["generator_intervals"] = intervals.size();
  j["vertices"] = vertex_ids.size();
  return j;
}

Verdict panellingCompactnessProbe(const Triple& t, int radius) {
  const GroupSpec& g = *t.group;
  if (radius < 3)
    return Verdict::unknown(radius, {{"note", "insufficient radius for a growth window"}});
  // crossing counts of the panelling of J = (A, A*) for growing radii
  CubeComplexView x = buildDual(t, radius);
  int pa = x.sigma->pairOfA();
  std::vector<int> counts;
  for (int r = 3; r <= radius; ++r) {
    CayleyComplexView c = buildCayleyComplex(x, r);
    counts.push_back(c.panelCrossings(pa));
  }
  nlohmann::json j;
  j["crossing_interval_counts"] = counts;
  j["window"] = {3, radius};
  // certificates: each A cap A* s^-1 is H-finite, with commensurator
  // probes on the harvested representatives
  bool all_finite = true;
  nlohmann::json certs = nlohmann::json::object();
  nlohmann::json comm = nlohmann::json::object();
  for (Letter l = 0; l < g.alphabetSize() && all_finite; ++l) {
    Word s{Letters{l}, true};
    RegSet cross = t.a.intersectWith(t.a.complemented().rightTranslate(g.inverse(s)));
    Verdict hf = isHFinite(cross, t.h);
    std::string name(1, g.letterName(l));
    certs[name] = hf.toJson();
    if (hf.isNo()) {
      j["pumpable_family"] = hf.evidence;
      j["generator"] = name;
      return Verdict::no(j);
    }
    if (hf.isUnknown()) all_finite = false;
    if (hf.isYes() && hf.evidence.contains("coset_reps"))
      for (const auto& f : hf.evidence["coset_reps"]) {
        std::string fw = f.get<std::string>();
        Verdict cp = commensuratorProbe(t.h, g.parseWord(fw));
        comm[fw] = cp.toJson();
        if (!cp.isYes()) all_finite = false;
      }
  }
  j["h_finiteness"] = certs;
  j["commensurator_probes"] = comm;
  bool stabilized = counts.size() >= 2 && counts[counts.size() - 1] == counts[counts.size() - 2];
  j["stabilized"] = stabilized;
  if (stabilized && all_finite) return Verdict::yes(j);
  return Verdict::unknown(radius, j);
}

nlohmann::json hyperplaneStabiliserProbe(const Triple& t, int radius) {
  const GroupSpec& g = *t.group;
  nlohmann::json j;
  nlohmann::json harvested = nlohmann::json::array();
  std::vector<Word> stab_elems;
  RegSet astar = t.a.complemented();
  for (const auto& w : g.ball(radius)) {
    RegSet moved = t.a.leftTranslate(w);
    bool fixes = moved.sameSet(t.a);
    bool swaps = moved.sameSet(astar);
    if (!fixes && !swaps) continue;
    nlohmann::json e;
    e["element"] = g.formatWord(w);
    e["action"] = fixes ? "fixes_sides" : "swaps_sides";
    if (t.h.mode() == SubgroupRep::Mode::Exact) e["in_h"] = t.h.memberExact(w);
    harvested.push_back(e);
    stab_elems.push_back(w);
  }
  j["harvested"] = harvested;
  // finite-index consistency: harvested elements should meet few right
  // H-cosets
  std::vector<Word> reps;
  for (const auto& w : stab_elems) {
    bool dup = false;
    for (const auto& r : reps) dup = dup || sameRightCoset(t.h, r, w);
    if (!dup) reps.push_back(w);
  }
  nlohmann::json rj = nlohmann::json::array();
  for (const auto& r : reps) rj.push_back(g.formatWord(r));
  j["right_coset_reps_of_harvest"] = rj;
  j["coset_count"] = reps.size();
  return j;
}

Verdict isTree(const Triple& t, const CubeComplexView& x) {
  std::vector<int> witness;
  int w = x.sigma->width(&witness);
  nlohmann::json j;
  j["width"] = w;
  if (x.sigma->radius() == 0) {
    j["note"] = "radius 0: single halfspace pair, vacuous";
    j["low_confidence"] = true;
    return Verdict::yes(j);
  }
  if (w >= 2) {
    const GroupSpec& g = *t.group;
    nlohmann::json pr = nlohmann::json::array();
    for (int p : witness) pr.push_back(g.formatWord(x.sigma->repElement(p)));
    j["crossing_pair_reps"] = pr;
    if (!x.squares.empty()) j["witness_square"] = x.squares.front();
    return Verdict::no(j);
  }
  // acyclicity of the 1-skeleton
  std::vector<int> parent(x.vertices.size(), -2);
  for (size_t root = 0; root < x.vertices.size(); ++root) {
    if (parent[root] != -2) continue;
    parent[root] = -1;
    std::deque<int> todo{static_cast<int>(root)};
    while (!todo.empty()) {
      int v = todo.front();
      todo.pop_front();
      for (auto [nb, p] : x.adj[static_cast<size_t>(v)]) {
        if (parent[static_cast<size_t>(nb)] == -2) {
          parent[static_cast<size_t>(nb)] = v;
          todo.push_back(nb);
        } else if (nb != parent[static_cast<size_t>(v)]) {
          j["cycle_at"] = nb;
          return Verdict::no(j);
        }
      }
    }
  }
  j["acyclic"] = true;
  // splitting readout: edge stabiliser harvest and vertex orbit sketch
  j["edge_stabiliser_harvest"] = hyperplaneStabiliserProbe(t, std::min(3, x.sigma->radius()));
  // crude vertex-orbit sketch: orbits of principal vertices under the
  // ball(1) translations that stay inside the truncation
  {
    const GroupSpec& g = *t.group;
    std::vector<int> uf(x.vertices.size());
    for (size_t i = 0; i < uf.size(); ++i) uf[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int a) {
      while (uf[static_cast<size_t>(a)] != a) {
        uf[static_cast<size_t>(a)] = uf[static_cast<size_t>(uf[static_cast<size_t>(a)])];
        a = uf[static_cast<size_t>(a)];
      }
      return a;
    };
    for (const auto& w : x.ball) {
      int vid = x.principalVertex(w);
      for (Letter l = 0; l < g.alphabetSize(); ++l) {
        Word lw = g.multiply(Word{Letters{l}, true}, w);
        int tid = x.principalVertex(lw);
        if (vid >= 0 && tid >= 0) uf[static_cast<size_t>(find(vid))] = find(tid);
      }
    }
    std::set<int> orbits;
    for (const auto& [word, id] : x.principal_by_word) orbits.insert(find(id));
    j["principal_vertex_orbit_estimate"] = orbits.size();
  }
  return Verdict::yes(j);
}

}  // namespace dualcube
