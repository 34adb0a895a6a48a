// Copyright (c) 2026 The dualcube authors
// SPDX-License-Identifier: Apache-2.0

#include "dualcube/subgroup.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "dualcube/errors.hpp"
#include "dualcube/regset.hpp"

namespace dualcube {

SubgroupRep::SubgroupRep(GroupPtr ambient, std::vector<Word> generators)
    : ambient_(std::move(ambient)), mode_(Mode::Bounded) {
  // canonical, deduplicated, identity-free generator list
  std::set<Letters> seen;
  for (auto& g : generators) {
    Word c = ambient_->normalize(g);
    if (c.empty()) continue;
    if (seen.insert(c.ls).second) gens_.push_back(std::move(c));
  }
  std::sort(gens_.begin(), gens_.end(),
            [](const Word& a, const Word& b) { return shortlexLess(a, b); });
  if (const FreeModel* fm = ambient_->freeModel()) {
    std::vector<Letters> ws;
    for (const auto& g : gens_) ws.push_back(g.ls);
    core_ = std::make_shared<StallingsCore>(fm->rank, ws);
    mode_ = Mode::Exact;
  } else if (const VaModel* vm = ambient_->vaModel()) {
    std::vector<VaElem> elems;
    for (const auto& g : gens_) elems.push_back(vm->elemOfWord(g.ls));
    va_ = std::make_shared<VaSubgroup>(*vm, elems);
    mode_ = Mode::Exact;
  } else {
    // bounded closure of the generated set within the element cap
    std::set<Letters> closure;
    std::deque<Word> todo;
    Word id = ambient_->identity();
    closure.insert(id.ls);
    todo.push_back(id);
    size_t cap = 4096;
    int radius = 0;
    while (!todo.empty() && closure.size() < cap) {
      Word w = todo.front();
      todo.pop_front();
      for (const auto& g : gens_) {
        for (const Word& t : {ambient_->multiply(w, g), ambient_->multiply(w, ambient_->inverse(g))}) {
          if (static_cast<int>(t.size()) > 12) continue;
          if (closure.insert(t.ls).second) {
            radius = std::max(radius, static_cast<int>(t.size()));
            todo.push_back(t);
          }
        }
      }
    }
    for (const auto& ls : closure) bounded_members_.push_back(Word{ls, true});
    bounded_radius_ = radius;
  }
}

bool SubgroupRep::memberExact(const Word& g) const {
  Word c = ambient_->normalize(g);
  if (core_) return core_->contains(c.ls);
  if (va_) return va_->contains(ambient_->vaModel()->elemOfWord(c.ls));
  throw Error(ErrorCode::ModeMismatch, "exact membership unavailable in bounded mode");
}

Verdict SubgroupRep::membership(const Word& g) const {
  Word c = ambient_->normalize(g);
  if (mode_ == Mode::Exact) {
    bool in = memberExact(c);
    nlohmann::json j{{"element", ambient_->formatWord(c)}};
    return in ? Verdict::yes(j) : Verdict::no(j);
  }
  for (const auto& m : bounded_members_)
    if (m.ls == c.ls) return Verdict::yes({{"found_in_closure", true}});
  return Verdict::unknown(bounded_radius_);
}

Verdict SubgroupRep::finiteness() const {
  if (core_) {
    // a subgroup of a free group is finite iff trivial
    bool triv = core_->isTrivial();
    return triv ? Verdict::yes({{"trivial", true}})
                : Verdict::no({{"core_vertices", core_->numVertices()}});
  }
  if (va_) {
    if (va_->isFinite()) {
      return Verdict::yes({{"lattice_rank", 0},
                           {"order", static_cast<int>(va_->f0().size())}});
    }
    return Verdict::no({{"lattice_rank", va_->lattice().rank()}});
  }
  return Verdict::unknown(bounded_radius_);
}

bool SubgroupRep::isTrivialExact() const {
  if (core_) return core_->isTrivial();
  if (va_) return va_->isTrivial();
  throw Error(ErrorCode::ModeMismatch, "bounded mode cannot certify triviality");
}

SubgroupRep SubgroupRep::conjugated(const Word& g) const {
  Word c = ambient_->normalize(g);
  Word ci = ambient_->inverse(c);
  std::vector<Word> ng;
  for (const auto& h : gens_) ng.push_back(ambient_->multiply(ambient_->multiply(c, h), ci));
  return SubgroupRep(ambient_, std::move(ng));
}

SubgroupRep SubgroupRep::intersect(const SubgroupRep& a, const SubgroupRep& b) {
  if (!a.ambient_->sameSpec(*b.ambient_))
    throw Error(ErrorCode::AmbientMismatch, "intersect across different groups");
  if (a.core_ && b.core_) {
    StallingsCore pb = StallingsCore::pullback(*a.core_, *b.core_);
    std::vector<Word> gens;
    for (auto& w : pb.freeBasis()) gens.push_back(Word{w, true});
    return SubgroupRep(a.ambient_, std::move(gens));
  }
  if (a.va_ && b.va_) {
    const VaModel& vm = *a.ambient_->vaModel();
    VaSubgroup is = a.va_->intersect(vm, *b.va_);
    std::vector<Word> gens;
    for (const auto& row : is.lattice().basis())
      gens.push_back(Word{vm.wordOfElem(VaElem{row, 0}), false});
    for (int f : is.f0())
      if (f != 0) gens.push_back(Word{vm.wordOfElem(is.rep(f)), false});
    return SubgroupRep(a.ambient_, std::move(gens));
  }
  throw Error(ErrorCode::ModeMismatch, "intersection requires exact backends");
}

std::optional<int64_t> SubgroupRep::indexOver(const SubgroupRep& sub) const {
  if (core_ && sub.core_) {
    // express sub generators in this subgroup's free basis; the coset
    // core over that basis is complete iff the index is finite
    int basis_rank = static_cast<int>(core_->freeBasis().size());
    if (basis_rank == 0) return sub.core_->isTrivial() ? std::optional<int64_t>(1) : std::nullopt;
    std::vector<Letters> in_basis;
    for (const auto& g : sub.gens_) {
      auto e = core_->expressInBasis(g.ls);
      if (!e) throw Error(ErrorCode::Internal, "indexOver: sub is not a subgroup of this");
      in_basis.push_back(*e);
    }
    StallingsCore k(basis_rank, in_basis);
    for (int v = 0; v < k.numVertices(); ++v)
      if (k.degree(v) < 2 * basis_rank) return std::nullopt;
    return k.numVertices();
  }
  if (va_ && sub.va_) return va_->indexOver(*ambient_->vaModel(), *sub.va_);
  throw Error(ErrorCode::ModeMismatch, "index requires exact backends");
}

std::optional<RegSet> SubgroupRep::language() const {
  if (core_) {
    Dfa raw = core_->languageDfa(ambient_->alphabetSize());
    return RegSet::fromDfa(ambient_, raw);
  }
  if (va_) {
    auto pieces = va_->languagePieces(*ambient_->vaModel());
    if (!pieces) return std::nullopt;
    Dfa d = ambient_->vaModel()->assemble(*pieces, ambient_->nfAcceptor());
    return RegSet::fromDfa(ambient_, d);
  }
  return std::nullopt;
}

std::string SubgroupRep::canonicalKey() const {
  if (core_) return "free:" + core_->canonicalKey();
  if (va_) return "va:" + va_->canonicalKey(*ambient_->vaModel());
  std::string k = "bounded:";
  for (const auto& g : gens_) k += ambient_->formatWord(g) + ",";
  return k;
}

// ---------------------------------------------------------------------

bool sameLeftCoset(const SubgroupRep& h, const Word& a, const Word& b) {
  // aH = bH iff a^-1 b in H
  const GroupSpec& g = *h.ambient();
  return h.memberExact(g.multiply(g.inverse(a), b));
}

bool sameRightCoset(const SubgroupRep& h, const Word& a, const Word& b) {
  // Ha = Hb iff b a^-1 in H
  const GroupSpec& g = *h.ambient();
  return h.memberExact(g.multiply(b, g.inverse(a)));
}

CosetSet::CosetSet(const SubgroupRep& h, std::vector<Word> reps) {
  for (auto& r : reps) {
    Word c = h.ambient()->normalize(r);
    bool dup = false;
    for (const auto& existing : cosets_)
      if (sameLeftCoset(h, existing.rep, c)) {
        dup = true;
        break;
      }
    if (!dup) cosets_.push_back(CosetId{std::move(c)});
  }
}

SubgroupRep pointwiseStabiliser(const SubgroupRep& h, const CosetSet& x) {
  if (x.size() == 0) throw Error(ErrorCode::Internal, "pointwise stabiliser of empty coset set");
  // H_X = intersection of H^x over xH in X
  std::optional<SubgroupRep> acc;
  for (const auto& c : x.cosets()) {
    SubgroupRep conj = h.conjugated(c.rep);
    if (!acc)
      acc = std::move(conj);
    else
      acc = SubgroupRep::intersect(*acc, conj);
  }
  return *acc;
}

Verdict commensuratorProbe(const SubgroupRep& h, const Word& g) {
  const GroupSpec& spec = *h.ambient();
  Word c = spec.normalize(g);
  SubgroupRep hg = h.conjugated(c);
  SubgroupRep k = SubgroupRep::intersect(h, hg);
  auto i1 = h.indexOver(k);
  auto i2 = hg.indexOver(k);
  nlohmann::json j{{"element", spec.formatWord(c)}};
  if (i1 && i2) {
    j["index_in_h"] = *i1;
    j["index_in_conjugate"] = *i2;
    return Verdict::yes(j);
  }
  j["infinite_index_side"] = i1 ? "conjugate" : "h";
  j["intersection_generators"] = [&] {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& w : k.generators()) arr.push_back(spec.formatWord(w));
    return arr;
  }();
  return Verdict::no(j);
}

SchreierGraph schreierGraph(const SubgroupRep& h, int radius) {
  const GroupSpec& g = *h.ambient();
  SchreierGraph out;
  auto ball = g.ball(radius);
  for (const auto& w : ball) {
    bool dup = false;
    for (const auto& rep : out.vertex_rep)
      if (sameRightCoset(h, rep, w)) {
        dup = true;
        break;
      }
    if (!dup) out.vertex_rep.push_back(w);
  }
  out.basepoint = 0;  // ball enumeration starts with the identity
  auto findVertex = [&](const Word& w) -> int {
    for (size_t i = 0; i < out.vertex_rep.size(); ++i)
      if (sameRightCoset(h, out.vertex_rep[i], w)) return static_cast<int>(i);
    return -1;
  };
  out.adjacency.assign(out.vertex_rep.size(),
                       std::vector<int>(static_cast<size_t>(g.alphabetSize()), -1));
  for (size_t v = 0; v < out.vertex_rep.size(); ++v)
    for (Letter l = 0; l < g.alphabetSize(); ++l) {
      Word t = g.multiply(out.vertex_rep[v], Word{Letters{l}, true});
      out.adjacency[v][static_cast<size_t>(l)] = findVertex(t);
    }
  return out;
}

std::string SchreierGraph::toDot(const GroupSpec& g) const {
  std::string s = "digraph schreier {\n  rankdir=LR;\n";
  for (size_t v = 0; v < vertex_rep.size(); ++v) {
    s += "  v" + std::to_string(v) + " [label=\"H" +
         (vertex_rep[v].empty() ? "" : "." + g.formatWord(vertex_rep[v])) + "\"";
    if (static_cast<int>(v) == basepoint) s += ", shape=doublecircle";
    s += "];\n";
  }
  for (size_t v = 0; v < vertex_rep.size(); ++v)
    for (Letter l = 0; l < g.alphabetSize(); l += 2) {
      int t = adjacency[v][static_cast<size_t>(l)];
      if (t >= 0)
        s += "  v" + std::to_string(v) + " -> v" + std::to_string(t) + " [label=\"" +
             g.letterName(l) + "\"];\n";
    }
  s += "}\n";
  return s;
}

nlohmann::json SchreierGraph::toJson(const GroupSpec& g) const {
  nlohmann::json j;
  j["format"] = 1;
  j["basepoint"] = basepoint;
  nlohmann::json verts = nlohmann::json::array();
  for (const auto& w : vertex_rep) verts.push_back(g.formatWord(w));
  j["vertices"] = verts;
  nlohmann::json edges = nlohmann::json::array();
  for (size_t v = 0; v < vertex_rep.size(); ++v)
    for (Letter l = 0; l < g.alphabetSize(); ++l) {
      int t = adjacency[v][static_cast<size_t>(l)];
      if (t >= 0)
        edges.push_back({{"from", v}, {"to", t}, {"label", std::string(1, g.letterName(l))}});
    }
  j["edges"] = edges;
  return j;
}

nlohmann::json EndsReport::toJson() const {
  nlohmann::json j;
  j["counts"] = counts;
  j["stable_value"] = stable_value;
  j["lower_bound"] = lower_bound;
  j["many_ends_evidence"] = many_ends_evidence;
  return j;
}

EndsReport relativeEndsEstimate(const SubgroupRep& h, int radius) {
  if (radius < 2) throw Error(ErrorCode::ParseError, "ends estimate needs radius >= 2");
  SchreierGraph sg = schreierGraph(h, radius);
  int n = static_cast<int>(sg.vertex_rep.size());
  // BFS distances from the basepoint
  std::vector<int> dist(static_cast<size_t>(n), -1);
  std::deque<int> todo{sg.basepoint};
  dist[static_cast<size_t>(sg.basepoint)] = 0;
  while (!todo.empty()) {
    int v = todo.front();
    todo.pop_front();
    for (int t : sg.adjacency[static_cast<size_t>(v)])
      if (t >= 0 && dist[static_cast<size_t>(t)] == -1) {
        dist[static_cast<size_t>(t)] = dist[static_cast<size_t>(v)] + 1;
        todo.push_back(t);
      }
  }
  int dmax = 0;
  for (int v = 0; v < n; ++v) dmax = std::max(dmax, dist[static_cast<size_t>(v)]);
  EndsReport rep;
  for (int r = 1; r <= dmax - 2; ++r) {
    // components of the subgraph on { d > r }, counted when they touch
    // the frontier { d = dmax }
    std::vector<int> comp(static_cast<size_t>(n), -1);
    int ncomp = 0;
    for (int v = 0; v < n; ++v) {
      if (dist[static_cast<size_t>(v)] <= r || comp[static_cast<size_t>(v)] != -1) continue;
      std::deque<int> bfs{v};
      comp[static_cast<size_t>(v)] = ncomp;
      while (!bfs.empty()) {
        int u = bfs.front();
        bfs.pop_front();
        for (int t : sg.adjacency[static_cast<size_t>(u)])
          if (t >= 0 && dist[static_cast<size_t>(t)] > r && comp[static_cast<size_t>(t)] == -1) {
            comp[static_cast<size_t>(t)] = ncomp;
            bfs.push_back(t);
          }
      }
      ++ncomp;
    }
    std::set<int> frontier_comps;
    for (int v = 0; v < n; ++v)
      if (dist[static_cast<size_t>(v)] == dmax && comp[static_cast<size_t>(v)] >= 0)
        frontier_comps.insert(comp[static_cast<size_t>(v)]);
    rep.counts.push_back(static_cast<int>(frontier_comps.size()));
  }
  size_t m = rep.counts.size();
  if (m >= 2 && rep.counts[m - 1] == rep.counts[m - 2]) {
    rep.stable_value = rep.counts[m - 1];
    rep.lower_bound = rep.stable_value;
  } else if (m >= 1) {
    bool nondecreasing = true;
    for (size_t i = 1; i < m; ++i) nondecreasing = nondecreasing && rep.counts[i] >= rep.counts[i - 1];
    rep.lower_bound = nondecreasing ? std::min(3, rep.counts[m - 1]) : 1;
  }
  if (m >= 1 && rep.counts[m - 1] >= 3) {
    bool nondecreasing = true;
    for (size_t i = 1; i < m; ++i) nondecreasing = nondecreasing && rep.counts[i] >= rep.counts[i - 1];
    rep.many_ends_evidence = nondecreasing;
  }
  return rep;
}

Verdict heightProbe(const SubgroupRep& h, int bound, int radius) {
  const GroupSpec& g = *h.ambient();
  if (h.mode() != SubgroupRep::Mode::Exact)
    return Verdict::unknown(radius, {{"note", "bounded subgroup mode"}});
  // distinct left cosets gH with representatives in the ball
  std::vector<Word> coset_reps;
  for (const auto& w : g.ball(radius)) {
    bool dup = false;
    for (const auto& r : coset_reps)
      if (sameLeftCoset(h, r, w)) {
        dup = true;
        break;
      }
    if (!dup) coset_reps.push_back(w);
  }
  // Pointwise stabilisers are conjugation-equivariant, so X may be
  // translated to contain the trivial coset: check X = {H} cup Y.
  int k = bound + 1;  // |X| = bound + 1
  if (k <= 0) return Verdict::yes({{"note", "vacuous bound"}});
  std::vector<int> idx;
  std::vector<Word> others;
  for (const auto& r : coset_reps)
    if (!r.empty()) others.push_back(r);
  int need = k - 1;
  if (need > static_cast<int>(others.size()))
    return Verdict::yes({{"note", "fewer than bound+1 cosets within radius"},
                         {"cosets_within_radius", static_cast<int>(coset_reps.size())}});
  std::vector<int> choose(static_cast<size_t>(need));
  for (int i = 0; i < need; ++i) choose[static_cast<size_t>(i)] = i;
  int checked = 0;
  while (true) {
    std::vector<Word> reps{g.identity()};
    for (int i : choose) reps.push_back(others[static_cast<size_t>(i)]);
    CosetSet x(h, reps);
    if (static_cast<int>(x.size()) == k) {
      SubgroupRep hx = pointwiseStabiliser(h, x);
      Verdict fin = hx.finiteness();
      ++checked;
      if (fin.isNo()) {
        nlohmann::json xs = nlohmann::json::array();
        for (const auto& c : x.cosets()) xs.push_back(g.formatWord(c.rep));
        nlohmann::json hx_gens = nlohmann::json::array();
        for (const auto& w : hx.generators()) hx_gens.push_back(g.formatWord(w));
        return Verdict::no({{"witness_cosets", xs},
                            {"stabiliser_generators", hx_gens},
                            {"stabiliser_infinite", fin.evidence}});
      }
      if (fin.isUnknown()) return Verdict::unknown(radius);
    }
    // next combination
    int pos = need - 1;
    while (pos >= 0 && choose[static_cast<size_t>(pos)] ==
                           static_cast<int>(others.size()) - (need - pos))
      --pos;
    if (pos < 0) break;
    ++choose[static_cast<size_t>(pos)];
    for (int i = pos + 1; i < need; ++i)
      choose[static_cast<size_t>(i)] = choose[static_cast<size_t>(i - 1)] + 1;
  }
  return Verdict::yes({{"subsets_checked", checked},
                       {"cosets_within_radius", static_cast<int>(coset_reps.size())},
                       {"note", "all pointwise stabilisers finite (translated search)"}});
}

nlohmann::json splittingHeightLedger(const SubgroupRep& h,
                                     const std::vector<Attestation>& attestations,
                                     int radius, int max_size) {
  const GroupSpec& g = *h.ambient();
  nlohmann::json report;
  if (attestations.empty()) {
    report["status"] = "insufficient attestations";
    report["classes"] = nlohmann::json::array();
    return report;
  }
  // gather stabiliser classes per coset-set size
  std::vector<Word> coset_reps;
  for (const auto& w : g.ball(radius)) {
    bool dup = false;
    for (const auto& r : coset_reps)
      if (sameLeftCoset(h, r, w)) {
        dup = true;
        break;
      }
    if (!dup) coset_reps.push_back(w);
  }
  struct ClassInfo {
    SubgroupRep rep;
    std::set<int> sizes;
    nlohmann::json sample;
  };
  std::map<std::string, ClassInfo> classes;
  int limit = std::min<int>(max_size, static_cast<int>(coset_reps.size()));
  // translated search: X always contains the trivial coset
  std::vector<Word> others;
  for (const auto& r : coset_reps)
    if (!r.empty()) others.push_back(r);
  for (int size = 1; size <= limit; ++size) {
    int need = size - 1;
    if (need > static_cast<int>(others.size())) break;
    std::vector<int> choose(static_cast<size_t>(need));
    for (int i = 0; i < need; ++i) choose[static_cast<size_t>(i)] = i;
    while (true) {
      std::vector<Word> reps{g.identity()};
      for (int i : choose) reps.push_back(others[static_cast<size_t>(i)]);
      CosetSet x(h, reps);
      if (static_cast<int>(x.size()) == size) {
        SubgroupRep hx = pointwiseStabiliser(h, x);
        std::string key = hx.canonicalKey();
        if (!classes.count(key)) {
          nlohmann::json xs = nlohmann::json::array();
          for (const auto& c : x.cosets()) xs.push_back(g.formatWord(c.rep));
          classes.emplace(key, ClassInfo{hx, {size}, xs});
        } else {
          classes.at(key).sizes.insert(size);
        }
      }
      if (need == 0) break;
      int pos = need - 1;
      while (pos >= 0 && choose[static_cast<size_t>(pos)] ==
                             static_cast<int>(others.size()) - (need - pos))
        --pos;
      if (pos < 0) break;
      ++choose[static_cast<size_t>(pos)];
      for (int i = pos + 1; i < need; ++i)
        choose[static_cast<size_t>(i)] = choose[static_cast<size_t>(i - 1)] + 1;
    }
  }
  // attestation matching
  auto matches = [&](const Attestation& att, const SubgroupRep& sub) {
    if (att.pattern == "all") return true;
    if (att.pattern == "trivial") return sub.isTrivialExact();
    if (att.pattern == "finite") return sub.finiteness().isYes();
    const std::string prefix = "generators:";
    if (att.pattern.rfind(prefix, 0) == 0) {
      std::vector<Word> ws;
      std::string rest = att.pattern.substr(prefix.size());
      size_t pos = 0;
      while (pos < rest.size()) {
        size_t comma = rest.find(',', pos);
        if (comma == std::string::npos) comma = rest.size();
        ws.push_back(g.parseWord(rest.substr(pos, comma - pos)));
        pos = comma + 1;
      }
      SubgroupRep target(h.ambient(), ws);
      return target.canonicalKey() == sub.canonicalKey();
    }
    throw Error(ErrorCode::ParseError, "unknown attestation pattern: " + att.pattern);
  };
  nlohmann::json cls_report = nlohmann::json::array();
  int least_consistent = -1;
  std::map<int, bool> size_all_attested;  // per min size: everything compatible?
  bool any_unattested = false;
  for (const auto& [key, info] : classes) {
    int verdict = -1;  // -1 unattested, 0 incompatible, 1 compatible
    for (const auto& att : attestations) {
      if (!matches(att, info.rep)) continue;
      int v = att.compatible ? 1 : 0;
      if (verdict != -1 && verdict != v)
        throw Error(ErrorCode::InconsistentAttestation,
                    "stabiliser class attested both compatible and incompatible");
      verdict = v;
    }
    nlohmann::json c;
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& w : info.rep.generators()) gens.push_back(g.formatWord(w));
    c["stabiliser_generators"] = gens;
    c["seen_at_sizes"] = info.sizes;
    c["sample_coset_set"] = info.sample;
    c["attested"] = verdict == -1 ? "none" : (verdict == 1 ? "compatible" : "incompatible");
    cls_report.push_back(c);
    if (verdict == -1) any_unattested = true;
  }
  // least n such that every class arising from some |X| >= n+1 is
  // attested compatible (relative to the explored radius)
  for (int n = 0; n <= limit; ++n) {
    bool ok = true;
    for (const auto& [key, info] : classes) {
      if (*info.sizes.rbegin() >= n + 1) {
        bool comp = false;
        for (const auto& att : attestations)
          if (matches(att, info.rep) && att.compatible) comp = true;
        ok = ok && comp;
      }
    }
    if (ok) {
      least_consistent = n;
      break;
    }
  }
  report["classes"] = cls_report;
  report["explored_radius"] = radius;
  report["max_coset_set_size"] = limit;
  if (least_consistent >= 0) {
    report["status"] = "consistent";
    report["least_consistent_splitting_height"] = least_consistent;
  } else {
    report["status"] = any_unattested ? "insufficient attestations" : "inconsistent";
  }
  return report;
}

}  // namespace dualcube
