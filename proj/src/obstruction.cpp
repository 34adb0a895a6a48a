// Copyright (c) 2026 The dualcube authors
// SPDX-License-Identifier: Apache-2.0

#include "dualcube/obstruction.hpp"

#include <algorithm>
#include <set>

#include "dualcube/errors.hpp"
#include "dualcube/models.hpp"

namespace dualcube {

Verdict obstructionMembership(const Triple& t, const Word& g) {
  const GroupSpec& spec = *t.group;
  Word c = spec.normalize(g);
  RegSet ga = t.a.leftTranslate(c);
  RegSet astar = t.a.complemented();
  RegSet gastar = ga.complemented();
  const RegSet* sides_a[2] = {&t.a, &astar};
  const RegSet* sides_g[2] = {&ga, &gastar};
  static const char* names[4] = {"A&gA", "A&gA*", "A*&gA", "A*&gA*"};
  nlohmann::json witnesses = nlohmann::json::object();
  nlohmann::json empties = nlohmann::json::array();
  bool all = true;
  for (int i = 0; i < 4; ++i) {
    RegSet cornerSet = sides_a[i / 2]->intersectWith(*sides_g[i % 2]);
    auto w = cornerSet.someElement();
    if (w)
      witnesses[names[i]] = spec.formatWord(*w);
    else {
      empties.push_back(names[i]);
      all = false;
    }
  }
  if (all) return Verdict::yes({{"corner_witnesses", witnesses}});
  return Verdict::no({{"empty_corners", empties}});
}

nlohmann::json ObstructionSample::toJson(const GroupSpec& g) const {
  nlohmann::json j;
  j["radius"] = radius;
  nlohmann::json ms = nlohmann::json::array();
  for (const auto& m : members) ms.push_back(g.formatWord(m));
  j["members"] = ms;
  nlohmann::json ps = nlohmann::json::array();
  for (const auto& p : projection_reps) ps.push_back(g.formatWord(p));
  j["projection_coset_reps"] = ps;
  j["projection_count"] = projection_reps.size();
  return j;
}

ObstructionSample obstructionSample(const Triple& t, int radius) {
  t.requireValidated();
  const GroupSpec& spec = *t.group;
  ObstructionSample s;
  s.radius = radius;
  for (const auto& w : spec.ball(radius)) {
    if (obstructionMembership(t, w).isYes()) s.members.push_back(w);
  }
  for (const auto& m : s.members) {
    bool dup = false;
    for (const auto& r : s.projection_reps) dup = dup || sameLeftCoset(t.h, r, m);
    if (!dup) s.projection_reps.push_back(m);
  }
  return s;
}

std::vector<Word> obstructionCrossCheck(const Triple& t, const CubeComplexView& x, int radius) {
  const GroupSpec& spec = *t.group;
  std::vector<Word> mismatches;
  int pa = x.sigma->pairOfA();
  for (const auto& w : spec.ball(radius)) {
    bool member = obstructionMembership(t, w).isYes();
    bool crossing = false;
    auto loc = x.sigma->locate(t.a.leftTranslate(w));
    if (loc && loc->first != pa) {
      for (const auto& [p, q] : x.square_pairs)
        if ((p == pa && q == loc->first) || (q == pa && p == loc->first)) {
          crossing = true;
          break;
        }
    }
    if (member != crossing) mismatches.push_back(w);
  }
  return mismatches;
}

namespace {

// arithmetic family base, base+d, base+2d inside the member set (va
// presets); used as the pumpable witness for growing projections
std::optional<nlohmann::json> detectVaFamily(const Triple& t, const std::vector<Word>& members) {
  const VaModel* vm = t.group->vaModel();
  if (!vm) return std::nullopt;
  const GroupSpec& spec = *t.group;
  std::set<std::pair<std::vector<int64_t>, int>> have;
  std::vector<VaElem> elems;
  for (const auto& m : members) {
    VaElem e = vm->elemOfWord(m.ls);
    have.insert({e.v, e.f});
    elems.push_back(e);
  }
  for (size_t i = 0; i < elems.size(); ++i)
    for (size_t j = 0; j < elems.size(); ++j) {
      if (i == j || elems[i].f != elems[j].f) continue;
      std::vector<int64_t> d(elems[i].v.size());
      for (size_t c = 0; c < d.size(); ++c) d[c] = elems[j].v[c] - elems[i].v[c];
      std::vector<int64_t> third(elems[i].v.size());
      for (size_t c = 0; c < d.size(); ++c) third[c] = elems[j].v[c] + d[c];
      if (!have.count({third, elems[i].f})) continue;
      // pairwise distinct left cosets
      Word w0{vm->wordOfElem(elems[i]), false};
      Word w1{vm->wordOfElem(elems[j]), false};
      Word w2{vm->wordOfElem(VaElem{third, elems[i].f}), false};
      if (sameLeftCoset(t.h, w0, w1) || sameLeftCoset(t.h, w0, w2) ||
          sameLeftCoset(t.h, w1, w2))
        continue;
      nlohmann::json fam;
      fam["base"] = spec.formatWord(spec.normalize(w0));
      fam["step"] = spec.formatWord(spec.normalize(Word{vm->wordOfElem(VaElem{d, 0}), false}));
      fam["samples"] = {spec.formatWord(spec.normalize(w0)), spec.formatWord(spec.normalize(w1)),
                        spec.formatWord(spec.normalize(w2))};
      return fam;
    }
  return std::nullopt;
}

}  // namespace

Verdict piFinitenessProbe(const Triple& t, const std::vector<int>& radii) {
  if (radii.size() < 2)
    return Verdict::unknown(radii.empty() ? 0 : radii.front(),
                            {{"note", "growth window needs at least two radii"}});
  std::vector<ObstructionSample> samples;
  for (int r : radii) samples.push_back(obstructionSample(t, r));
  nlohmann::json j;
  nlohmann::json counts = nlohmann::json::array();
  for (const auto& s : samples) counts.push_back(s.projection_reps.size());
  j["radii"] = radii;
  j["projection_counts"] = counts;
  bool constant = true, strictly_growing = true;
  for (size_t i = 1; i < samples.size(); ++i) {
    constant = constant && samples[i].projection_reps.size() == samples[0].projection_reps.size();
    strictly_growing =
        strictly_growing && samples[i].projection_reps.size() > samples[i - 1].projection_reps.size();
  }
  if (strictly_growing) {
    auto fam = detectVaFamily(t, samples.back().members);
    if (fam) {
      j["witness_family"] = *fam;
      return Verdict::no(j);
    }
    j["note"] = "projection grows but no arithmetic family extracted";
    return Verdict::unknown(radii.back(), j);
  }
  if (constant) {
    // carrier closedness of J = (A, A*) in the truncated complex
    CubeComplexView x = buildDual(t, radii.back());
    int pa = x.sigma->pairOfA();
    bool closed = true;
    nlohmann::json carrier = nlohmann::json::array();
    for (const auto& e : x.edges) {
      if (e.pair != pa) continue;
      carrier.push_back({{"u", e.u}, {"v", e.v}});
      closed = closed && x.interior(e.u) && x.interior(e.v);
    }
    j["carrier_edges"] = carrier;
    j["carrier_within_trust_region"] = closed;
    if (closed) return Verdict::yes(j);
    return Verdict::unknown(radii.back(), j);
  }
  j["note"] = "projection counts neither constant nor strictly growing";
  return Verdict::unknown(radii.back(), j);
}

nlohmann::json CornerReport::toJson(const GroupSpec& g) const {
  nlohmann::json j;
  j["g"] = g.formatWord(this->g);
  j["premises_ok"] = premises_ok;
  if (!violated_clauses.empty()) j["violated_clauses"] = violated_clauses;
  if (!corners.empty()) {
    static const char* names[4] = {"A&gA", "A&gA*", "A*&gA", "A*&gA*"};
    nlohmann::json cs = nlohmann::json::object();
    for (size_t i = 0; i < corners.size(); ++i) {
      auto w = corners[i].someElement();
      cs[names[i]] = {{"empty", corners[i].isEmpty()},
                      {"witness", w ? g.formatWord(*w) : ""}};
    }
    j["corners"] = cs;
  }
  if (k) {
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& w : k->generators()) gens.push_back(g.formatWord(w));
    j["k_generators"] = gens;
    j["selected_corner"] = "A&gA";
    j["k_almost_invariance"] = k_almost_invariance.toJson();
    j["corner_k_finite"] = corner_k_finite.toJson();
    j["cocorner_k_finite"] = cocorner_k_finite.toJson();
  }
  return j;
}

CornerReport corner(const Triple& t, const Word& g) {
  const GroupSpec& spec = *t.group;
  CornerReport rep;
  rep.g = spec.normalize(g);
  if (!t.validation || !t.validation->right_invariant.isYes())
    rep.violated_clauses.push_back("AH=A not validated");
  RegSet astar = t.a.complemented();
  if (!astar.contains(rep.g)) rep.violated_clauses.push_back("g not in A*");
  if (!astar.contains(spec.inverse(rep.g))) rep.violated_clauses.push_back("g^-1 not in A*");
  rep.premises_ok = rep.violated_clauses.empty();
  if (!rep.premises_ok) return rep;

  RegSet ga = t.a.leftTranslate(rep.g);
  RegSet gastar = ga.complemented();
  rep.corners.push_back(t.a.intersectWith(ga));
  rep.corners.push_back(t.a.intersectWith(gastar));
  rep.corners.push_back(astar.intersectWith(ga));
  rep.corners.push_back(astar.intersectWith(gastar));
  rep.k = SubgroupRep::intersect(t.h, t.h.conjugated(rep.g));
  rep.k_almost_invariance = isAlmostInvariant(rep.corners[0], *rep.k);
  rep.corner_k_finite = isHFinite(rep.corners[0], *rep.k);
  rep.cocorner_k_finite = isHFinite(rep.corners[0].complemented(), *rep.k);
  return rep;
}

nlohmann::json DescentState::toJson(const GroupSpec& g) const {
  nlohmann::json j;
  j["index"] = index;
  nlohmann::json xr = nlohmann::json::array();
  for (const auto& w : x_reps) xr.push_back(g.formatWord(w));
  j["coset_set"] = xr;
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& w : h.generators()) gens.push_back(g.formatWord(w));
  j["h_generators"] = gens;
  j["a_acceptor"] = a.toJson();
  j["validation"] = validation.toJson();
  return j;
}

DescentState initialDescentState(const Triple& t) {
  t.requireValidated();
  Validation v;
  v.proper = t.validation->proper;
  v.almost_invariant = t.validation->almost_invariant;
  v.left_invariant = t.validation->left_invariant;
  v.right_invariant = t.validation->right_invariant;
  return DescentState{1, {t.group->identity()}, t.h, t.a, v};
}

namespace {

Validation validateState(const Triple& t, const SubgroupRep& hj, const RegSet& aj) {
  Validation v;
  v.proper = isHProper(aj, hj);
  v.almost_invariant = isAlmostInvariant(aj, hj);
  v.left_invariant = invarianceCheck(aj, hj, InvarianceSide::Left);
  // right invariance stays w.r.t. the original H
  v.right_invariant = invarianceCheck(aj, t.h, InvarianceSide::Right);
  return v;
}

bool stabilisesCosetSet(const SubgroupRep& h, const std::vector<Word>& x_reps, const Word& g) {
  const GroupSpec& spec = *h.ambient();
  for (const auto& r : x_reps) {
    Word moved = spec.multiply(g, r);
    bool found = false;
    for (const auto& r2 : x_reps) found = found || sameLeftCoset(h, moved, r2);
    if (!found) return false;
  }
  return true;
}

}  // namespace

DescentStepResult descentStep(const Triple& t, const DescentState& state, const Word& g,
                              int radius) {
  const GroupSpec& spec = *t.group;
  DescentStepResult res;
  Word cg = spec.normalize(g);
  if (stabilisesCosetSet(t.h, state.x_reps, cg)) {
    res.kind = DescentStepResult::Kind::PreconditionFailure;
    res.detail = {{"reason", "g stabilises the coset set"}, {"g", spec.formatWord(cg)}};
    return res;
  }
  SubgroupRep k = SubgroupRep::intersect(state.h, state.h.conjugated(cg));
  RegSet ga = state.a.leftTranslate(cg);
  RegSet astar = state.a.complemented();
  RegSet gastar = ga.complemented();
  std::vector<RegSet> corners{state.a.intersectWith(ga), state.a.intersectWith(gastar),
                              astar.intersectWith(ga), astar.intersectWith(gastar)};
  static const char* names[4] = {"A&gA", "A&gA*", "A*&gA", "A*&gA*"};
  int selected = -1;
  Verdict sel_ai;
  for (int i = 0; i < 4; ++i) {
    Verdict ai = isAlmostInvariant(corners[static_cast<size_t>(i)], k);
    if (ai.isYes()) {
      selected = i;
      sel_ai = ai;
      break;
    }
  }
  if (selected < 0) {
    res.kind = DescentStepResult::Kind::NoEligibleCorner;
    res.detail = {{"reason", "no corner certified K-almost-invariant"},
                  {"g", spec.formatWord(cg)}};
    return res;
  }
  const RegSet& b = corners[static_cast<size_t>(selected)];
  Verdict b_fin = isHFinite(b, k);
  Verdict bstar_fin = isHFinite(b.complemented(), k);
  nlohmann::json detail;
  detail["g"] = spec.formatWord(cg);
  detail["selected_corner"] = names[selected];
  detail["corner_k_finite"] = b_fin.toJson();
  detail["cocorner_k_finite"] = bstar_fin.toJson();
  detail["k_almost_invariance"] = sel_ai.toJson();

  // new coset set
  auto buildCosetSet = [&](bool include_identity, const Word& shift) {
    std::vector<Word> reps;
    if (include_identity) reps.push_back(spec.identity());
    for (const auto& r : state.x_reps) {
      reps.push_back(spec.multiply(shift, r));
      reps.push_back(spec.multiply(shift, spec.multiply(cg, r)));
    }
    CosetSet cs(t.h, reps);
    std::vector<Word> out;
    for (const auto& c : cs.cosets()) out.push_back(c.rep);
    return out;
  };

  if (b_fin.isYes() || bstar_fin.isYes()) {
    // branch 1: some side C of the corner is K-finite; pick x in C and
    // keep the original A
    const RegSet side = b_fin.isYes() ? b : b.complemented();
    std::optional<Word> x;
    for (const auto& w : side.elements(radius, 100000)) {
      x = w;
      break;
    }
    detail["branch"] = 1;
    if (!x) {
      res.kind = DescentStepResult::Kind::DegenerateCorner;
      detail["note"] = "K-finite side is empty; no x available within radius";
      detail["k_finite_certificate"] =
          (b_fin.isYes() ? b_fin : bstar_fin).evidence;
      res.detail = detail;
      return res;
    }
    detail["x"] = spec.formatWord(*x);
    Word xi = spec.inverse(*x);
    std::vector<Word> xr = buildCosetSet(true, xi);
    if (xr.size() <= state.x_reps.size()) {
      res.kind = DescentStepResult::Kind::PreconditionFailure;
      detail["note"] = "coset set failed to grow";
      res.detail = detail;
      return res;
    }
    SubgroupRep hj1 = pointwiseStabiliser(t.h, CosetSet(t.h, xr));
    DescentState next{state.index + 1, xr, hj1, t.a, validateState(t, hj1, t.a)};
    res.kind = DescentStepResult::Kind::Advanced;
    res.next = std::move(next);
    res.detail = detail;
    return res;
  }
  // branch 2: the corner is K-proper
  detail["branch"] = 2;
  std::vector<Word> xr = buildCosetSet(false, spec.identity());
  if (xr.size() <= state.x_reps.size()) {
    res.kind = DescentStepResult::Kind::PreconditionFailure;
    detail["note"] = "coset set failed to grow";
    res.detail = detail;
    return res;
  }
  SubgroupRep hj1 = pointwiseStabiliser(t.h, CosetSet(t.h, xr));
  DescentState next{state.index + 1, xr, hj1, b, validateState(t, hj1, b)};
  res.kind = DescentStepResult::Kind::Advanced;
  res.next = std::move(next);
  res.detail = detail;
  return res;
}

nlohmann::json DescentTrace::toJson(const GroupSpec& g) const {
  nlohmann::json j;
  nlohmann::json ss = nlohmann::json::array();
  for (const auto& s : states) ss.push_back(s.toJson(g));
  j["states"] = ss;
  j["status"] = status;
  if (!detail.is_null()) j["detail"] = detail;
  return j;
}

DescentTrace runDescent(const Triple& t, int max_steps, int radius) {
  const GroupSpec& spec = *t.group;
  if (!t.validation || !t.validation->descentReady())
    throw Error(ErrorCode::ValidationMissing,
                "descent requires validated premises including AH=A");
  DescentTrace trace;
  trace.states.push_back(initialDescentState(t));
  for (int step = 0; step < max_steps; ++step) {
    const DescentState& cur = trace.states.back();
    Triple tj{t.group, cur.h, cur.a, Validation{cur.validation}};
    ObstructionSample sample = obstructionSample(tj, radius);
    if (sample.members.empty()) {
      trace.status = "obstruction-empty";
      trace.detail = {{"radius", radius},
                      {"note", "empty obstruction at this radius; the finite-projection "
                               "hypothesis is plausible here"}};
      return trace;
    }
    std::optional<Word> g;
    for (const auto& m : sample.members)
      if (!stabilisesCosetSet(t.h, cur.x_reps, m)) {
        g = m;
        break;
      }
    if (!g) {
      trace.status = "no-mover";
      trace.detail = {{"note", "all obstruction members stabilise the coset set"},
                      {"sample", sample.toJson(spec)}};
      return trace;
    }
    DescentStepResult rs = descentStep(t, cur, *g, radius);
    switch (rs.kind) {
      case DescentStepResult::Kind::Advanced:
        trace.states.push_back(*rs.next);
        break;
      case DescentStepResult::Kind::PreconditionFailure:
        trace.status = "precondition-failure";
        trace.detail = rs.detail;
        return trace;
      case DescentStepResult::Kind::DegenerateCorner:
        trace.status = "degenerate-corner";
        trace.detail = rs.detail;
        return trace;
      case DescentStepResult::Kind::NoEligibleCorner:
        trace.status = "no-eligible-corner";
        trace.detail = rs.detail;
        return trace;
    }
  }
  trace.status = "max-steps";
  return trace;
}

std::vector<Triple> searchTriples(GroupPtr g, const SubgroupRep& h, const SearchBounds& bounds,
                                  int radius) {
  (void)radius;
  std::vector<Triple> found;
  if (bounds.max_states <= 0) return found;
  std::set<std::string> seen_keys;
  long long examined = 0;
  int k = g->alphabetSize();
  auto consider = [&](const Dfa& raw) {
    RegSet a = RegSet::fromDfa(g, raw);
    if (a.isEmpty()) return;
    if (!seen_keys.insert(a.key()).second) return;
    Validation v = validateTriple(h, a);
    if (v.cubeReady()) {
      Triple t{g, h, a, v};
      found.push_back(std::move(t));
    }
  };
  // exhaustive over 1- and 2-state complete acceptors
  for (int n = 1; n <= std::min(bounds.max_states, 2); ++n) {
    long long tables = 1;
    for (int i = 0; i < n * k; ++i) tables *= n;
    for (long long code = 0; code < tables; ++code) {
      long long c = code;
      Dfa d(k, n);
      d.setStart(0);
      for (int s = 0; s < n; ++s)
        for (Letter l = 0; l < k; ++l) {
          d.setNext(s, l, static_cast<int>(c % n));
          c /= n;
        }
      for (int acc = 1; acc < (1 << n); ++acc) {
        if (++examined > bounds.budget) return found;
        for (int s = 0; s < n; ++s) d.setAccepting(s, (acc >> s) & 1);
        consider(d);
        if (static_cast<int>(found.size()) >= bounds.max_results) return found;
      }
    }
  }
  // seeded random tables for larger sizes
  uint64_t rng = bounds.seed ? bounds.seed : 1;
  auto nextRand = [&rng]() {
    rng ^= rng << 13;
    rng ^= rng >> 7;
    rng ^= rng << 17;
    return rng;
  };
  for (int n = 3; n <= bounds.max_states; ++n) {
    for (int tries = 0; tries < 4096; ++tries) {
      if (++examined > bounds.budget) return found;
      Dfa d(k, n);
      d.setStart(0);
      for (int s = 0; s < n; ++s) {
        d.setAccepting(s, nextRand() & 1);
        for (Letter l = 0; l < k; ++l) d.setNext(s, l, static_cast<int>(nextRand() % n));
      }
      consider(d);
      if (static_cast<int>(found.size()) >= bounds.max_results) return found;
    }
  }
  return found;
}

}  // namespace dualcube
