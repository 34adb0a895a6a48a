// Copyright (c) 2026 The dualcube authors
// SPDX-License-Identifier: Apache-2.0

#include "dualcube/regset.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>

#include "dualcube/errors.hpp"
#include "dualcube/models.hpp"

namespace dualcube {

RegSet RegSet::fromDfa(GroupPtr ambient, const Dfa& raw) {
  if (raw.alphabetSize() != ambient->alphabetSize())
    throw Error(ErrorCode::AmbientMismatch, "acceptor alphabet does not match group");
  Dfa cut = Dfa::product(raw, ambient->nfAcceptor(), Dfa::BoolOp::And).minimized();
  return RegSet(std::move(ambient), std::move(cut));
}

RegSet RegSet::emptySet(GroupPtr ambient) {
  Dfa d(ambient->alphabetSize(), 1);
  d.setStart(0);
  for (Letter l = 0; l < d.alphabetSize(); ++l) d.setNext(0, l, 0);
  return fromDfa(std::move(ambient), d);
}

RegSet RegSet::universe(GroupPtr ambient) {
  Dfa d(ambient->alphabetSize(), 1);
  d.setStart(0);
  d.setAccepting(0, true);
  for (Letter l = 0; l < d.alphabetSize(); ++l) d.setNext(0, l, 0);
  return fromDfa(std::move(ambient), d);
}

RegSet RegSet::singleton(GroupPtr ambient, const Word& w) {
  Word c = ambient->normalize(w);
  int len = static_cast<int>(c.size());
  Dfa d(ambient->alphabetSize(), len + 2);
  int dead = len + 1;
  d.setStart(0);
  d.setAccepting(len, true);
  for (int s = 0; s <= dead; ++s)
    for (Letter l = 0; l < d.alphabetSize(); ++l) d.setNext(s, l, dead);
  for (int i = 0; i < len; ++i) d.setNext(i, c.ls[static_cast<size_t>(i)], i + 1);
  return fromDfa(std::move(ambient), d);
}

void RegSet::checkSameAmbient(const RegSet& o) const {
  if (!ambient_->sameSpec(*o.ambient_))
    throw Error(ErrorCode::AmbientMismatch, "operands live in different groups");
}

bool RegSet::contains(const Word& w) const {
  Word c = ambient_->normalize(w);
  return dfa_.accepts(c.ls);
}

bool RegSet::isEmpty() const { return dfa_.isEmpty(); }
bool RegSet::isFiniteSet() const { return dfa_.isFinite(); }

bool RegSet::sameSet(const RegSet& o) const {
  checkSameAmbient(o);
  return dfa_ == o.dfa_;
}

bool RegSet::includes(const RegSet& o) const {
  checkSameAmbient(o);
  return dfa_.includes(o.dfa_);
}

RegSet RegSet::unionWith(const RegSet& o) const {
  checkSameAmbient(o);
  return RegSet(ambient_, Dfa::product(dfa_, o.dfa_, Dfa::BoolOp::Or).minimized());
}

RegSet RegSet::intersectWith(const RegSet& o) const {
  checkSameAmbient(o);
  return RegSet(ambient_, Dfa::product(dfa_, o.dfa_, Dfa::BoolOp::And).minimized());
}

RegSet RegSet::differenceWith(const RegSet& o) const {
  checkSameAmbient(o);
  return RegSet(ambient_, Dfa::product(dfa_, o.dfa_, Dfa::BoolOp::Diff).minimized());
}

RegSet RegSet::symmetricDifference(const RegSet& o) const {
  checkSameAmbient(o);
  return RegSet(ambient_, Dfa::product(dfa_, o.dfa_, Dfa::BoolOp::Xor).minimized());
}

RegSet RegSet::complemented() const {
  return RegSet(ambient_,
                Dfa::product(ambient_->nfAcceptor(), dfa_, Dfa::BoolOp::Diff).minimized());
}

RegSet RegSet::leftTranslate(const Word& g) const {
  Word c = ambient_->normalize(g);
  Dfa cur = dfa_;
  const Dfa& nf = ambient_->nfAcceptor();
  // g = s1 s2 ... sk acts as s1 . (s2 . (... . A)); iterate right to left
  for (auto it = c.ls.rbegin(); it != c.ls.rend(); ++it) {
    if (const FreeModel* fm = ambient_->freeModel())
      cur = fm->leftMultLetter(*it, cur, nf);
    else if (const VaModel* vm = ambient_->vaModel())
      cur = vm->leftMultLetter(*it, cur, nf);
    else
      throw Error(ErrorCode::TranslationNotRational,
                  "group has no element model for exact translation");
  }
  return RegSet(ambient_, std::move(cur));
}

RegSet RegSet::rightTranslate(const Word& g) const {
  Word c = ambient_->normalize(g);
  Dfa cur = dfa_;
  const Dfa& nf = ambient_->nfAcceptor();
  for (Letter l : c.ls) {
    if (const FreeModel* fm = ambient_->freeModel())
      cur = fm->rightMultLetter(cur, l, nf);
    else if (const VaModel* vm = ambient_->vaModel())
      cur = vm->rightMultLetter(cur, l, nf);
    else
      throw Error(ErrorCode::TranslationNotRational,
                  "group has no element model for exact translation");
  }
  return RegSet(ambient_, std::move(cur));
}

std::optional<Word> RegSet::someElement() const {
  auto w = dfa_.shortestAccepted();
  if (!w) return std::nullopt;
  return Word{*w, true};
}

std::vector<Word> RegSet::elements(int max_len, size_t cap) const {
  std::vector<Word> out;
  for (auto& ls : dfa_.enumerate(max_len, cap)) out.push_back(Word{std::move(ls), true});
  return out;
}

std::vector<Word> RegSet::firstElements(size_t count) const {
  std::vector<Word> out;
  for (auto& ls : dfa_.firstWords(count, 1u << 22)) out.push_back(Word{std::move(ls), true});
  return out;
}

nlohmann::json RegSet::toJson() const {
  nlohmann::json j;
  j["format"] = 1;
  nlohmann::json alpha = nlohmann::json::array();
  for (Letter l = 0; l < ambient_->alphabetSize(); ++l)
    alpha.push_back(std::string(1, ambient_->letterName(l)));
  j["alphabet"] = alpha;
  j["states"] = dfa_.numStates();
  j["start"] = dfa_.start();
  nlohmann::json acc = nlohmann::json::array();
  for (int s = 0; s < dfa_.numStates(); ++s)
    if (dfa_.accepting(s)) acc.push_back(s);
  j["accepting"] = acc;
  nlohmann::json trans = nlohmann::json::array();
  for (int s = 0; s < dfa_.numStates(); ++s) {
    nlohmann::json row = nlohmann::json::array();
    for (Letter l = 0; l < dfa_.alphabetSize(); ++l) row.push_back(dfa_.next(s, l));
    trans.push_back(row);
  }
  j["transitions"] = trans;
  return j;
}

RegSet RegSet::fromJson(GroupPtr ambient, const nlohmann::json& j) {
  try {
    int states = j.at("states").get<int>();
    auto alpha = j.at("alphabet");
    if (static_cast<int>(alpha.size()) != ambient->alphabetSize())
      throw Error(ErrorCode::AmbientMismatch, "acceptor alphabet size mismatch");
    for (int l = 0; l < ambient->alphabetSize(); ++l) {
      std::string name = alpha[static_cast<size_t>(l)].get<std::string>();
      if (name.size() != 1 || name[0] != ambient->letterName(l))
        throw Error(ErrorCode::AmbientMismatch, "acceptor alphabet letters mismatch");
    }
    Dfa d(ambient->alphabetSize(), states);
    d.setStart(j.at("start").get<int>());
    for (const auto& a : j.at("accepting")) d.setAccepting(a.get<int>(), true);
    const auto& trans = j.at("transitions");
    if (static_cast<int>(trans.size()) != states)
      throw Error(ErrorCode::ParseError, "transition table has wrong number of rows");
    for (int s = 0; s < states; ++s) {
      const auto& row = trans[static_cast<size_t>(s)];
      if (static_cast<int>(row.size()) != ambient->alphabetSize())
        throw Error(ErrorCode::ParseError, "transition row has wrong arity");
      for (Letter l = 0; l < ambient->alphabetSize(); ++l) {
        int t = row[static_cast<size_t>(l)].get<int>();
        if (t < 0 || t >= states) throw Error(ErrorCode::ParseError, "transition out of range");
        d.setNext(s, l, t);
      }
    }
    return fromDfa(std::move(ambient), d);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad acceptor json: ") + e.what());
  }
}

// ---------------------------------------------------------------------
// H-finiteness and the almost-invariant calculus

bool HFiniteCertificate::verify(const RegSet& a, const SubgroupRep& h) const {
  auto lang = h.language();
  if (!lang) return false;
  RegSet hf = RegSet::emptySet(a.ambient());
  for (const auto& w : f) hf = hf.unionWith(lang->rightTranslate(w));
  return hf.includes(a);
}

nlohmann::json HFiniteCertificate::toJson(const GroupSpec& g) const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& w : f) arr.push_back(g.formatWord(w));
  return nlohmann::json{{"coset_reps", arr}};
}

namespace {

// Harvest F with A subseteq H F by scanning A's elements in shortlex
// order and skipping those already covered.
std::optional<HFiniteCertificate> harvestCosetReps(const RegSet& a, const RegSet& h_lang,
                                                   size_t cap) {
  HFiniteCertificate cert;
  RegSet covered = RegSet::emptySet(a.ambient());
  RegSet rest = a;
  size_t guard = 0;
  while (!rest.isEmpty()) {
    if (++guard > cap) return std::nullopt;
    Word f = *rest.someElement();
    cert.f.push_back(f);
    covered = covered.unionWith(h_lang.rightTranslate(f));
    rest = a.differenceWith(covered);
  }
  return cert;
}

// Exact H-finiteness over a free ambient via the core-exit analysis: a
// reduced word leaving the folded core moves into a hanging tree of the
// coset graph, where distinct tails are distinct cosets. The set is
// H-finite iff every exit point admits only finitely many tails.
struct FreeExitAnalysis {
  bool finite = true;
  // pump data for a No witness: u (core prefix), cycle, suffix
  Letters prefix, cycle, suffix;
};

FreeExitAnalysis analyzeExits(const Dfa& a, const StallingsCore& core) {
  FreeExitAnalysis res;
  int rank2 = 2 * core.rank();
  int core_n = core.numVertices();
  // product states: (a_state, c) with c in [0, core_n) inside the core,
  // or c = core_n + exit_id once outside (absorbing per exit)
  struct Node {
    int a, c;
  };
  std::map<std::pair<int, int>, int> ids;
  std::vector<Node> nodes;
  std::vector<int> parent, via;
  std::deque<int> todo;
  auto intern = [&](int as, int cs, int par, int letter) {
    auto key = std::make_pair(as, cs);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    int id = static_cast<int>(nodes.size());
    ids.emplace(key, id);
    nodes.push_back({as, cs});
    parent.push_back(par);
    via.push_back(letter);
    todo.push_back(id);
    return id;
  };
  intern(a.start(), core.basepoint(), -1, -1);
  auto coacc = a.coaccessibleStates();
  std::vector<std::pair<int, int>> exit_nodes;  // (node id) exited
  while (!todo.empty()) {
    int id = todo.front();
    todo.pop_front();
    Node nd = nodes[static_cast<size_t>(id)];
    if (!coacc[static_cast<size_t>(nd.a)]) continue;
    bool in_core = nd.c < core_n;
    for (Letter l = 0; l < a.alphabetSize(); ++l) {
      int an = a.next(nd.a, l);
      if (!coacc[static_cast<size_t>(an)]) continue;
      int cn;
      if (in_core) {
        int t = l < rank2 ? core.edge(nd.c, l) : -1;
        if (t >= 0) {
          cn = t;
        } else {
          // exits the core here; absorbing marker keyed by (vertex, letter)
          cn = core_n + nd.c * rank2 + l;
        }
      } else {
        cn = nd.c;  // already outside
      }
      intern(an, cn, id, l);
    }
  }
  // Tail languages: restrict to nodes outside the core; infinitely many
  // tails iff a cycle among outside nodes reaches an accepting a-state.
  // Detect via DFS over outside product nodes.
  int n = static_cast<int>(nodes.size());
  std::vector<std::vector<std::pair<int, Letter>>> adj(static_cast<size_t>(n));
  for (const auto& [key, id] : ids) {
    Node nd = nodes[static_cast<size_t>(id)];
    if (nd.c < core_n) continue;
    for (Letter l = 0; l < a.alphabetSize(); ++l) {
      int an = a.next(nd.a, l);
      auto it = ids.find({an, nd.c});
      if (it != ids.end()) adj[static_cast<size_t>(id)].push_back({it->second, l});
    }
  }
  // which outside nodes can still reach an accepting a-state: reverse BFS
  std::vector<std::vector<int>> radj(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v)
    for (auto [t, l] : adj[static_cast<size_t>(v)]) radj[static_cast<size_t>(t)].push_back(v);
  std::vector<bool> live(static_cast<size_t>(n), false);
  {
    std::deque<int> bfs;
    for (int v = 0; v < n; ++v)
      if (nodes[static_cast<size_t>(v)].c >= core_n && a.accepting(nodes[static_cast<size_t>(v)].a)) {
        live[static_cast<size_t>(v)] = true;
        bfs.push_back(v);
      }
    while (!bfs.empty()) {
      int v = bfs.front();
      bfs.pop_front();
      for (int p : radj[static_cast<size_t>(v)])
        if (!live[static_cast<size_t>(p)]) {
          live[static_cast<size_t>(p)] = true;
          bfs.push_back(p);
        }
    }
  }
  auto reachesAccept = [&](int id) { return live[static_cast<size_t>(id)]; };
  // cycle detection among outside nodes that still reach acceptance
  std::vector<int> color(static_cast<size_t>(n), 0);
  std::vector<int> cyc_parent(static_cast<size_t>(n), -1);
  std::vector<Letter> cyc_via(static_cast<size_t>(n), -1);
  int cyc_entry = -1, cyc_back_from = -1;
  Letter cyc_back_letter = -1;
  std::function<void(int)> dfs = [&](int v) {
    color[static_cast<size_t>(v)] = 1;
    for (auto [t, l] : adj[static_cast<size_t>(v)]) {
      if (cyc_entry != -1) return;
      if (!reachesAccept(t)) continue;
      if (color[static_cast<size_t>(t)] == 1) {
        cyc_entry = t;
        cyc_back_from = v;
        cyc_back_letter = l;
        return;
      }
      if (color[static_cast<size_t>(t)] == 0) {
        cyc_parent[static_cast<size_t>(t)] = v;
        cyc_via[static_cast<size_t>(t)] = l;
        dfs(t);
      }
    }
    color[static_cast<size_t>(v)] = 2;
  };
  for (const auto& [key, id] : ids) {
    if (cyc_entry != -1) break;
    Node nd = nodes[static_cast<size_t>(id)];
    if (nd.c < core_n || color[static_cast<size_t>(id)] != 0) continue;
    if (!reachesAccept(id)) continue;
    dfs(id);
  }
  if (cyc_entry == -1) return res;  // finite
  res.finite = false;
  // path from product start to cyc_entry via BFS parents
  Letters to_entry;
  for (int v = cyc_entry; parent[static_cast<size_t>(v)] != -1; v = parent[static_cast<size_t>(v)])
    to_entry.push_back(static_cast<Letter>(via[static_cast<size_t>(v)]));
  std::reverse(to_entry.begin(), to_entry.end());
  res.prefix = to_entry;
  // cycle: walk cyc_parent chain from cyc_back_from up to cyc_entry
  Letters cyc;
  cyc.push_back(cyc_back_letter);
  for (int v = cyc_back_from; v != cyc_entry; v = cyc_parent[static_cast<size_t>(v)])
    cyc.push_back(cyc_via[static_cast<size_t>(v)]);
  std::reverse(cyc.begin(), cyc.end());
  res.cycle = cyc;
  // suffix: shortest path from cyc_entry to an accepting a-state (outside)
  {
    std::map<int, std::pair<int, Letter>> par;
    std::deque<int> bfs{cyc_entry};
    par[cyc_entry] = {-1, -1};
    int found = -1;
    if (a.accepting(nodes[static_cast<size_t>(cyc_entry)].a)) found = cyc_entry;
    while (!bfs.empty() && found == -1) {
      int v = bfs.front();
      bfs.pop_front();
      for (auto [t, l] : adj[static_cast<size_t>(v)]) {
        if (par.count(t)) continue;
        par[t] = {v, l};
        if (a.accepting(nodes[static_cast<size_t>(t)].a)) {
          found = t;
          break;
        }
        bfs.push_back(t);
      }
    }
    Letters suf;
    for (int v = found; v != -1 && par[v].first != -1; v = par[v].first)
      suf.push_back(par[v].second);
    std::reverse(suf.begin(), suf.end());
    res.suffix = suf;
  }
  return res;
}

// Exact H-finiteness over a virtually abelian ambient: per stratum, the
// image in Z^n / (lattice saturation) must be finite; with the
// product-of-Z-sets shape this reduces to per-coordinate finiteness
// against the kernel rows.
struct VaFiniteAnalysis {
  bool finite = true;
  // witness family: samples from one piece varying an unbounded
  // coordinate whose values separate right cosets
  int coord = -1;
  std::vector<VaElem> samples;
};

VaFiniteAnalysis analyzeVaFiniteness(const VaModel& vm, const std::vector<VaModel::Piece>& pieces,
                                     const VaSubgroup& h) {
  VaFiniteAnalysis res;
  auto kernel_rows = h.lattice().orthogonalComplement();
  for (const auto& piece : pieces) {
    bool empty = false;
    for (const auto& z : piece.blocks) empty = empty || z.empty();
    if (empty) continue;
    for (const auto& row : kernel_rows) {
      for (int i = 0; i < vm.rank; ++i) {
        if (row[static_cast<size_t>(i)] == 0) continue;
        if (piece.blocks[static_cast<size_t>(i)].finite()) continue;
        res.finite = false;
        res.coord = i;
        // fix other coordinates at their first members, walk coordinate i
        std::vector<int64_t> base(static_cast<size_t>(vm.rank), 0);
        for (int j = 0; j < vm.rank; ++j)
          base[static_cast<size_t>(j)] = piece.blocks[static_cast<size_t>(j)].members(1).at(0);
        auto walk = piece.blocks[static_cast<size_t>(i)].members(3);
        for (long long value : walk) {
          VaElem e;
          e.v = base;
          e.v[static_cast<size_t>(i)] = value;
          e.f = piece.f;
          res.samples.push_back(std::move(e));
        }
        return res;
      }
    }
  }
  return res;
}

}  // namespace

Verdict isHFinite(const RegSet& a, const SubgroupRep& h) {
  const GroupSpec& g = *a.ambient();
  if (a.isEmpty())
    return Verdict::yes(nlohmann::json{{"coset_reps", nlohmann::json::array()},
                                       {"note", "empty set"}});
  if (h.mode() != SubgroupRep::Mode::Exact)
    return Verdict::unknown(0, {{"note", "bounded subgroup mode; no exact decision"}});

  bool finite;
  nlohmann::json witness;
  if (const StallingsCore* core = h.core()) {
    auto analysis = analyzeExits(a.dfa(), *core);
    finite = analysis.finite;
    if (!finite) {
      // pump family u c^k w: distinct tails from one core exit
      nlohmann::json fam;
      fam["prefix"] = g.formatWord(Word{analysis.prefix, true});
      fam["cycle"] = g.formatWord(Word{analysis.cycle, true});
      fam["suffix"] = g.formatWord(Word{analysis.suffix, true});
      nlohmann::json samples = nlohmann::json::array();
      for (int k = 0; k < 3; ++k) {
        Letters w = analysis.prefix;
        for (int j = 0; j < k; ++j) w.insert(w.end(), analysis.cycle.begin(), analysis.cycle.end());
        w.insert(w.end(), analysis.suffix.begin(), analysis.suffix.end());
        samples.push_back(g.formatWord(Word{w, true}));
      }
      fam["samples"] = samples;
      witness = nlohmann::json{{"pump_family", fam},
                               {"note", "family exits the folded core with distinct tails"}};
    }
  } else if (const VaSubgroup* vs = h.vaSub()) {
    const VaModel& vm = *g.vaModel();
    auto pieces = vm.decompose(a.dfa());
    auto analysis = analyzeVaFiniteness(vm, pieces, *vs);
    finite = analysis.finite;
    if (!finite) {
      nlohmann::json fam;
      fam["coordinate"] = analysis.coord;
      nlohmann::json samples = nlohmann::json::array();
      for (const auto& e : analysis.samples)
        samples.push_back(g.formatWord(g.normalize(Word{vm.wordOfElem(e), false})));
      fam["samples"] = samples;
      witness = nlohmann::json{{"pump_family", fam},
                               {"note", "stratum projection meets infinitely many cosets"}};
    }
  } else {
    return Verdict::unknown(0, {{"note", "no exact backend"}});
  }

  if (!finite) return Verdict::no(witness);

  auto lang = h.language();
  if (lang) {
    auto cert = harvestCosetReps(a, *lang, 4096);
    if (cert) {
      nlohmann::json j = cert->toJson(g);
      return Verdict::yes(j);
    }
  }
  // decision is exact even when no regular H-language exists to back an
  // inclusion certificate
  return Verdict::yes(nlohmann::json{{"note", "finite coset image (structural decision)"}});
}

Verdict isHProper(const RegSet& a, const SubgroupRep& h) {
  Verdict va = isHFinite(a, h);
  Verdict vc = isHFinite(a.complemented(), h);
  if (va.isNo() && vc.isNo())
    return Verdict::yes(nlohmann::json{{"set_not_h_finite", va.evidence},
                                       {"complement_not_h_finite", vc.evidence}});
  if (va.isYes())
    return Verdict::no(nlohmann::json{{"h_finite_side", "set"}, {"certificate", va.evidence}});
  if (vc.isYes())
    return Verdict::no(nlohmann::json{{"h_finite_side", "complement"}, {"certificate", vc.evidence}});
  int r = std::max(va.radius, vc.radius);
  return Verdict::unknown(r < 0 ? 0 : r);
}

Verdict invarianceCheck(const RegSet& a, const SubgroupRep& h, InvarianceSide side) {
  const GroupSpec& g = *a.ambient();
  auto checkOne = [&](const Word& t, bool left) -> std::optional<nlohmann::json> {
    RegSet moved = left ? a.leftTranslate(t) : a.rightTranslate(t);
    if (moved.sameSet(a)) return std::nullopt;
    RegSet diff = moved.symmetricDifference(a);
    Word w = *diff.someElement();
    nlohmann::json j;
    j["generator"] = g.formatWord(t);
    j["side"] = left ? "left" : "right";
    j["witness"] = g.formatWord(w);
    j["witness_in_set"] = a.contains(w);
    return j;
  };
  // equality is symmetric, but the contract asks for generators and
  // inverses explicitly on each requested side
  std::vector<Word> tests;
  for (const auto& gen : h.generators()) {
    tests.push_back(gen);
    tests.push_back(g.inverse(gen));
  }
  nlohmann::json checked = nlohmann::json::array();
  for (const auto& t : tests) {
    if (side == InvarianceSide::Left || side == InvarianceSide::Both) {
      auto bad = checkOne(t, true);
      if (bad) return Verdict::no(*bad);
      checked.push_back({{"generator", g.formatWord(t)}, {"side", "left"}});
    }
    if (side == InvarianceSide::Right || side == InvarianceSide::Both) {
      auto bad = checkOne(t, false);
      if (bad) return Verdict::no(*bad);
      checked.push_back({{"generator", g.formatWord(t)}, {"side", "right"}});
    }
  }
  return Verdict::yes(nlohmann::json{{"checked", checked},
                                     {"note", "acceptor equality per generator and inverse"}});
}

Verdict isAlmostInvariant(const RegSet& a, const SubgroupRep& h) {
  const GroupSpec& g = *a.ambient();
  nlohmann::json certs = nlohmann::json::object();
  for (Letter l = 0; l < g.alphabetSize(); ++l) {
    Word s{Letters{l}, true};
    RegSet diff = a.symmetricDifference(a.rightTranslate(s));
    Verdict v = isHFinite(diff, h);
    std::string name(1, g.letterName(l));
    if (v.isNo())
      return Verdict::no(nlohmann::json{{"generator", name}, {"difference_not_h_finite", v.evidence}});
    if (v.isUnknown()) return Verdict::unknown(v.radius, {{"generator", name}});
    certs[name] = v.evidence;
  }
  // generator certificates suffice: symmetric differences compose under
  // right multiplication
  return Verdict::yes(nlohmann::json{{"per_generator", certs}});
}

}  // namespace dualcube
