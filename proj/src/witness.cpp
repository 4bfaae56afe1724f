#include "ibg/witness.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "ibg/error.hpp"

namespace ibg {

namespace {

bool valid_pair(int n, PairVertex p) {
  return p.first >= 0 && p.second >= 0 && p.first < n && p.second < n && p.first != p.second;
}

void fail(std::string* reason, const std::string& why) {
  if (reason) *reason = why;
}

// Names a component by its least member; rejects anything else.
std::optional<int> named_component(const ComponentSet& cs, const PairDigraph& pd, PairVertex name) {
  if (!valid_pair(pd.n(), name)) return std::nullopt;
  int c = cs.component_of(pd.id(name));
  if (cs.least_member(c) != pd.id(name)) return std::nullopt;
  return c;
}

// Replays a derivation and checks that the circuit closes. Collects base components.
bool replay(const CertTrace& t, const PairDigraph& pd, const ComponentSet& cs, std::vector<int>& bases,
            std::string* reason) {
  const int n = pd.n();
  std::set<PairVertex> known;
  for (const auto& s : t.derivation) {
    if (!valid_pair(n, s.pair)) return fail(reason, "bad pair in derivation"), false;
    switch (s.kind) {
      case Derivation::Base:
      case Derivation::Completion: {
        auto c = named_component(cs, pd, s.component);
        if (!c || cs.component_of(pd.id(s.pair)) != *c) return fail(reason, "pair outside its component"), false;
        if (s.kind == Derivation::Completion && !cs.trivial(*c)) return fail(reason, "completion of nontrivial component"), false;
        if (s.kind == Derivation::Base) bases.push_back(*c);
        break;
      }
      case Derivation::Implied:
        if (!known.count(s.from) || !pd.has_arc(s.from, s.pair)) return fail(reason, "implied pair without arc"), false;
        break;
      case Derivation::Transitive:
        if (s.via < 0 || s.via >= n || !known.count({s.pair.first, s.via}) || !known.count({s.via, s.pair.second}))
          return fail(reason, "transitive pair without sources"), false;
        break;
      default:
        return fail(reason, "unknown rule"), false;
    }
    known.insert(s.pair);
  }
  if (t.circuit.empty()) return fail(reason, "empty circuit"), false;
  bool has_closing = false;
  for (std::size_t i = 0; i < t.circuit.size(); ++i) {
    const auto& p = t.circuit[i];
    const auto& q = t.circuit[(i + 1) % t.circuit.size()];
    if (!known.count(p)) return fail(reason, "circuit pair not derived"), false;
    if (p.second != q.first) return fail(reason, "circuit does not close"), false;
    has_closing |= p == t.closing;
  }
  if (!has_closing) return fail(reason, "closing pair not on circuit"), false;
  std::sort(bases.begin(), bases.end());
  bases.erase(std::unique(bases.begin(), bases.end()), bases.end());
  return true;
}

bool consistent(const ComponentSet& cs, const std::vector<int>& comps) {
  for (int c : comps)
    if (std::binary_search(comps.begin(), comps.end(), cs.couple(c))) return false;
  return true;
}

bool path_ok(const PairDigraph& pd, const std::vector<PairVertex>& path, PairVertex from, PairVertex to) {
  if (path.size() < 2 || path.front() != from || path.back() != to) return false;
  for (const auto& p : path)
    if (!valid_pair(pd.n(), p)) return false;
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    if (!pd.has_arc(path[i], path[i + 1])) return false;
  return true;
}

bool verify_yes(const Bigraph& g, const Certificate& c, std::string* reason) {
  if (c.ordering.size() != g.n()) return fail(reason, "ordering size"), false;
  if (c.colors != g.colors()) return fail(reason, "interval colors differ from the graph"), false;
  if (auto v = check_ordering(g, c.ordering)) return fail(reason, "ordering has a forbidden pattern"), false;
  if (!validate_intervals(g, c.intervals)) return fail(reason, "intervals do not represent the graph"), false;
  return true;
}

}  // namespace

bool verify_certificate(const Bigraph& g, const Certificate& c, std::string* reason) {
  try {
    if (c.n != g.n() || c.m != g.m()) return fail(reason, "size mismatch"), false;
    if (c.yes) return verify_yes(g, c, reason);
    if (std::holds_alternative<std::monostate>(c.witness)) return fail(reason, "no witness"), false;

    // Witness pairs use ids of g itself; H+ of a disconnected graph is the
    // disjoint union of the per-component ones plus isolated cross pairs.
    PairDigraph pd = build_pair_digraph(g);
    ComponentSet cs = classify_trivial(strong_components(pd), pd);

    if (auto* s = std::get_if<SelfCoupledWitness>(&c.witness)) {
      if (!valid_pair(g.n(), s->pair)) return fail(reason, "bad pair"), false;
      if (!path_ok(pd, s->forward, s->pair, skew(s->pair)) || !path_ok(pd, s->backward, skew(s->pair), s->pair))
        return fail(reason, "path is not a walk in H+"), false;
      return true;
    }
    if (auto* s = std::get_if<Step2ConflictWitness>(&c.witness)) {
      if (s->exobiclique && check_exobiclique(g, *s->exobiclique)) return true;
      auto a = named_component(cs, pd, s->component), b = named_component(cs, pd, s->couple);
      if (!a || !b || cs.couple(*a) != *b || *a == *b) return fail(reason, "components are not a couple"), false;
      std::vector<int> ba, bb;
      if (!replay(s->with_component, pd, cs, ba, reason) || !replay(s->with_couple, pd, cs, bb, reason)) return false;
      if (!std::binary_search(ba.begin(), ba.end(), *a) || std::binary_search(ba.begin(), ba.end(), *b))
        return fail(reason, "first circuit does not use the component"), false;
      if (!std::binary_search(bb.begin(), bb.end(), *b) || std::binary_search(bb.begin(), bb.end(), *a))
        return fail(reason, "second circuit does not use the couple"), false;
      std::vector<int> rest;
      for (int x : ba)
        if (x != *a) rest.push_back(x);
      for (int x : bb)
        if (x != *b) rest.push_back(x);
      std::sort(rest.begin(), rest.end());
      rest.erase(std::unique(rest.begin(), rest.end()), rest.end());
      if (std::binary_search(rest.begin(), rest.end(), *a) || std::binary_search(rest.begin(), rest.end(), *b) ||
          !consistent(cs, rest))
        return fail(reason, "earlier selection is not consistent"), false;
      return true;
    }
    if (auto* e = std::get_if<EnvelopeCircuitWitness>(&c.witness)) {
      std::vector<int> bases;
      if (!replay(e->trace, pd, cs, bases, reason)) return false;
      if (!consistent(cs, bases)) return fail(reason, "selection uses a component and its couple"), false;
      for (const auto& d : e->dictators) {
        auto k = named_component(cs, pd, d);
        if (!k || cs.trivial(*k)) return fail(reason, "dictator is not a nontrivial component"), false;
      }
      for (const auto& t : e->step3) {
        std::vector<int> b3;
        if (!replay(t, pd, cs, b3, reason)) return false;
        if (!consistent(cs, b3)) return fail(reason, "recorded circuit uses a component and its couple"), false;
      }
      return true;
    }
  } catch (const std::exception& ex) {
    fail(reason, ex.what());
  }
  return false;
}

// ---------------------------------------------------------------- exobiclique

namespace {

bool subset_of(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool incomparable_triple(const Bigraph& g, const std::array<Vertex, 3>& t, const std::vector<Vertex>& inside,
                         Color need, const std::vector<Vertex>& excluded) {
  std::array<std::vector<Vertex>, 3> nb;
  for (int i = 0; i < 3; ++i) {
    Vertex x = t[i];
    if (x < 0 || x >= g.n() || g.color(x) != need) return false;
    if (std::binary_search(excluded.begin(), excluded.end(), x)) return false;
    for (Vertex y : inside)
      if (g.adjacent(x, y)) nb[i].push_back(y);
  }
  if (t[0] == t[1] || t[0] == t[2] || t[1] == t[2]) return false;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j && subset_of(nb[i], nb[j])) return false;
  return true;
}

}  // namespace

bool check_exobiclique(const Bigraph& g, const ExoBiclique& e) {
  std::vector<Vertex> M = e.M, N = e.N;
  std::sort(M.begin(), M.end());
  std::sort(N.begin(), N.end());
  if (M.empty() || N.empty()) return false;
  if (std::adjacent_find(M.begin(), M.end()) != M.end() || std::adjacent_find(N.begin(), N.end()) != N.end())
    return false;
  for (Vertex x : M)
    if (x < 0 || x >= g.n() || g.color(x) != Color::Black) return false;
  for (Vertex y : N)
    if (y < 0 || y >= g.n() || g.color(y) != Color::White) return false;
  for (Vertex x : M)
    for (Vertex y : N)
      if (!g.adjacent(x, y)) return false;
  return incomparable_triple(g, e.black_triple, N, Color::Black, M) &&
         incomparable_triple(g, e.white_triple, M, Color::White, N);
}

namespace {

std::optional<std::array<Vertex, 3>> pick_incomparable(const std::vector<std::vector<Word>>& nb) {
  auto le = [](const std::vector<Word>& a, const std::vector<Word>& b) {
    for (std::size_t k = 0; k < a.size(); ++k)
      if (a[k] & ~b[k]) return false;
    return true;
  };
  const int c = static_cast<int>(nb.size());
  for (int i = 0; i < c; ++i)
    for (int j = i + 1; j < c; ++j) {
      if (le(nb[i], nb[j]) || le(nb[j], nb[i])) continue;
      for (int k = j + 1; k < c; ++k)
        if (!le(nb[k], nb[i]) && !le(nb[i], nb[k]) && !le(nb[k], nb[j]) && !le(nb[j], nb[k]))
          return std::array<Vertex, 3>{i, j, k};
    }
  return std::nullopt;
}

// Neighbourhoods of `cands` restricted to `inside`, as bitsets over vertex ids.
std::vector<std::vector<Word>> restricted(const Bigraph& g, const std::vector<Vertex>& cands,
                                          const std::vector<Word>& inside) {
  std::vector<std::vector<Word>> out;
  for (Vertex v : cands) {
    auto r = g.row(v);
    std::vector<Word> w(inside.size());
    for (std::size_t k = 0; k < w.size(); ++k) w[k] = r[k] & inside[k];
    out.push_back(std::move(w));
  }
  return out;
}

ExoBiclique orient(const Bigraph& g, std::vector<Vertex> M, std::vector<Vertex> N, std::array<Vertex, 3> tm,
                   std::array<Vertex, 3> tn) {
  // tm: triple outside M (same color as M), tn: outside N.
  if (!M.empty() && g.color(M.front()) == Color::White) {
    std::swap(M, N);
    std::swap(tm, tn);
  }
  std::sort(M.begin(), M.end());
  std::sort(N.begin(), N.end());
  std::sort(tm.begin(), tm.end());
  std::sort(tn.begin(), tn.end());
  return {M, N, tm, tn};
}

std::optional<ExoBiclique> from_circuit(const Bigraph& g, const ComponentSet& cs, const CircuitTrace& t) {
  const int k = static_cast<int>(t.circuit.size());
  if (k < 6) return std::nullopt;
  for (int r = 0; r < k; ++r) {
    auto x = [&](int i) { return t.circuit[(i + r) % k].first; };
    auto ab0 = independent_edges_for(g, {x(1), x(2)});
    auto ab1 = independent_edges_for(g, {x(3), x(4)});
    auto p1 = implied_witness(g, cs, {x(2), x(3)});
    auto p2 = implied_witness(g, cs, {x(4), x(5)});
    if (!ab0 || !ab1 || !p1 || !p2) continue;
    std::vector<Vertex> A{x(1), ab0->second, (*p1)[1], (*p1)[3]};
    std::vector<Vertex> B{x(3), ab1->second, (*p2)[1], (*p2)[3]};
    std::array<Vertex, 3> ta{ab1->first, x(4), (*p2)[4]};  // outside B
    std::array<Vertex, 3> tb{ab0->first, x(2), (*p1)[4]};  // outside A
    for (auto* s : {&A, &B}) {
      std::sort(s->begin(), s->end());
      s->erase(std::unique(s->begin(), s->end()), s->end());
    }
    // A and B are the two sides of the biclique; each triple has A's or B's color.
    ExoBiclique e = g.color(A.front()) == g.color(ta[0]) ? orient(g, A, B, ta, tb) : orient(g, A, B, tb, ta);
    if (check_exobiclique(g, e)) return e;
  }
  return std::nullopt;
}

}  // namespace

std::optional<ExoBiclique> find_exobiclique(const Bigraph& g, int limit) {
  std::vector<Vertex> black, white;
  for (Vertex v = 0; v < g.n(); ++v) (g.color(v) == Color::Black ? black : white).push_back(v);
  const auto& small = black.size() <= white.size() ? black : white;
  const auto& large = black.size() <= white.size() ? white : black;
  if (small.size() < 4 || large.size() < 4 || static_cast<int>(small.size()) > limit) return std::nullopt;
  const std::size_t W = g.words();
  const std::uint64_t full = std::uint64_t{1} << small.size();
  for (std::uint64_t mask = 1; mask < full; ++mask) {
    std::vector<Word> Mbits(W, 0), Nbits(W, 0);
    std::vector<Vertex> M;
    for (std::size_t i = 0; i < small.size(); ++i)
      if (mask >> i & 1) {
        M.push_back(small[i]);
        set_bit(Mbits, small[i]);
      }
    if (M.size() + 3 > small.size()) continue;
    // N = common neighbourhood of M
    {
      auto r = g.row(M[0]);
      std::copy(r.begin(), r.end(), Nbits.begin());
      for (std::size_t i = 1; i < M.size(); ++i) {
        auto ri = g.row(M[i]);
        for (std::size_t k = 0; k < W; ++k) Nbits[k] &= ri[k];
      }
    }
    std::vector<Vertex> N, outN, outM;
    for (Vertex y : large) (test_bit(Nbits, y) ? N : outN).push_back(y);
    if (N.empty() || outN.size() < 3) continue;
    auto tN = pick_incomparable(restricted(g, outN, Mbits));
    if (!tN) continue;
    for (Vertex x : small)
      if (!test_bit(Mbits, x)) outM.push_back(x);
    auto tM = pick_incomparable(restricted(g, outM, Nbits));
    if (!tM) continue;
    ExoBiclique e = orient(g, M, N, {outM[(*tM)[0]], outM[(*tM)[1]], outM[(*tM)[2]]},
                           {outN[(*tN)[0]], outN[(*tN)[1]], outN[(*tN)[2]]});
    if (check_exobiclique(g, e)) return e;
  }
  return std::nullopt;
}

std::optional<ExoBiclique> extract_exobiclique(const Bigraph& g, const Step2Conflict& conflict, int search_limit) {
  try {
    PairDigraph pd = build_pair_digraph(g);
    ComponentSet cs = classify_trivial(strong_components(pd), pd);
    for (const auto* t : {&conflict.with_component, &conflict.with_couple})
      if (auto e = from_circuit(g, cs, *t)) return e;
  } catch (const Error&) {
  }
  return find_exobiclique(g, search_limit);
}

// ---------------------------------------------------------------- pre-insect

namespace {

bool independent(const Bigraph& g, Edge a, Edge b) {
  Vertex p = a.first, q = a.second, r = b.first, s = b.second;
  if (p == r || p == s || q == r || q == s) return false;
  return !g.adjacent(p, r) && !g.adjacent(p, s) && !g.adjacent(q, r) && !g.adjacent(q, s);
}

bool completely_adjacent(const Bigraph& g, Vertex v, const std::vector<Vertex>& set) {
  for (Vertex x : set)
    if (g.color(x) != g.color(v) && !g.adjacent(v, x)) return false;
  return true;
}

bool touches(const Bigraph& g, Vertex v, const std::vector<Vertex>& set) {
  for (Vertex x : set)
    if (g.adjacent(v, x)) return true;
  return false;
}

bool connected_within(const Bigraph& g, const std::vector<Vertex>& part) {
  if (part.empty()) return false;
  std::vector<char> in(g.n(), 0), seen(g.n(), 0);
  for (Vertex v : part) in[v] = 1;
  std::vector<Vertex> st{part[0]};
  seen[part[0]] = 1;
  std::size_t count = 0;
  while (!st.empty()) {
    Vertex v = st.back();
    st.pop_back();
    ++count;
    for (Vertex w : g.neighbors(v))
      if (in[w] && !seen[w]) {
        seen[w] = 1;
        st.push_back(w);
      }
  }
  return count == part.size();
}

}  // namespace

int check_pre_insect(const Bigraph& g, const PreInsect& p) {
  std::vector<int> where(g.n(), -1);  // part index, or -2 X, -3 Y, -4 Z
  auto place = [&](const std::vector<Vertex>& s, int tag) {
    for (Vertex v : s) {
      if (v < 0 || v >= g.n() || where[v] != -1) return false;
      where[v] = tag;
    }
    return true;
  };
  for (std::size_t i = 0; i < p.parts.size(); ++i)
    if (!place(p.parts[i], static_cast<int>(i))) return 8;
  if (!place(p.X, -2) || !place(p.Y, -3) || !place(p.Z, -4)) return 8;
  if (std::count(where.begin(), where.end(), -1) != 0) return 8;
  if (p.parts.size() < 3) return 1;

  std::vector<Vertex> hp;
  for (const auto& part : p.parts) hp.insert(hp.end(), part.begin(), part.end());
  for (const auto& part : p.parts)
    if (!connected_within(g, part)) return 1;
  for (Vertex v : hp)
    for (Vertex w : g.neighbors(v))
      if (where[w] >= 0 && where[w] != where[v]) return 1;
  for (Vertex x : p.X)
    if (!completely_adjacent(g, x, p.X)) return 2;
  for (Vertex x : p.X)
    if (!completely_adjacent(g, x, hp)) return 3;
  for (Vertex y : p.Y)
    if (touches(g, y, hp)) return 4;
  for (Vertex a : p.Y)
    for (Vertex b : g.neighbors(a))
      if (where[b] == -3 && completely_adjacent(g, a, p.X) && completely_adjacent(g, b, p.X)) return 5;
  if (!p.Z.empty()) {
    bool all_i = true, all_ii = true;
    for (Vertex z : p.Z) {
      for (std::size_t i = 1; i < p.parts.size(); ++i) {
        if (!completely_adjacent(g, z, p.parts[i])) all_i = false;
        if (!touches(g, z, p.parts[i])) all_ii = false;
      }
      if (touches(g, z, p.parts[0])) all_ii = false;
    }
    if (!all_i && !all_ii) return 6;
  }
  std::vector<Vertex> xz = p.X;
  xz.insert(xz.end(), p.Z.begin(), p.Z.end());
  for (Vertex z : p.Z)
    if (!completely_adjacent(g, z, xz)) return 7;
  return 0;
}

std::optional<PreInsect> pre_insect_decompose(const Bigraph& g, Vertex u, Vertex v, Vertex w, const ComponentSet& cs,
                                              int* failed) {
  const int n = g.n();
  if (u < 0 || v < 0 || w < 0 || u >= n || v >= n || w >= n || u == v || v == w || u == w)
    throw Error(ErrorCode::PreconditionViolated, "u, v, w must be distinct vertices");
  int suv = cs.component_of(u, v), svw = cs.component_of(v, w);
  if (cs.self_coupled()) throw Error(ErrorCode::PreconditionViolated, "H+ has a self-coupled component");
  if (cs.trivial(suv) || cs.trivial(svw) || suv == svw || suv == cs.couple(svw))
    throw Error(ErrorCode::PreconditionViolated, "need nontrivial S_uv != S_vw, S_wv");
  auto e_uv = independent_edges_for(g, {u, v});
  auto e_vw = independent_edges_for(g, {v, w});
  if (!e_uv || !e_vw) throw Error(ErrorCode::PreconditionViolated, "no independent edges");
  std::array<Edge, 3> seeds{};
  bool found = false;
  for (Vertex vv : {e_uv->second, e_vw->first}) {
    seeds = {Edge{u, e_uv->first}, Edge{v, vv}, Edge{w, e_vw->second}};
    if (independent(g, seeds[0], seeds[1]) && independent(g, seeds[1], seeds[2]) &&
        independent(g, seeds[0], seeds[2])) {
      found = true;
      break;
    }
  }
  if (!found) {
    if (failed) *failed = 1;
    return std::nullopt;
  }

  // Grow three components greedily: a vertex may join when its neighbours
  // inside the current subgraph all lie in one component.
  std::vector<int> label(n, -1);
  for (int i = 0; i < 3; ++i) label[seeds[i].first] = label[seeds[i].second] = i;
  for (bool changed = true; changed;) {
    changed = false;
    for (Vertex x = 0; x < n; ++x) {
      if (label[x] != -1) continue;
      int seen = -1;
      bool ok = true;
      for (Vertex y : g.neighbors(x))
        if (label[y] != -1) {
          if (seen == -1) seen = label[y];
          else if (seen != label[y]) ok = false;
        }
      if (ok && seen != -1) {
        label[x] = seen;
        changed = true;
      }
    }
  }
  std::vector<std::vector<Vertex>> parts(3);
  std::vector<Vertex> s3;
  for (Vertex x = 0; x < n; ++x)
    if (label[x] >= 0) {
      parts[label[x]].push_back(x);
      s3.push_back(x);
    }
  PreInsect p;
  std::vector<Vertex> yprime, T;
  for (Vertex x = 0; x < n; ++x) {
    if (label[x] >= 0) continue;
    if (completely_adjacent(g, x, s3)) p.X.push_back(x);
    else if (!touches(g, x, s3)) yprime.push_back(x);
  }
  std::vector<char> inT(n, 0);
  for (Vertex y : yprime) {
    if (completely_adjacent(g, y, p.X)) {
      T.push_back(y);
      inT[y] = 1;
    } else {
      p.Y.push_back(y);
    }
  }
  std::vector<std::vector<Vertex>> tparts;
  std::vector<char> seen(n, 0);
  for (Vertex t : T) {
    if (seen[t]) continue;
    std::vector<Vertex> comp{t}, st{t};
    seen[t] = 1;
    while (!st.empty()) {
      Vertex a = st.back();
      st.pop_back();
      for (Vertex b : g.neighbors(a))
        if (inT[b] && !seen[b]) {
          seen[b] = 1;
          comp.push_back(b);
          st.push_back(b);
        }
    }
    std::sort(comp.begin(), comp.end());
    tparts.push_back(std::move(comp));
  }
  std::vector<char> used(n, 0);
  for (Vertex x = 0; x < n; ++x) used[x] = label[x] >= 0 || inT[x];
  for (Vertex x : p.X) used[x] = 1;
  for (Vertex x : p.Y) used[x] = 1;
  for (Vertex x = 0; x < n; ++x)
    if (!used[x]) p.Z.push_back(x);

  // The component in the special position goes first.
  int first_fail = 0;
  for (int lead : {0, 2, 1}) {
    PreInsect q = p;
    q.parts.push_back(parts[lead]);
    for (int i = 0; i < 3; ++i)
      if (i != lead) q.parts.push_back(parts[i]);
    for (auto& t : tparts) q.parts.push_back(t);
    int f = check_pre_insect(g, q);
    if (f == 0) return q;
    if (!first_fail) first_fail = f;
  }
  if (failed) *failed = first_fail;
  return std::nullopt;
}

// ---------------------------------------------------------------- oracle

OracleResult oracle_recognize(const Bigraph& g, int limit_n) {
  const int n = g.n();
  if (n > limit_n) throw Error(ErrorCode::TooLarge, "oracle limited to " + std::to_string(limit_n) + " vertices");
  if (n > 26) throw Error(ErrorCode::TooLarge, "oracle supports at most 26 vertices");
  OracleResult res;
  if (n == 0) {
    res.is_interval_bigraph = true;
    res.ordering = Ordering::from_sequence({});
    return res;
  }
  using Mask = std::uint32_t;
  std::vector<Mask> adj(n, 0), opp(n, 0);
  Mask black = 0;
  for (Vertex v = 0; v < n; ++v) {
    if (g.color(v) == Color::Black) black |= Mask{1} << v;
    for (Vertex w : g.neighbors(v)) adj[v] |= Mask{1} << w;
  }
  const Mask all = n == 32 ? ~Mask{0} : (Mask{1} << n) - 1;
  for (Vertex v = 0; v < n; ++v) opp[v] = g.color(v) == Color::Black ? all & ~black : black;

  // Appending b after placed set P is illegal iff some unplaced c of the other
  // color misses b but sees P. A violation among placed vertices never goes
  // away, so pruning prefixes is exact.
  auto legal = [&](Mask P, Vertex b) {
    Mask cand = opp[b] & ~P & ~adj[b];
    while (cand) {
      int c = std::countr_zero(cand);
      cand &= cand - 1;
      if (adj[c] & P) return false;
    }
    return true;
  };
  std::vector<bool> dead(std::size_t{1} << n, false);
  std::vector<Vertex> seq;
  std::function<bool(Mask)> dfs = [&](Mask P) -> bool {
    if (P == all) return true;
    if (dead[P]) return false;
    for (Vertex b = 0; b < n; ++b) {
      if (P >> b & 1 || !legal(P, b)) continue;
      seq.push_back(b);
      if (dfs(P | Mask{1} << b)) return true;
      seq.pop_back();
    }
    dead[P] = true;
    return false;
  };
  if (dfs(0)) {
    res.is_interval_bigraph = true;
    res.ordering = Ordering::from_sequence(seq);
  }
  return res;
}

void enumerate_bigraphs(int n, const std::function<bool(const Bigraph&)>& f) {
  if (n > 8) throw Error(ErrorCode::TooLarge, "enumeration limited to 8 vertices");
  for (int size = 2; size <= n; ++size)
    for (int nb = 1; nb < size; ++nb) {
      const int nw = size - nb;
      const int slots = nb * nw;
      std::vector<Color> colors(size, Color::White);
      std::fill(colors.begin(), colors.begin() + nb, Color::Black);
      for (std::uint32_t subset = 0; subset < (std::uint32_t{1} << slots); ++subset) {
        std::vector<std::uint32_t> adj(size, 0);
        for (int s = 0; s < slots; ++s)
          if (subset >> s & 1) {
            int b = s / nw, w = nb + s % nw;
            adj[b] |= 1u << w;
            adj[w] |= 1u << b;
          }
        std::uint32_t reach = 1, frontier = 1;
        while (frontier) {
          std::uint32_t next = 0;
          for (std::uint32_t f2 = frontier; f2; f2 &= f2 - 1) next |= adj[std::countr_zero(f2)];
          frontier = next & ~reach;
          reach |= next;
        }
        if (reach != (1u << size) - 1) continue;
        std::vector<Edge> edges;
        for (int s = 0; s < slots; ++s)
          if (subset >> s & 1) edges.emplace_back(s / nw, nb + s % nw);
        if (!f(Bigraph(colors, edges))) return;
      }
    }
}

std::vector<Bigraph> enumerate_bigraphs(int n) {
  std::vector<Bigraph> out;
  enumerate_bigraphs(n, [&](const Bigraph& g) {
    out.push_back(g);
    return true;
  });
  return out;
}

}  // namespace ibg
