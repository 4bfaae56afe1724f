#include "ibg/order_engine.hpp"

#include <algorithm>
#include <deque>
#include <queue>
#include <sstream>
#include <unordered_set>

#include "ibg/error.hpp"
#include "ibg/ordering.hpp"

namespace ibg {

const char* to_string(Derivation d) {
  switch (d) {
    case Derivation::None: return "none";
    case Derivation::Base: return "base";
    case Derivation::Implied: return "implied";
    case Derivation::Transitive: return "transitive";
    case Derivation::Completion: return "completion";
  }
  return "?";
}

const char* to_string(Phase p) {
  switch (p) {
    case Phase::Step2: return "step2";
    case Phase::Step3: return "step3";
    case Phase::Step4: return "step4";
    case Phase::Step5: return "step5";
    case Phase::Step6: return "step6";
  }
  return "?";
}

OrderRelation::OrderRelation(int n)
    : n_(n), succ_(n), pred_(n), meta_(static_cast<std::size_t>(n) * n) {}

const PairMeta& OrderRelation::meta(Vertex x, Vertex y) const {
  if (x < 0 || y < 0 || x >= n_ || y >= n_ || !contains(x, y))
    throw Error(ErrorCode::UnknownPair,
                "(" + std::to_string(x) + "," + std::to_string(y) + ") is not in the relation");
  return meta_[id(x, y)];
}

bool OrderRelation::insert(Vertex x, Vertex y, const PairMeta& m) {
  if (succ_.test(x, y)) return false;
  succ_.set(x, y);
  pred_.set(y, x);
  meta_[id(x, y)] = m;
  log_.push_back(id(x, y));
  return true;
}

std::vector<PairVertex> OrderRelation::pairs() const {
  std::vector<PairVertex> out;
  out.reserve(log_.size());
  for (PairId p : log_) out.push_back(pair(p));
  return out;
}

int dict_of(const OrderRelation& D, PairVertex p) { return D.meta(p).dict; }

std::vector<DerivationStep> back_trace(const OrderRelation& D, const std::vector<PairVertex>& pairs) {
  std::vector<DerivationStep> out;
  std::unordered_set<PairId> done;
  struct Item {
    PairId p;
    bool expanded;
  };
  std::vector<Item> stack;
  for (auto it = pairs.rbegin(); it != pairs.rend(); ++it) stack.push_back({D.id(it->first, it->second), false});
  while (!stack.empty()) {
    Item item = stack.back();
    stack.pop_back();
    if (done.count(item.p)) continue;
    PairVertex pv = D.pair(item.p);
    const PairMeta& m = D.meta(pv);
    if (!item.expanded) {
      stack.push_back({item.p, true});
      if (m.kind == Derivation::Implied) {
        stack.push_back({static_cast<PairId>(m.aux), false});
      } else if (m.kind == Derivation::Transitive) {
        stack.push_back({D.id(m.aux, pv.second), false});
        stack.push_back({D.id(pv.first, m.aux), false});
      }
      continue;
    }
    done.insert(item.p);
    DerivationStep s;
    s.pair = pv;
    s.kind = m.kind;
    s.level = m.level;
    s.dict = m.dict;
    if (m.kind == Derivation::Base || m.kind == Derivation::Completion) s.component = m.aux;
    if (m.kind == Derivation::Implied) s.from = D.pair(static_cast<PairId>(m.aux));
    if (m.kind == Derivation::Transitive) s.via = m.aux;
    out.push_back(s);
  }
  return out;
}

namespace {

// Shortest path from s to t in the digraph whose out-neighbours of a are
// given by nbrs(a, visit). Returns the vertex sequence s..t or empty.
template <class Nbrs>
std::vector<Vertex> bfs_path(int n, Vertex s, Vertex t, Nbrs&& nbrs) {
  std::vector<Vertex> parent(n, -1);
  std::vector<char> seen(n, 0);
  std::deque<Vertex> q{s};
  seen[s] = 1;
  while (!q.empty()) {
    Vertex a = q.front();
    q.pop_front();
    if (a == t) break;
    nbrs(a, [&](Vertex b) {
      if (!seen[b]) {
        seen[b] = 1;
        parent[b] = a;
        q.push_back(b);
      }
    });
  }
  if (!seen[t]) return {};
  std::vector<Vertex> path;
  for (Vertex v = t; v != -1; v = parent[v]) {
    path.push_back(v);
    if (v == s) break;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

// Closing pair (x,y) plus the path y..x, as a list of pairs starting at (x,y).
std::vector<PairVertex> cycle_pairs(Vertex x, Vertex y, const std::vector<Vertex>& path_y_to_x) {
  std::vector<PairVertex> c{{x, y}};
  for (std::size_t i = 0; i + 1 < path_y_to_x.size(); ++i) c.push_back({path_y_to_x[i], path_y_to_x[i + 1]});
  return c;
}

// Reachability closure maintained under arc insertion.
class Reach {
 public:
  explicit Reach(int n) : n_(n), desc_(n), anc_(n), tmp_(words_for(n)), src_(words_for(n)) {}

  bool reaches(Vertex a, Vertex b) const { return desc_.test(a, b); }
  std::span<const Word> desc(Vertex a) const { return desc_.row(a); }
  std::span<const Word> anc(Vertex a) const { return anc_.row(a); }

  void add(Vertex x, Vertex y) {
    if (desc_.test(x, y)) return;
    auto dy = desc_.row(y);
    std::copy(dy.begin(), dy.end(), tmp_.begin());
    set_bit(tmp_, y);
    // Only ancestors of x (and x) that do not yet reach y gain anything.
    auto ax = anc_.row(x), ay = anc_.row(y);
    for (std::size_t k = 0; k < src_.size(); ++k) src_[k] = ax[k] & ~ay[k];
    set_bit(src_, x);
    for_each_bit(std::span<const Word>(src_), [&](std::size_t a) {
      auto da = desc_.row(a);
      for (std::size_t k = 0; k < da.size(); ++k) {
        Word nw = tmp_[k] & ~da[k];
        if (!nw) continue;
        da[k] |= nw;
        for_each_bit_in_word(nw, k, [&](std::size_t b) { anc_.set(b, a); });
      }
    });
  }

  // Recompute from scratch for the arcs accepted by keep(a, b).
  template <class Arcs>
  void rebuild(Arcs&& arcs) {
    desc_.clear();
    anc_.clear();
    arcs([&](Vertex a, Vertex b) { desc_.set(a, b); });
    for (int k = 0; k < n_; ++k)
      for (int i = 0; i < n_; ++i)
        if (desc_.test(i, k)) {
          auto di = desc_.row(i);
          auto dk = desc_.row(k);
          for (std::size_t w = 0; w < di.size(); ++w) di[w] |= dk[w];
        }
    for (int i = 0; i < n_; ++i)
      for_each_bit(desc_.row(i), [&](std::size_t j) { anc_.set(j, i); });
  }

 private:
  int n_;
  BitMatrix desc_, anc_;
  std::vector<Word> tmp_, src_;
};

bool is_acyclic(const OrderRelation& D) {
  const int n = D.n();
  std::vector<std::uint32_t> indeg(n);
  std::vector<Vertex> q;
  for (Vertex v = 0; v < n; ++v) {
    indeg[v] = static_cast<std::uint32_t>(popcount(D.predecessors(v)));
    if (indeg[v] == 0) q.push_back(v);
  }
  std::size_t seen = 0;
  while (seen < q.size()) {
    Vertex a = q[seen++];
    for_each_bit(D.successors(a), [&](std::size_t b) {
      if (--indeg[b] == 0) q.push_back(static_cast<Vertex>(b));
    });
  }
  return static_cast<int>(q.size()) == n;
}

}  // namespace

std::optional<CircuitTrace> detect_circuit(const OrderRelation& D) {
  if (is_acyclic(D)) return std::nullopt;
  const int n = D.n();
  std::vector<Vertex> best;
  for (Vertex x = 0; x < n; ++x) {
    // Shortest cycle through x.
    std::vector<int> dist(n, -1);
    std::vector<Vertex> parent(n, -1);
    std::deque<Vertex> q;
    for_each_bit(D.successors(x), [&](std::size_t b) {
      dist[b] = 1;
      parent[b] = x;
      q.push_back(static_cast<Vertex>(b));
    });
    while (!q.empty() && dist[x] < 0) {
      Vertex a = q.front();
      q.pop_front();
      for_each_bit(D.successors(a), [&](std::size_t b) {
        if (dist[b] < 0) {
          dist[b] = dist[a] + 1;
          parent[b] = a;
          q.push_back(static_cast<Vertex>(b));
        }
      });
    }
    if (dist[x] < 0) continue;
    if (best.empty() || dist[x] < static_cast<int>(best.size())) {
      std::vector<Vertex> cyc;  // x, ..., back to x (excluded)
      for (Vertex v = parent[x]; v != x; v = parent[v]) cyc.push_back(v);
      cyc.push_back(x);
      std::reverse(cyc.begin(), cyc.end());
      best = cyc;
    }
  }
  CircuitTrace t;
  for (std::size_t i = 0; i < best.size(); ++i) t.circuit.push_back({best[i], best[(i + 1) % best.size()]});
  t.closing = t.circuit.back();
  t.dictator = D.meta(t.closing).dict;
  t.derivation = back_trace(D, t.circuit);
  return t;
}

std::vector<StarEntry> component_star(const ComponentSet& cs, const PairDigraph& pd, int c) {
  std::vector<StarEntry> out;
  const Bigraph& g = pd.graph();
  const int n = pd.n();
  // seen rows indexed by first vertex; bit b marks pair (a,b).
  BitMatrix seen(n);
  auto members = cs.members(c);
  out.reserve(members.size() * 2);
  for (PairId p : members) {
    out.push_back({p, Derivation::Base, p});
    auto [u, v] = pd.pair(p);
    seen.set(u, v);
  }
  for (PairId p : members) {
    auto [u, v] = pd.pair(p);
    auto ru = g.row(u), rv = g.row(v);
    if (g.color(u) == g.color(v)) {
      for (std::size_t k = 0; k < ru.size(); ++k)
        for_each_bit_in_word(ru[k] & ~rv[k], k, [&](std::size_t a) {
          if (seen.test(static_cast<Vertex>(a), v)) return;
          seen.set(static_cast<Vertex>(a), v);
          out.push_back({pd.id(static_cast<Vertex>(a), v), Derivation::Implied, p});
        });
    } else if (!g.adjacent(u, v)) {
      auto su = seen.row(u);
      for (std::size_t k = 0; k < rv.size(); ++k)
        for_each_bit_in_word(rv[k] & ~su[k], k, [&](std::size_t b) {
          seen.set(u, static_cast<Vertex>(b));
          out.push_back({pd.id(u, static_cast<Vertex>(b)), Derivation::Implied, p});
        });
    }
  }
  return out;
}

namespace {

void insert_star(OrderRelation& D, const PairDigraph& pd, int c, const std::vector<StarEntry>& star) {
  for (const auto& e : star) {
    auto [x, y] = pd.pair(e.pair);
    PairMeta m;
    m.level = 0;
    m.dict = c;
    m.kind = e.kind;
    m.aux = e.kind == Derivation::Base ? c : static_cast<std::int32_t>(e.from);
    m.original = true;
    D.insert(x, y, m);
  }
}

std::vector<PairVertex> star_pairs(const PairDigraph& pd, const std::vector<StarEntry>& star) {
  std::vector<PairVertex> b;
  b.reserve(star.size());
  for (const auto& e : star) b.push_back(pd.pair(e.pair));
  return b;
}

}  // namespace

void add_star(OrderRelation& D, const ComponentSet& cs, const PairDigraph& pd, int c) {
  insert_star(D, pd, c, component_star(cs, pd, c));
}

namespace {

// Cycle test for D + batch given the closure of D: a cycle exists iff the
// graph on batch endpoints with batch arcs and D-reachability is cyclic.
bool batch_creates_cycle(const Reach& reach, int n, const std::vector<PairVertex>& batch) {
  std::vector<PairVertex> arcs = batch;
  std::sort(arcs.begin(), arcs.end());
  std::vector<Word> kmask(words_for(n), 0), gray(words_for(n), 0), white(words_for(n), 0);
  for (auto [x, y] : arcs) {
    if (x == y) return true;
    set_bit(kmask, x);
    set_bit(kmask, y);
  }
  white = kmask;
  auto out_begin = [&](Vertex a) {
    return std::lower_bound(arcs.begin(), arcs.end(), PairVertex{a, -1}) - arcs.begin();
  };
  struct Frame {
    Vertex a;
    std::size_t arc;  // index into arcs
    std::size_t word;
  };
  std::vector<Frame> stack;
  for (auto [root, unused] : arcs) {
    (void)unused;
    if (!test_bit(white, root)) continue;
    clear_bit(white, root);
    set_bit(gray, root);
    stack.push_back({root, static_cast<std::size_t>(out_begin(root)), 0});
    while (!stack.empty()) {
      Frame& f = stack.back();
      Vertex next = -1;
      while (f.arc < arcs.size() && arcs[f.arc].first == f.a) {
        Vertex b = arcs[f.arc].second;
        ++f.arc;
        if (test_bit(gray, b)) return true;
        if (test_bit(white, b)) {
          next = b;
          break;
        }
      }
      if (next < 0) {
        auto d = reach.desc(f.a);
        while (f.word < d.size()) {
          std::size_t k = f.word;
          if (d[k] & kmask[k] & gray[k]) return true;
          Word w = d[k] & white[k];
          if (w) {
            next = static_cast<Vertex>(k * 64 + std::countr_zero(w));
            break;
          }
          ++f.word;
        }
      }
      if (next >= 0) {
        clear_bit(white, next);
        set_bit(gray, next);
        stack.push_back({next, static_cast<std::size_t>(out_begin(next)), 0});
      } else {
        clear_bit(gray, f.a);
        stack.pop_back();
      }
    }
  }
  return false;
}

// Shortest circuit of D + S* through at least one pair of S*.
CircuitTrace shortest_batch_circuit(const OrderRelation& D, const ComponentSet& cs,
                                    const PairDigraph& pd, int c) {
  OrderRelation both = D;
  auto star = component_star(cs, pd, c);
  insert_star(both, pd, c, star);
  std::vector<PairVertex> batch = star_pairs(pd, star);
  const int n = D.n();
  std::vector<Vertex> best;
  PairVertex best_arc{};
  std::vector<std::vector<Vertex>> by_head(n);
  for (auto [x, y] : batch) by_head[y].push_back(x);
  for (Vertex y = 0; y < n; ++y) {
    if (by_head[y].empty()) continue;
    std::vector<int> dist(n, -1);
    std::vector<Vertex> parent(n, -1);
    std::deque<Vertex> q{y};
    dist[y] = 0;
    while (!q.empty()) {
      Vertex a = q.front();
      q.pop_front();
      for_each_bit(both.successors(a), [&](std::size_t b) {
        if (dist[b] < 0) {
          dist[b] = dist[a] + 1;
          parent[b] = a;
          q.push_back(static_cast<Vertex>(b));
        }
      });
    }
    for (auto [x, yy] : batch) {
      if (yy != y || dist[x] < 0) continue;
      if (best.empty() || dist[x] + 1 < static_cast<int>(best.size())) {
        std::vector<Vertex> path;
        for (Vertex v = x; v != -1; v = parent[v]) {
          path.push_back(v);
          if (v == y) break;
        }
        std::reverse(path.begin(), path.end());
        best = path;
        best_arc = {x, y};
      }
    }
  }
  CircuitTrace t;
  t.phase = Phase::Step2;
  if (best.empty()) throw Error(ErrorCode::InternalInconsistency, "step 2 circuit not found");
  t.circuit = cycle_pairs(best_arc.first, best_arc.second, best);
  t.closing = best_arc;
  t.dictator = both.meta(best_arc).dict;
  t.derivation = back_trace(both, t.circuit);
  return t;
}

void commit_star(OrderRelation& D, Reach& reach, const PairDigraph& pd, int c, const std::vector<StarEntry>& star) {
  std::size_t before = D.size();
  insert_star(D, pd, c, star);
  const auto& log = D.insertion_log();
  for (std::size_t i = before; i < log.size(); ++i) {
    auto [x, y] = D.pair(log[i]);
    reach.add(x, y);
  }
}

}  // namespace

std::variant<Step2Selection, Step2Conflict> step2_select(const ComponentSet& cs, const PairDigraph& pd) {
  if (cs.self_coupled())
    throw Error(ErrorCode::PreconditionViolated, "self-coupled component present");
  const int n = pd.n();
  Step2Selection sel{OrderRelation(n), {}};
  Reach reach(n);
  std::vector<char> decided(cs.count(), 0);
  for (int c : cs.nontrivial()) {
    if (decided[c]) continue;
    int c2 = cs.couple(c);
    decided[c] = decided[c2] = 1;
    auto star = component_star(cs, pd, c);
    if (!batch_creates_cycle(reach, n, star_pairs(pd, star))) {
      commit_star(sel.relation, reach, pd, c, star);
      sel.chosen.push_back(c);
      continue;
    }
    star = component_star(cs, pd, c2);
    if (!batch_creates_cycle(reach, n, star_pairs(pd, star))) {
      commit_star(sel.relation, reach, pd, c2, star);
      sel.chosen.push_back(c2);
    } else {
      Step2Conflict conflict;
      conflict.component = c;
      conflict.couple = c2;
      conflict.with_component = shortest_batch_circuit(sel.relation, cs, pd, c);
      conflict.with_couple = shortest_batch_circuit(sel.relation, cs, pd, c2);
      conflict.chosen = sel.chosen;
      return conflict;
    }
  }
  return sel;
}

namespace {

class EnvelopeEngine {
 public:
  EnvelopeEngine(const PairDigraph& pd, const EnvelopeOptions& opt, EnvelopeResult& res)
      : pd_(pd), g_(pd.graph()), n_(pd.n()), opt_(opt), res_(res), D_(res.relation), reach_(pd.n()),
        mask_(words_for(pd.n())) {}

  void run() {
    // Level 0 starts from the given pairs; all are original in a circuit-free D.
    for (PairId p : D_.insertion_log()) {
      auto [x, y] = D_.pair(p);
      D_.meta_mut(p).original = !D_.contains(y, x);
      reach_.add(x, y);
      queue_.push_back(p);
    }
    level_ = 0;
    if (!implications()) return;
    while (true) {
      ++level_;
      std::size_t added = 0;
      if (!transitive_level(added)) return;
      if (added == 0) {
        --level_;
        break;
      }
      if (!implications()) return;
    }
    res_.levels = level_;
  }

 private:
  // Returns false when stopping at a circuit.
  bool insert(Vertex x, Vertex y, const PairMeta& m) {
    if (!D_.insert(x, y, m)) return true;
    ++res_.insertions;
    queue_.push_back(D_.id(x, y));
    if (opt_.stop_at_first_circuit) {
      if (reach_.reaches(y, x)) {
        record(x, y, /*original_only=*/false);
        res_.stopped = true;
        res_.levels = level_;
        return false;
      }
      reach_.add(x, y);
      return true;
    }
    if (!m.original) return true;
    if (reach_.reaches(y, x)) {
      record(x, y, true);
      collapse(x, y);
    } else {
      reach_.add(x, y);
    }
    return true;
  }

  void record(Vertex x, Vertex y, bool original_only) {
    ++res_.circuit_count;
    const PairMeta& m = D_.meta(x, y);
    if (std::find(res_.dictators.begin(), res_.dictators.end(), m.dict) == res_.dictators.end())
      res_.dictators.push_back(m.dict);
    if (res_.traces.size() >= opt_.max_traces) return;
    // Prefer a path of non-transitive pairs; with original_only those must also be original.
    auto try_path = [&](bool skip_transitive) {
      return bfs_path(n_, y, x, [&](Vertex a, auto&& visit) {
        for_each_bit(D_.successors(a), [&](std::size_t b) {
          if (static_cast<Vertex>(b) == y && a == x) return;
          const PairMeta& mb = D_.meta_unchecked(D_.id(a, static_cast<Vertex>(b)));
          if (original_only && !mb.original) return;
          if (skip_transitive && mb.kind == Derivation::Transitive) return;
          visit(static_cast<Vertex>(b));
        });
      });
    };
    auto path = try_path(true);
    if (path.empty()) path = try_path(false);
    CircuitTrace t;
    t.phase = opt_.stop_at_first_circuit ? Phase::Step5 : Phase::Step3;
    t.closing = {x, y};
    t.dictator = m.dict;
    t.circuit = cycle_pairs(x, y, path);
    t.derivation = back_trace(D_, t.circuit);
    res_.traces.push_back(std::move(t));
  }

  // Original pairs inside the strongly connected set closed by (x,y) stop being original.
  void collapse(Vertex x, Vertex y) {
    std::vector<Word> scc(words_for(n_));
    auto dy = reach_.desc(y), ax = reach_.anc(x);
    for (std::size_t k = 0; k < scc.size(); ++k) scc[k] = dy[k] & ax[k];
    set_bit(scc, x);
    set_bit(scc, y);
    for_each_bit(std::span<const Word>(scc), [&](std::size_t a) {
      auto s = D_.successors(static_cast<Vertex>(a));
      for (std::size_t k = 0; k < s.size(); ++k)
        for_each_bit_in_word(s[k] & scc[k], k, [&](std::size_t b) {
          D_.meta_mut(D_.id(static_cast<Vertex>(a), static_cast<Vertex>(b))).original = false;
        });
    });
    reach_.rebuild([&](auto&& arc) {
      for (PairId p : D_.insertion_log())
        if (D_.meta_unchecked(p).original) {
          auto [a, b] = D_.pair(p);
          arc(a, b);
        }
    });
  }

  bool implications() {
    while (head_ < queue_.size()) {
      PairId p = queue_[head_++];
      auto [x, y] = D_.pair(p);
      const PairMeta src = D_.meta_unchecked(p);
      const bool same = g_.color(x) == g_.color(y);
      if (!same && g_.adjacent(x, y)) continue;
      auto rx = g_.row(x), ry = g_.row(y);
      for (std::size_t k = 0; k < mask_.size(); ++k) {
        // same colors: targets (u',y), u' in N(x) \ N(y); mixed: targets (x,v'), v' in N(y)
        Word w = same ? (rx[k] & ~ry[k] & ~D_.predecessors(y)[k]) : (ry[k] & ~D_.successors(x)[k]);
        while (w) {
          Vertex t = static_cast<Vertex>(k * 64 + std::countr_zero(w));
          w &= w - 1;
          Vertex a = same ? t : x, b = same ? y : t;
          if (D_.contains(a, b)) continue;
          PairMeta m;
          m.level = level_;
          m.kind = Derivation::Implied;
          m.aux = static_cast<std::int32_t>(p);
          m.dict = src.dict;
          m.original = D_.meta_unchecked(p).original && !D_.contains(b, a);
          if (!insert(a, b, m)) return false;
        }
      }
    }
    return true;
  }

  bool transitive_level(std::size_t& added) {
    BitMatrix snap = D_.succ_matrix();
    std::vector<Word> claimed(words_for(n_));
    struct Cand {
      Vertex x, y, w;
    };
    std::vector<Cand> cands;
    for (Vertex x = 0; x < n_; ++x) {
      auto sx = snap.row(x);
      std::copy(sx.begin(), sx.end(), claimed.begin());
      set_bit(claimed, x);
      for_each_bit(sx, [&](std::size_t w) {
        auto sw = snap.row(w);
        for (std::size_t k = 0; k < sw.size(); ++k) {
          Word nw = sw[k] & ~claimed[k];
          if (!nw) continue;
          claimed[k] |= nw;
          for_each_bit_in_word(nw, k, [&](std::size_t y) {
            cands.push_back({x, static_cast<Vertex>(y), static_cast<Vertex>(w)});
          });
        }
      });
    }
    for (const auto& c : cands) {
      const PairMeta& xw = D_.meta_unchecked(D_.id(c.x, c.w));
      const PairMeta& wy = D_.meta_unchecked(D_.id(c.w, c.y));
      PairMeta m;
      m.level = level_;
      m.kind = Derivation::Transitive;
      m.aux = c.w;
      m.dict = g_.color(c.x) == g_.color(c.y) ? wy.dict : xw.dict;
      m.original = xw.original && wy.original && !D_.contains(c.y, c.x);
      ++added;
      if (!insert(c.x, c.y, m)) return false;
    }
    return true;
  }

  const PairDigraph& pd_;
  const Bigraph& g_;
  int n_;
  const EnvelopeOptions& opt_;
  EnvelopeResult& res_;
  OrderRelation& D_;
  Reach reach_;
  std::vector<Word> mask_;
  std::vector<PairId> queue_;
  std::size_t head_ = 0;
  std::uint32_t level_ = 0;
};

}  // namespace

EnvelopeResult compute_envelope(OrderRelation D, const PairDigraph& pd, const EnvelopeOptions& opt) {
  EnvelopeResult res;
  res.relation = std::move(D);
  EnvelopeEngine(pd, opt, res).run();
  return res;
}

CircuitTrace extract_minimal_circuit(const std::vector<CircuitTrace>& traces, const Bigraph& g) {
  if (traces.empty()) throw Error(ErrorCode::PreconditionViolated, "no circuits recorded");
  const CircuitTrace& t = traces.front();
  if (t.circuit.size() != 4)
    throw Error(ErrorCode::InternalInconsistency,
                "first circuit has " + std::to_string(t.circuit.size()) + " pairs, expected 4");
  std::string colors;
  for (const auto& p : t.circuit) colors.push_back(color_char(g.color(p.first)));
  const std::size_t at = (colors + colors).find("WBBW");
  if (at == std::string::npos)
    throw Error(ErrorCode::InternalInconsistency, "first circuit has colors " + colors);
  // Rotate so that the circuit reads x0 (white), x1, x2 (black), x3 (white).
  CircuitTrace out = t;
  std::rotate(out.circuit.begin(), out.circuit.begin() + static_cast<std::ptrdiff_t>(at), out.circuit.end());
  return out;
}

OrderRelation step4_rebuild(const ComponentSet& cs, const std::vector<int>& chosen,
                            const std::vector<int>& dt, const PairDigraph& pd) {
  OrderRelation D1(pd.n());
  for (int c : chosen) {
    bool dictator = std::find(dt.begin(), dt.end(), c) != dt.end();
    add_star(D1, cs, pd, dictator ? cs.couple(c) : c);
  }
  if (!is_acyclic(D1))
    throw Error(ErrorCode::InternalInconsistency, "rebuilt relation contains a circuit");
  return D1;
}

namespace {

class Completion {
 public:
  Completion(OrderRelation& D, const ComponentSet& cs, const PairDigraph& pd)
      : D_(D), cs_(cs), pd_(pd), g_(pd.graph()), n_(pd.n()), undecided_first_(n_), undecided_second_(n_),
        count_(pd.id_space(), 0), buf_(words_for(n_)) {}

  std::size_t run() {
    for (Vertex u = 0; u < n_; ++u)
      for (Vertex v = 0; v < n_; ++v) {
        if (u == v || D_.contains(u, v) || D_.contains(v, u)) continue;
        undecided_first_.set(u, v);
        undecided_second_.set(v, u);
      }
    for (Vertex u = 0; u < n_; ++u)
      for_each_bit(undecided_first_.row(u), [&](std::size_t vv) {
        Vertex v = static_cast<Vertex>(vv);
        std::uint32_t c = 0;
        if (g_.color(u) == g_.color(v)) {
          auto ru = g_.row(u), rv = g_.row(v), pv = D_.predecessors(v);
          for (std::size_t k = 0; k < ru.size(); ++k) c += std::popcount(ru[k] & ~rv[k] & ~pv[k]);
        } else if (!g_.adjacent(u, v)) {
          auto rv = g_.row(v), su = D_.successors(u);
          for (std::size_t k = 0; k < rv.size(); ++k) c += std::popcount(rv[k] & ~su[k]);
        }
        count_[pd_.id(u, v)] = c;
        if (c == 0) heap_.push(pd_.id(u, v));
      });
    std::size_t added = 0;
    while (!heap_.empty()) {
      PairId p = heap_.top();
      heap_.pop();
      auto [u, v] = pd_.pair(p);
      if (!undecided_first_.test(u, v)) continue;
      PairMeta m;
      m.kind = Derivation::Completion;
      m.aux = cs_.component_of(p);
      m.dict = m.aux;
      m.original = false;
      add(u, v, m);
      ++added;
      drain();
    }
    for (Vertex u = 0; u < n_; ++u)
      if (popcount(undecided_first_.row(u)) != 0)
        throw Error(ErrorCode::InternalInconsistency, "sink completion stalled with undecided pairs");
    return added;
  }

 private:
  void mark_present(Vertex a, Vertex b) {
    undecided_first_.reset(a, b);
    undecided_second_.reset(b, a);
    undecided_first_.reset(b, a);
    undecided_second_.reset(a, b);
    queue_.push_back(pd_.id(a, b));
    // Undecided in-neighbours of (a,b) lose one open out-neighbour.
    auto ra = g_.row(a), rb = g_.row(b);
    auto bump = [&](Vertex s, Vertex t) {
      PairId q = pd_.id(s, t);
      if (--count_[q] == 0) heap_.push(q);
    };
    if (g_.color(a) == g_.color(b)) {
      auto ua = undecided_first_.row(a);
      for (std::size_t k = 0; k < ra.size(); ++k)
        for_each_bit_in_word(rb[k] & ~ra[k] & ua[k], k, [&](std::size_t w) { bump(a, static_cast<Vertex>(w)); });
    } else if (!g_.adjacent(a, b)) {
      auto ub = undecided_second_.row(b);
      for (std::size_t k = 0; k < ra.size(); ++k)
        for_each_bit_in_word(ra[k] & ub[k], k, [&](std::size_t u) { bump(static_cast<Vertex>(u), b); });
    }
  }

  void put(Vertex a, Vertex b, const PairMeta& m) {
    if (D_.contains(b, a))
      throw Error(ErrorCode::InternalInconsistency,
                  "circuit during sink completion at (" + std::to_string(a) + "," + std::to_string(b) + ")");
    if (D_.insert(a, b, m)) mark_present(a, b);
  }

  // Insert (x,y) and restore transitivity.
  void add(Vertex x, Vertex y, const PairMeta& m) {
    if (D_.contains(x, y)) return;
    if (D_.contains(y, x))
      throw Error(ErrorCode::InternalInconsistency,
                  "circuit during sink completion at (" + std::to_string(x) + "," + std::to_string(y) + ")");
    std::vector<Word> targets(D_.successors(y).begin(), D_.successors(y).end());
    std::vector<Word> sources(D_.predecessors(x).begin(), D_.predecessors(x).end());
    put(x, y, m);
    PairMeta t;
    t.kind = Derivation::Transitive;
    t.level = m.level;
    auto dict_of_pair = [&](Vertex a, Vertex b) { return D_.meta_unchecked(D_.id(a, b)).dict; };
    for_each_bit(std::span<const Word>(targets), [&](std::size_t bb) {
      Vertex b = static_cast<Vertex>(bb);
      if (D_.contains(x, b)) return;
      t.aux = y;
      t.dict = g_.color(x) == g_.color(b) ? dict_of_pair(y, b) : dict_of_pair(x, y);
      put(x, b, t);
    });
    set_bit(targets, y);
    for_each_bit(std::span<const Word>(sources), [&](std::size_t aa) {
      Vertex a = static_cast<Vertex>(aa);
      auto sa = D_.successors(a);
      for (std::size_t k = 0; k < targets.size(); ++k)
        for_each_bit_in_word(targets[k] & ~sa[k], k, [&](std::size_t bb) {
          Vertex b = static_cast<Vertex>(bb);
          if (a == b || D_.contains(a, b)) return;
          t.aux = x;
          t.dict = g_.color(a) == g_.color(b) ? dict_of_pair(x, b) : dict_of_pair(a, x);
          put(a, b, t);
        });
    });
  }

  void drain() {
    while (head_ < queue_.size()) {
      PairId p = queue_[head_++];
      auto [x, y] = pd_.pair(p);
      const bool same = g_.color(x) == g_.color(y);
      if (!same && g_.adjacent(x, y)) continue;
      auto rx = g_.row(x), ry = g_.row(y);
      for (std::size_t k = 0; k < buf_.size(); ++k)
        buf_[k] = same ? (rx[k] & ~ry[k] & ~D_.predecessors(y)[k]) : (ry[k] & ~D_.successors(x)[k]);
      std::vector<Word> targets = buf_;
      for_each_bit(std::span<const Word>(targets), [&](std::size_t t) {
        Vertex a = same ? static_cast<Vertex>(t) : x, b = same ? y : static_cast<Vertex>(t);
        PairMeta m;
        m.kind = Derivation::Implied;
        m.aux = static_cast<std::int32_t>(p);
        m.dict = D_.meta_unchecked(p).dict;
        m.level = D_.meta_unchecked(p).level;
        add(a, b, m);
      });
    }
  }

  OrderRelation& D_;
  const ComponentSet& cs_;
  const PairDigraph& pd_;
  const Bigraph& g_;
  int n_;
  BitMatrix undecided_first_, undecided_second_;
  std::vector<std::uint32_t> count_;
  std::priority_queue<PairId, std::vector<PairId>, std::greater<>> heap_;
  std::vector<PairId> queue_;
  std::size_t head_ = 0;
  std::vector<Word> buf_;
};

}  // namespace

OrderRelation step6_complete(OrderRelation D1, const ComponentSet& cs, const PairDigraph& pd, std::size_t* added) {
  Completion c(D1, cs, pd);
  std::size_t k = c.run();
  if (added) *added = k;
  return D1;
}

Ordering extract_ordering(const OrderRelation& D1) {
  const int n = D1.n();
  std::vector<int> ranks(n);
  std::vector<char> used(n + 1, 0);
  for (Vertex x = 0; x < n; ++x) {
    auto s = D1.successors(x), p = D1.predecessors(x);
    std::size_t out = 0;
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (s[k] & p[k]) throw Error(ErrorCode::NotTransitive, "pair present in both directions");
      out += std::popcount(s[k]);
    }
    std::size_t in = popcount(p);
    if (out + in != static_cast<std::size_t>(n - 1))
      throw Error(ErrorCode::NotTotal, "vertex " + std::to_string(x) + " is not comparable to all others");
    int r = n - static_cast<int>(out);
    if (used[r]) throw Error(ErrorCode::NotTransitive, "tournament has a directed triangle");
    used[r] = 1;
    ranks[x] = r;
  }
  return Ordering::from_ranks(ranks);
}

std::string trace_log(const OrderRelation& D) {
  std::ostringstream os;
  for (PairId p : D.insertion_log()) {
    auto [x, y] = D.pair(p);
    const PairMeta& m = D.meta_unchecked(p);
    os << m.level << " " << x << " " << y << " " << to_string(m.kind);
    if (m.kind == Derivation::Implied) {
      auto [a, b] = D.pair(static_cast<PairId>(m.aux));
      os << ":" << a << "," << b;
    } else if (m.kind == Derivation::Transitive) {
      os << ":" << m.aux;
    } else if (m.kind == Derivation::Base || m.kind == Derivation::Completion) {
      os << ":S" << m.aux;
    }
    os << " " << m.dict << " " << (m.original ? 1 : 0) << "\n";
  }
  return os.str();
}

}  // namespace ibg
