#include "ibg/pair_digraph.hpp"

#include <algorithm>
#include <sstream>

#include "ibg/error.hpp"

namespace ibg {

PairDigraph build_pair_digraph(const Bigraph& g) {
  if (static_cast<std::uint64_t>(g.n()) * g.n() >= (std::uint64_t{1} << 31))
    throw Error(ErrorCode::TooLarge, "pair space exceeds 2^31 ids");
  return PairDigraph(g);
}

bool PairDigraph::out_mask(Vertex u, Vertex v, std::span<Word> dst) const {
  const Bigraph& g = *g_;
  if (same_color(u, v)) {
    auto ru = g.row(u), rv = g.row(v);
    for (std::size_t k = 0; k < dst.size(); ++k) dst[k] = ru[k] & ~rv[k];
    return true;
  }
  if (g.adjacent(u, v)) return false;
  auto rv = g.row(v);
  std::copy(rv.begin(), rv.end(), dst.begin());
  return true;
}

bool PairDigraph::in_mask(Vertex a, Vertex b, std::span<Word> dst) const {
  const Bigraph& g = *g_;
  if (same_color(a, b)) {
    auto ra = g.row(a), rb = g.row(b);
    for (std::size_t k = 0; k < dst.size(); ++k) dst[k] = rb[k] & ~ra[k];
    return true;
  }
  if (g.adjacent(a, b)) return false;
  auto ra = g.row(a);
  std::copy(ra.begin(), ra.end(), dst.begin());
  return true;
}

bool PairDigraph::has_arc(PairVertex p, PairVertex q) const {
  const Bigraph& g = *g_;
  auto [u, v] = p;
  if (u == v || q.first == q.second) return false;
  if (same_color(u, v))
    return q.second == v && g.adjacent(u, q.first) && !g.adjacent(v, q.first);
  return q.first == u && !g.adjacent(u, v) && g.adjacent(v, q.second);
}

std::size_t PairDigraph::out_degree(Vertex u, Vertex v) const {
  const Bigraph& g = *g_;
  if (same_color(u, v)) {
    auto ru = g.row(u), rv = g.row(v);
    std::size_t c = 0;
    for (std::size_t k = 0; k < ru.size(); ++k) c += std::popcount(ru[k] & ~rv[k]);
    return c;
  }
  return g.adjacent(u, v) ? 0 : g.degree(v);
}

std::size_t PairDigraph::in_degree(Vertex a, Vertex b) const {
  const Bigraph& g = *g_;
  if (same_color(a, b)) {
    auto ra = g.row(a), rb = g.row(b);
    std::size_t c = 0;
    for (std::size_t k = 0; k < ra.size(); ++k) c += std::popcount(rb[k] & ~ra[k]);
    return c;
  }
  return g.adjacent(a, b) ? 0 : g.degree(a);
}

std::uint64_t PairDigraph::arc_count() const {
  std::uint64_t total = 0;
  for (Vertex u = 0; u < n_; ++u)
    for (Vertex v = 0; v < n_; ++v)
      if (u != v) total += out_degree(u, v);
  return total;
}

const char* to_string(Role r) {
  switch (r) {
    case Role::Unclassified: return "unclassified";
    case Role::Nontrivial: return "nontrivial";
    case Role::Source: return "source";
    case Role::Sink: return "sink";
    case Role::Internal: return "internal";
  }
  return "?";
}

std::vector<int> ComponentSet::nontrivial() const {
  std::vector<int> out;
  for (int c = 0; c < count(); ++c)
    if (!trivial(c)) out.push_back(c);
  return out;
}

namespace {

// Visited flags kept in two layouts so both arc rules can mask whole words:
// by_first[u] has bit v set and by_second[v] has bit u set when (u,v) is visited.
struct Visited {
  BitMatrix by_first, by_second;
  explicit Visited(int n) : by_first(n), by_second(n) {
    for (int i = 0; i < n; ++i) mark(i, i);
  }
  void mark(Vertex u, Vertex v) {
    by_first.set(u, v);
    by_second.set(v, u);
  }
  bool seen(Vertex u, Vertex v) const { return by_first.test(u, v); }
};

struct Frame {
  PairId p;
  std::uint32_t word;
};

// Iterative DFS. forward selects H+ or its transpose. Calls finish(p) in post-order.
template <class Finish>
void dfs_from(const PairDigraph& pd, Visited& vis, PairId root, bool forward,
              std::vector<Frame>& stack, Finish&& finish) {
  const Bigraph& g = pd.graph();
  const int n = pd.n();
  const std::uint32_t stride = static_cast<std::uint32_t>(g.words());
  auto [r0, r1] = pd.pair(root);
  vis.mark(r0, r1);
  stack.push_back({root, 0});
  while (!stack.empty()) {
    Frame& f = stack.back();
    const Vertex u = static_cast<Vertex>(f.p / n), v = static_cast<Vertex>(f.p % n);
    const bool same = g.color(u) == g.color(v);
    bool pushed = false;
    if (same || !g.adjacent(u, v)) {
      while (f.word < stride) {
        const std::uint32_t k = f.word;
        Word w;
        if (forward) {
          w = same ? (g.row(u)[k] & ~g.row(v)[k] & ~vis.by_second.row(v)[k])
                   : (g.row(v)[k] & ~vis.by_first.row(u)[k]);
        } else {
          w = same ? (g.row(v)[k] & ~g.row(u)[k] & ~vis.by_first.row(u)[k])
                   : (g.row(u)[k] & ~vis.by_second.row(v)[k]);
        }
        if (!w) {
          ++f.word;
          continue;
        }
        const Vertex x = static_cast<Vertex>(k * 64 + std::countr_zero(w));
        // forward same: (x,v); forward mixed: (u,x); backward same: (u,x); backward mixed: (x,v)
        const bool vary_first = (forward == same);
        const Vertex a = vary_first ? x : u, b = vary_first ? v : x;
        vis.mark(a, b);
        stack.push_back({pd.id(a, b), 0});
        pushed = true;
        break;
      }
    }
    if (!pushed) {
      PairId done = stack.back().p;
      stack.pop_back();
      finish(done);
    }
  }
}

}  // namespace

ComponentSet strong_components(const PairDigraph& pd) {
  const int n = pd.n();
  const std::size_t N = pd.id_space();
  ComponentSet cs;
  cs.n_ = n;
  std::vector<PairId> order;
  order.reserve(pd.pair_count());
  std::vector<Frame> stack;
  {
    Visited vis(n);
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = 0; v < n; ++v)
        if (!vis.seen(u, v))
          dfs_from(pd, vis, pd.id(u, v), true, stack, [&](PairId p) { order.push_back(p); });
  }
  std::vector<std::int32_t> raw(N, -1);
  std::int32_t raw_count = 0;
  {
    Visited vis(n);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      auto [u, v] = pd.pair(*it);
      if (vis.seen(u, v)) continue;
      dfs_from(pd, vis, *it, false, stack, [&](PairId p) { raw[p] = raw_count; });
      ++raw_count;
    }
  }
  order.clear();
  order.shrink_to_fit();

  // Renumber by least member: scanning ids in increasing order meets each
  // component first at its least member.
  std::vector<std::int32_t> renum(raw_count, -1);
  std::vector<std::uint32_t> sizes;
  std::int32_t next = 0;
  cs.comp_.assign(N, -1);
  for (std::size_t p = 0; p < N; ++p) {
    if (raw[p] < 0) continue;
    std::int32_t& r = renum[raw[p]];
    if (r < 0) {
      r = next++;
      sizes.push_back(0);
    }
    cs.comp_[p] = r;
    ++sizes[r];
  }
  raw.clear();
  raw.shrink_to_fit();
  cs.topo_.resize(raw_count);
  for (std::int32_t i = 0; i < raw_count; ++i) cs.topo_[i] = renum[i];

  cs.offsets_.assign(next + 1, 0);
  for (std::int32_t c = 0; c < next; ++c) cs.offsets_[c + 1] = cs.offsets_[c] + sizes[c];
  cs.members_.resize(cs.offsets_[next]);
  std::vector<std::uint32_t> fill(cs.offsets_.begin(), cs.offsets_.end() - 1);
  for (std::size_t p = 0; p < N; ++p)
    if (cs.comp_[p] >= 0) cs.members_[fill[cs.comp_[p]]++] = static_cast<PairId>(p);

  cs.couple_.resize(next);
  for (std::int32_t c = 0; c < next; ++c) {
    cs.couple_[c] = cs.comp_[pd.skew(cs.least_member(c))];
    if (cs.couple_[c] == c && !cs.self_coupled_) cs.self_coupled_ = c;
  }
  cs.role_.assign(next, Role::Unclassified);
  for (std::int32_t c = 0; c < next; ++c)
    if (!cs.trivial(c)) cs.role_[c] = Role::Nontrivial;
  return cs;
}

ComponentSet classify_trivial(ComponentSet cs, const PairDigraph& pd) {
  for (int c = 0; c < cs.count(); ++c) {
    if (!cs.trivial(c)) {
      cs.role_[c] = Role::Nontrivial;
      continue;
    }
    auto [u, v] = pd.pair(cs.least_member(c));
    if (pd.out_degree(u, v) == 0) cs.role_[c] = Role::Sink;
    else if (pd.in_degree(u, v) == 0) cs.role_[c] = Role::Source;
    else cs.role_[c] = Role::Internal;
  }
  return cs;
}

std::vector<PairVertex> implication_closure(const PairDigraph& pd, const std::vector<PairVertex>& R) {
  std::vector<PairVertex> out(R.begin(), R.end());
  for (const auto& p : R) {
    if (p.first == p.second) throw Error(ErrorCode::UnknownPair, "diagonal pair");
    pd.for_each_out(p.first, p.second, [&](Vertex a, Vertex b) { out.push_back({a, b}); });
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<std::array<Vertex, 5>> implied_witness(const Bigraph& g, const ComponentSet& cs,
                                                     PairVertex p) {
  auto [a, c] = p;
  if (a == c || g.color(a) != g.color(c)) return std::nullopt;
  if (!cs.trivial(cs.component_of(a, c))) return std::nullopt;
  auto ra = g.row(a), rc = g.row(c);
  for (std::size_t k = 0; k < ra.size(); ++k)
    if (ra[k] & ~rc[k]) return std::nullopt;  // N(a) not inside N(c)
  for (Vertex d : g.neighbors(c)) {
    if (g.adjacent(a, d)) continue;
    auto rd = g.row(d);
    for (Vertex b : g.neighbors(a)) {
      auto rb = g.row(b);
      for (std::size_t k = 0; k < rd.size(); ++k) {
        Word w = rd[k] & ~rb[k];
        if (w) {
          Vertex e = static_cast<Vertex>(k * 64 + std::countr_zero(w));
          return std::array<Vertex, 5>{a, b, c, d, e};
        }
      }
    }
  }
  return std::nullopt;
}

int condensation_depth(const ComponentSet& cs, const PairDigraph& pd) {
  std::vector<int> depth(cs.count(), 1);
  int best = cs.count() > 0 ? 1 : 0;
  for (int c : cs.topological_order()) {
    for (PairId p : cs.members(c)) {
      auto [u, v] = pd.pair(p);
      pd.for_each_out(u, v, [&](Vertex a, Vertex b) {
        int d = cs.component_of(a, b);
        if (d != c && depth[d] < depth[c] + 1) {
          depth[d] = depth[c] + 1;
          best = std::max(best, depth[d]);
        }
      });
    }
  }
  return best;
}

std::optional<std::pair<Vertex, Vertex>> independent_edges_for(const Bigraph& g, PairVertex p) {
  auto [u, v] = p;
  if (u == v || g.adjacent(u, v)) return std::nullopt;
  auto ru = g.row(u), rv = g.row(v);
  for (Vertex u2 : g.neighbors(u)) {
    if (g.adjacent(u2, v)) continue;
    auto r2 = g.row(u2);
    for (std::size_t k = 0; k < rv.size(); ++k) {
      Word w = rv[k] & ~ru[k] & ~r2[k];
      if (w) return std::make_pair(u2, static_cast<Vertex>(k * 64 + std::countr_zero(w)));
    }
  }
  return std::nullopt;
}

const char* to_string(TriangleCase t) {
  switch (t) {
    case TriangleCase::AllDistinct: return "all_distinct";
    case TriangleCase::OneMerge: return "one_merge";
    case TriangleCase::Transitive: return "transitive";
    case TriangleCase::Other: return "other";
  }
  return "?";
}

TriangleCase classify_triangle(const ComponentSet& cs, Vertex u, Vertex v, Vertex w) {
  const std::array<Vertex, 3> base{u, v, w};
  auto S = [&](Vertex a, Vertex b) { return cs.component_of(a, b); };
  std::array<int, 6> ids{S(u, v), S(v, u), S(v, w), S(w, v), S(u, w), S(w, u)};
  std::array<int, 6> sorted = ids;
  std::sort(sorted.begin(), sorted.end());
  int distinct = static_cast<int>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
  if (distinct == 6) return TriangleCase::AllDistinct;
  std::array<int, 3> perm{0, 1, 2};
  do {
    Vertex a = base[perm[0]], b = base[perm[1]], c = base[perm[2]];
    if (distinct == 4 && S(a, b) == S(a, c) && S(c, a) == S(b, a)) {
      std::array<int, 4> four{S(a, b), S(c, a), S(b, c), S(c, b)};
      std::sort(four.begin(), four.end());
      if (std::unique(four.begin(), four.end()) == four.end()) return TriangleCase::OneMerge;
    }
    if (distinct == 2 && S(a, b) == S(b, c) && S(b, c) == S(a, c) && S(b, a) == S(c, b) &&
        S(c, b) == S(c, a) && S(a, b) != S(b, a))
      return TriangleCase::Transitive;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return TriangleCase::Other;
}

std::string condensation_dot(const ComponentSet& cs, const PairDigraph& pd, bool nontrivial_only) {
  std::vector<char> keep(cs.count(), nontrivial_only ? 0 : 1);
  std::vector<std::pair<int, int>> arcs;
  for (int c = 0; c < cs.count(); ++c) {
    for (PairId p : cs.members(c)) {
      auto [u, v] = pd.pair(p);
      pd.for_each_out(u, v, [&](Vertex a, Vertex b) {
        int d = cs.component_of(a, b);
        if (d != c) arcs.emplace_back(c, d);
      });
    }
  }
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  if (nontrivial_only) {
    for (int c = 0; c < cs.count(); ++c)
      if (!cs.trivial(c)) keep[c] = 1;
    for (auto [c, d] : arcs)
      if (!cs.trivial(c) || !cs.trivial(d)) keep[c] = keep[d] = 1;
  }
  std::ostringstream os;
  os << "digraph condensation {\n  node [shape=box];\n";
  for (int c = 0; c < cs.count(); ++c) {
    if (!keep[c]) continue;
    auto [u, v] = pd.pair(cs.least_member(c));
    os << "  c" << c << " [label=\"S" << c << " (" << u << "," << v << ") x" << cs.size(c) << " "
       << to_string(cs.role(c)) << "\"];\n";
  }
  for (auto [c, d] : arcs)
    if (keep[c] && keep[d]) os << "  c" << c << " -> c" << d << ";\n";
  for (int c = 0; c < cs.count(); ++c) {
    int d = cs.couple(c);
    if (c < d && keep[c] && keep[d] && !cs.trivial(c))
      os << "  c" << c << " -> c" << d << " [style=dashed, dir=none];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace ibg
