#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ibg/bigraph.hpp"

namespace ibg {

using PairId = std::uint32_t;

struct PairVertex {
  Vertex first = 0, second = 0;
  auto operator<=>(const PairVertex&) const = default;
};

inline PairVertex skew(PairVertex p) { return {p.second, p.first}; }

// H+: vertices are ordered pairs of distinct vertices. Arcs are never stored;
// they are enumerated from adjacency bitsets.
//   same colors (u,v):              (u,v) -> (u',v) for u' in N(u) \ N(v)
//   mixed colors (u,v), uv not in E: (u,v) -> (u,v') for v' in N(v)
class PairDigraph {
 public:
  explicit PairDigraph(const Bigraph& g) : g_(&g), n_(g.n()) {}

  const Bigraph& graph() const { return *g_; }
  int n() const { return n_; }
  std::size_t pair_count() const { return static_cast<std::size_t>(n_) * (n_ > 0 ? n_ - 1 : 0); }
  // Ids use an n*n grid; diagonal ids are unused.
  std::size_t id_space() const { return static_cast<std::size_t>(n_) * n_; }

  PairId id(Vertex u, Vertex v) const { return static_cast<PairId>(u) * n_ + static_cast<PairId>(v); }
  PairId id(PairVertex p) const { return id(p.first, p.second); }
  PairVertex pair(PairId p) const { return {static_cast<Vertex>(p / n_), static_cast<Vertex>(p % n_)}; }
  PairId skew(PairId p) const { return id(static_cast<Vertex>(p % n_), static_cast<Vertex>(p / n_)); }
  bool same_color(Vertex u, Vertex v) const { return g_->color(u) == g_->color(v); }

  // Bitset of varying coordinates of the out-neighbours of (u,v): over u'
  // for a same-color pair, over v' for a mixed pair. Returns false if (u,v)
  // has no out-arcs by construction (adjacent mixed pair).
  bool out_mask(Vertex u, Vertex v, std::span<Word> dst) const;
  // In-neighbours of (a,b): same colors -> (a,w), w in N(b) \ N(a);
  // mixed non-adjacent -> (u,b), u in N(a).
  bool in_mask(Vertex a, Vertex b, std::span<Word> dst) const;

  template <class F>
  void for_each_out(Vertex u, Vertex v, F&& f) const {
    const Bigraph& g = *g_;
    if (same_color(u, v)) {
      auto ru = g.row(u), rv = g.row(v);
      for (std::size_t k = 0; k < ru.size(); ++k)
        for_each_bit_in_word(ru[k] & ~rv[k], k, [&](std::size_t x) { f(static_cast<Vertex>(x), v); });
    } else if (!g.adjacent(u, v)) {
      for (Vertex x : g.neighbors(v)) f(u, x);
    }
  }

  template <class F>
  void for_each_in(Vertex a, Vertex b, F&& f) const {
    const Bigraph& g = *g_;
    if (same_color(a, b)) {
      auto ra = g.row(a), rb = g.row(b);
      for (std::size_t k = 0; k < ra.size(); ++k)
        for_each_bit_in_word(rb[k] & ~ra[k], k, [&](std::size_t w) { f(a, static_cast<Vertex>(w)); });
    } else if (!g.adjacent(a, b)) {
      for (Vertex u : g.neighbors(a)) f(u, b);
    }
  }

  bool has_arc(PairVertex p, PairVertex q) const;
  std::size_t out_degree(Vertex u, Vertex v) const;
  std::size_t in_degree(Vertex a, Vertex b) const;
  // Exact number of arcs of H+.
  std::uint64_t arc_count() const;

 private:
  const Bigraph* g_;
  int n_;
};

PairDigraph build_pair_digraph(const Bigraph& g);

enum class Role : std::uint8_t { Unclassified, Nontrivial, Source, Sink, Internal };
const char* to_string(Role r);

// Strong components of H+, numbered by least member pair.
class ComponentSet {
 public:
  int n() const { return n_; }
  int count() const { return static_cast<int>(offsets_.size()) - 1; }
  int component_of(PairId p) const { return comp_[p]; }
  int component_of(Vertex u, Vertex v) const { return comp_[static_cast<std::size_t>(u) * n_ + v]; }
  std::span<const PairId> members(int c) const {
    return {members_.data() + offsets_[c], offsets_[c + 1] - offsets_[c]};
  }
  std::size_t size(int c) const { return offsets_[c + 1] - offsets_[c]; }
  bool trivial(int c) const { return size(c) == 1; }
  int couple(int c) const { return couple_[c]; }
  Role role(int c) const { return role_[c]; }
  PairId least_member(int c) const { return members_[offsets_[c]]; }
  std::optional<int> self_coupled() const { return self_coupled_; }
  // Component ids in a topological order of the condensation (sources first).
  const std::vector<int>& topological_order() const { return topo_; }
  std::vector<int> nontrivial() const;

 private:
  friend ComponentSet strong_components(const PairDigraph& pd);
  friend ComponentSet classify_trivial(ComponentSet cs, const PairDigraph& pd);
  int n_ = 0;
  std::vector<std::int32_t> comp_;
  std::vector<std::uint32_t> offsets_;
  std::vector<PairId> members_;
  std::vector<std::int32_t> couple_;
  std::vector<Role> role_;
  std::vector<int> topo_;
  std::optional<int> self_coupled_;
};

ComponentSet strong_components(const PairDigraph& pd);
// Trivial components: Sink if out-degree 0 (takes precedence), Source if
// in-degree 0, Internal otherwise.
ComponentSet classify_trivial(ComponentSet cs, const PairDigraph& pd);

// R plus every pair dominated by a member of R; sorted, unique.
std::vector<PairVertex> implication_closure(const PairDigraph& pd, const std::vector<PairVertex>& R);

// Induced path a,b,c,d,e with N(a) strictly inside N(c) for p = (a,c), searched
// directly in the graph. nullopt when none exists or p lies in a nontrivial component.
std::optional<std::array<Vertex, 5>> implied_witness(const Bigraph& g, const ComponentSet& cs,
                                                     PairVertex p);

// Vertex count of a longest directed path in the condensation.
int condensation_depth(const ComponentSet& cs, const PairDigraph& pd);

// Independent edges uu', vv' for p = (u,v); returned as {u', v'}.
std::optional<std::pair<Vertex, Vertex>> independent_edges_for(const Bigraph& g, PairVertex p);

// Structure of the six components on three vertices (no self-coupling assumed).
enum class TriangleCase { AllDistinct, OneMerge, Transitive, Other };
const char* to_string(TriangleCase t);
TriangleCase classify_triangle(const ComponentSet& cs, Vertex u, Vertex v, Vertex w);

// Graphviz rendering of the condensation; couples drawn as dashed edges.
// With nontrivial_only, trivial components without arcs to nontrivial ones are omitted.
std::string condensation_dot(const ComponentSet& cs, const PairDigraph& pd, bool nontrivial_only);

}  // namespace ibg
