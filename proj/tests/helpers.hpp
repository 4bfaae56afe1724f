#pragma once

#include <algorithm>
#include <ostream>
#include <string>
#include <vector>

#include "ibg/bigraph.hpp"
#include "ibg/pair_digraph.hpp"

namespace ibg {
inline void PrintTo(const PairVertex& p, std::ostream* os) { *os << "(" << p.first << "," << p.second << ")"; }
}  // namespace ibg

namespace ibg::testing {

// Colors as a string of 'B'/'W', edges as pairs.
inline Bigraph make_graph(const std::string& colors, const std::vector<Edge>& edges) {
  std::vector<Color> c;
  for (char ch : colors) c.push_back(ch == 'B' ? Color::Black : Color::White);
  return Bigraph(c, edges);
}

inline std::vector<PairVertex> sorted_members(const ComponentSet& cs, const PairDigraph& pd, int c) {
  std::vector<PairVertex> out;
  for (PairId p : cs.members(c)) out.push_back(pd.pair(p));
  std::sort(out.begin(), out.end());
  return out;
}

// Out-neighbours straight from the two arc rules, no bitset tricks.
inline std::vector<PairVertex> naive_out(const Bigraph& g, Vertex u, Vertex v) {
  std::vector<PairVertex> out;
  if (g.color(u) == g.color(v)) {
    for (Vertex x = 0; x < g.n(); ++x)
      if (x != v && g.adjacent(u, x) && !g.adjacent(v, x)) out.push_back({x, v});
  } else if (!g.adjacent(u, v)) {
    for (Vertex x = 0; x < g.n(); ++x)
      if (x != u && g.adjacent(v, x)) out.push_back({u, x});
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ibg::testing
