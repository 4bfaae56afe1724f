#include "ibg/ordering.hpp"

#include <algorithm>
#include <tuple>

#include "ibg/error.hpp"

namespace ibg {

Ordering Ordering::from_sequence(std::vector<Vertex> sequence) {
  Ordering o;
  const int n = static_cast<int>(sequence.size());
  o.rank_.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    Vertex v = sequence[i];
    if (v < 0 || v >= n || o.rank_[v] != 0)
      throw Error(ErrorCode::InvalidOrdering, "sequence is not a permutation of 0..n-1");
    o.rank_[v] = i + 1;
  }
  o.seq_ = std::move(sequence);
  return o;
}

Ordering Ordering::from_ranks(const std::vector<int>& ranks) {
  const int n = static_cast<int>(ranks.size());
  std::vector<Vertex> seq(n, -1);
  for (int v = 0; v < n; ++v) {
    int r = ranks[v];
    if (r < 1 || r > n || seq[r - 1] != -1)
      throw Error(ErrorCode::InvalidOrdering, "ranks are not a bijection onto 1..n");
    seq[r - 1] = v;
  }
  return from_sequence(std::move(seq));
}

std::optional<PatternViolation> check_ordering(const Bigraph& g, const Ordering& ord) {
  const int n = g.n();
  if (ord.size() != n) throw Error(ErrorCode::InvalidOrdering, "ordering size differs from n");
  // For each c the least violation ending in c is (e, f, c): e its earliest
  // neighbour, f the first later non-neighbour of e's color before c.
  std::optional<std::tuple<int, int, int>> best;
  for (int rc = 1; rc <= n; ++rc) {
    Vertex c = ord.at(rc);
    int re = 0;
    for (Vertex u : g.neighbors(c))
      if (ord.rank(u) < rc && (re == 0 || ord.rank(u) < re)) re = ord.rank(u);
    if (re == 0) continue;
    if (best && re > std::get<0>(*best)) continue;
    const Color side = opposite(g.color(c));
    for (int rb = re + 1; rb < rc; ++rb) {
      Vertex b = ord.at(rb);
      if (g.color(b) == side && !g.adjacent(b, c)) {
        auto cand = std::make_tuple(re, rb, rc);
        if (!best || cand < *best) best = cand;
        break;
      }
    }
  }
  if (!best) return std::nullopt;
  auto [ra, rb, rc] = *best;
  return PatternViolation{ord.at(ra), ord.at(rb), ord.at(rc)};
}

IntervalModel build_intervals(const Bigraph& g, const Ordering& ord) {
  if (auto v = check_ordering(g, ord))
    throw Error(ErrorCode::InvalidOrdering, "ordering contains the forbidden pattern at (" +
                                                std::to_string(v->a) + "," + std::to_string(v->b) +
                                                "," + std::to_string(v->c) + ")");
  IntervalModel model;
  model.intervals.resize(g.n());
  for (Vertex v = 0; v < g.n(); ++v) {
    int p = ord.rank(v), s = p;
    for (Vertex u : g.neighbors(v)) s = std::min(s, ord.rank(u));
    model.intervals[v] = {s, p};
  }
  if (!validate_intervals(g, model))
    throw Error(ErrorCode::ModelValidationFailed, "constructed intervals do not represent the graph");
  return model;
}

bool validate_intervals(const Bigraph& g, const IntervalModel& model) {
  if (static_cast<int>(model.intervals.size()) != g.n()) return false;
  for (const auto& iv : model.intervals)
    if (iv.left > iv.right) return false;
  // Sweep: sort black and white intervals by left endpoint and count
  // intersecting cross pairs; equality with m plus every edge intersecting
  // is equivalent to the pairwise condition.
  for (Vertex u = 0; u < g.n(); ++u)
    for (Vertex v : g.neighbors(u)) {
      const auto& a = model.intervals[u];
      const auto& b = model.intervals[v];
      if (a.right < b.left || b.right < a.left) return false;
    }
  struct Ev { std::int64_t x; int kind; Color c; };  // kind 0 = open, 1 = close
  std::vector<Ev> ev;
  ev.reserve(2 * g.n());
  for (Vertex v = 0; v < g.n(); ++v) {
    ev.push_back({model.intervals[v].left, 0, g.color(v)});
    ev.push_back({model.intervals[v].right, 1, g.color(v)});
  }
  // Closed intervals: opens sort before closes at the same coordinate.
  std::sort(ev.begin(), ev.end(), [](const Ev& a, const Ev& b) {
    return a.x != b.x ? a.x < b.x : a.kind < b.kind;
  });
  std::uint64_t open[2] = {0, 0}, crossing = 0;
  for (const auto& e : ev) {
    int side = static_cast<int>(e.c);
    if (e.kind == 0) {
      crossing += open[1 - side];
      ++open[side];
    } else {
      --open[side];
    }
  }
  return crossing == g.m();
}

}  // namespace ibg
