#include "ibg/generators.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "ibg/error.hpp"

namespace ibg {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::PreconditionViolated, what);
}

// Incremental builder used by the structured families.
struct Builder {
  std::vector<Color> colors;
  std::vector<Edge> edges;
  Vertex add(Color c) {
    colors.push_back(c);
    return static_cast<Vertex>(colors.size() - 1);
  }
  void edge(Vertex a, Vertex b) {
    if (a > b) std::swap(a, b);
    if (std::find(edges.begin(), edges.end(), Edge{a, b}) == edges.end()) edges.emplace_back(a, b);
  }
  Bigraph build(std::string name) { return Bigraph(colors, edges, std::move(name)); }
};

}  // namespace

std::pair<Bigraph, IntervalModel> gen_from_intervals(int nb, int nw, std::uint64_t seed) {
  require(nb >= 1 && nw >= 1, "need nb, nw >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> pos(0, 4 * static_cast<std::int64_t>(nb + nw));
  const int n = nb + nw;
  IntervalModel model;
  std::vector<Color> colors(n, Color::White);
  for (int v = 0; v < n; ++v) {
    std::int64_t a = pos(rng), b = pos(rng);
    model.intervals.push_back({std::min(a, b), std::max(a, b)});
    if (v < nb) colors[v] = Color::Black;
  }
  std::vector<Edge> edges;
  for (int b = 0; b < nb; ++b)
    for (int w = nb; w < n; ++w) {
      const auto& I = model.intervals[b];
      const auto& J = model.intervals[w];
      if (I.left <= J.right && J.left <= I.right) edges.emplace_back(b, w);
    }
  return {Bigraph(colors, edges, "intervals-" + std::to_string(seed)), std::move(model)};
}

Bigraph gen_cycle(int k) {
  require(k >= 2, "cycle needs k >= 2");
  Builder b;
  for (int i = 0; i < 2 * k; ++i) b.add(i % 2 ? Color::White : Color::Black);
  for (int i = 0; i < 2 * k; ++i) b.edge(i, (i + 1) % (2 * k));
  return b.build("C" + std::to_string(2 * k));
}

Bigraph gen_path(int n) {
  require(n >= 2, "path needs n >= 2");
  Builder b;
  for (int i = 0; i < n; ++i) b.add(i % 2 ? Color::White : Color::Black);
  for (int i = 0; i + 1 < n; ++i) b.edge(i, i + 1);
  return b.build("P" + std::to_string(n));
}

Bigraph gen_biclique(int a, int c) {
  require(a >= 1 && c >= 1, "biclique needs a, b >= 1");
  Builder b;
  for (int i = 0; i < a; ++i) b.add(Color::Black);
  for (int i = 0; i < c; ++i) b.add(Color::White);
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < c; ++j) b.edge(i, a + j);
  return b.build("K" + std::to_string(a) + "," + std::to_string(c));
}

Bigraph gen_exobiclique(int mb, int mw, ExoPattern pattern) {
  require(mb >= 3 && mw >= 3, "exobiclique needs mb, mw >= 3");
  Builder b;
  std::vector<Vertex> M, N;
  for (int i = 0; i < mb; ++i) M.push_back(b.add(Color::Black));
  for (int i = 0; i < mw; ++i) N.push_back(b.add(Color::White));
  for (Vertex x : M)
    for (Vertex y : N) b.edge(x, y);
  auto block = [](int i, int size) { return i * 3 / size; };  // 0,1,2
  auto sees = [&](int j, int blk) {
    if (pattern == ExoPattern::Singletons) return blk == j;
    return blk != (j + 2) % 3;  // j=0 -> {0,1}, 1 -> {1,2}, 2 -> {2,0}
  };
  std::array<Vertex, 3> tb{}, tw{};
  for (int j = 0; j < 3; ++j) tb[j] = b.add(Color::Black);
  for (int j = 0; j < 3; ++j) tw[j] = b.add(Color::White);
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < mw; ++i)
      if (sees(j, block(i, mw))) b.edge(tb[j], N[i]);
    for (int i = 0; i < mb; ++i)
      if (sees(j, block(i, mb))) b.edge(tw[j], M[i]);
  }
  return b.build("exobiclique-" + std::to_string(mb) + "x" + std::to_string(mw) +
                 (pattern == ExoPattern::Singletons ? "-singletons" : ""));
}

Bigraph gen_random_bipartite(int nb, int nw, double p, std::uint64_t seed) {
  require(nb >= 0 && nw >= 0 && p >= 0.0 && p <= 1.0, "need counts >= 0 and 0 <= p <= 1");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<Color> colors(nb + nw, Color::White);
  std::fill(colors.begin(), colors.begin() + nb, Color::Black);
  std::vector<Edge> edges;
  for (int b = 0; b < nb; ++b)
    for (int w = nb; w < nb + nw; ++w)
      if (coin(rng)) edges.emplace_back(b, w);
  return Bigraph(colors, edges, "random-" + std::to_string(seed));
}

Bigraph gen_obstruction_family(int steps) {
  require(steps >= 1, "obstruction family needs steps >= 1");
  constexpr Color W = Color::White, B = Color::Black;
  Builder b;
  // Core on 18 vertices, ids 0..9 black and 10..17 white. The Step-3 circuit
  // runs through x0 = 17, x1 = 0, x2 = 7, x3 = 11 (colors W B B W); 8 is the
  // only neighbour of x3. The first rung is u = 10, u1 = 9, u2 = 3 with w = 4.
  for (int i = 0; i < 10; ++i) b.add(B);
  for (int i = 10; i < 18; ++i) b.add(W);
  const Edge core[] = {{0, 14}, {1, 15}, {2, 14}, {2, 15}, {2, 16}, {2, 17}, {3, 10}, {3, 13}, {3, 14},
                       {3, 17}, {4, 10}, {5, 12}, {5, 14}, {5, 15}, {5, 16}, {6, 16}, {7, 10}, {7, 14},
                       {7, 16}, {7, 17}, {8, 10}, {8, 11}, {8, 14}, {8, 15}, {8, 16}, {8, 17}, {9, 17}};
  for (auto [x, y] : core) b.edge(x, y);
  // Further rungs: u ~ previous u2, u ~ u2, pendant w on u, u1 w1 and z1 z
  // edges with u2 ~ w1, z1.
  Vertex prev2 = 3;
  for (int i = 2; i <= steps; ++i) {
    Vertex u = b.add(W), u1 = b.add(B), u2 = b.add(B), w = b.add(B), w1 = b.add(W), z1 = b.add(W), z = b.add(B);
    b.edge(u, prev2);
    b.edge(u, u2);
    b.edge(u, w);
    b.edge(u1, w1);
    b.edge(u2, w1);
    b.edge(z1, z);
    b.edge(u2, z1);
    prev2 = u2;
  }
  return b.build("obstruction-" + std::to_string(steps));
}

}  // namespace ibg
