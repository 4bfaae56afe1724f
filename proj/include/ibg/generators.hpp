#pragma once

#include <cstdint>
#include <utility>

#include "ibg/bigraph.hpp"
#include "ibg/ordering.hpp"

namespace ibg {

// Black vertices get ids 0..nb-1, white ones nb..nb+nw-1. Endpoints are
// uniform integers in [0, 4(nb+nw)].
std::pair<Bigraph, IntervalModel> gen_from_intervals(int nb, int nw, std::uint64_t seed);

// Even cycle on 2k vertices, colors alternating from Black at 0.
Bigraph gen_cycle(int k);
Bigraph gen_path(int n);
// K_{a,b}: a black, b white.
Bigraph gen_biclique(int a, int b);

// How the three outside vertices on each side see the biclique side, which
// is split into three near-equal blocks.
enum class ExoPattern {
  Pairs,       // blocks {1,2}, {2,3}, {1,3}
  Singletons,  // blocks {1}, {2}, {3}
};
// M = black 0..mb-1, N = white mb..mb+mw-1, then the black triple, then the white triple.
Bigraph gen_exobiclique(int mb, int mw, ExoPattern pattern = ExoPattern::Pairs);

Bigraph gen_random_bipartite(int nb, int nw, double p, std::uint64_t seed);

// Obstruction built around a core x0..x3 and a ladder of `steps` rungs.
Bigraph gen_obstruction_family(int steps);

}  // namespace ibg
