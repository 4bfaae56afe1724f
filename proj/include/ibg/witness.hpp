#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ibg/certificate.hpp"
#include "ibg/pair_digraph.hpp"

namespace ibg {

// Replays a certificate against g. Never throws; false means invalid.
bool verify_certificate(const Bigraph& g, const Certificate& c, std::string* reason = nullptr);

bool check_exobiclique(const Bigraph& g, const ExoBiclique& e);

// Best effort: tries the alternating-circuit construction around the
// conflict circuits, then an exhaustive search when the smaller color class
// has at most `search_limit` vertices.
std::optional<ExoBiclique> extract_exobiclique(const Bigraph& g, const Step2Conflict& conflict,
                                               int search_limit = 18);
// Exhaustive search over M within the smaller color class (size <= limit).
std::optional<ExoBiclique> find_exobiclique(const Bigraph& g, int limit = 18);

struct PreInsect {
  std::vector<std::vector<Vertex>> parts;  // H_1..H_k
  std::vector<Vertex> X, Y, Z;
};

// 0 when conditions (1)-(7) all hold, otherwise the first failing index;
// 8 means the sets do not partition V.
int check_pre_insect(const Bigraph& g, const PreInsect& p);

// Decomposition grown from three pairwise independent seed edges at u, v, w.
// Throws Error(PreconditionViolated) unless S_uv, S_vw are nontrivial,
// distinct, and S_uv != S_wv. On a failed condition returns nullopt and
// stores its index in *failed.
std::optional<PreInsect> pre_insect_decompose(const Bigraph& g, Vertex u, Vertex v, Vertex w,
                                              const ComponentSet& cs, int* failed = nullptr);

struct OracleResult {
  bool is_interval_bigraph = false;
  std::optional<Ordering> ordering;
};

// Exact search over placed sets. Throws Error(TooLarge) if n > limit_n.
OracleResult oracle_recognize(const Bigraph& g, int limit_n = 16);

// Connected bipartite graphs on 2..n vertices, every black/white split and
// every edge subset, in a fixed order. Throws Error(TooLarge) if n > 8.
// Returning false from the callback stops the enumeration.
void enumerate_bigraphs(int n, const std::function<bool(const Bigraph&)>& f);
std::vector<Bigraph> enumerate_bigraphs(int n);

}  // namespace ibg
