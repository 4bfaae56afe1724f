#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ibg/bitset.hpp"

namespace ibg {

using Vertex = std::int32_t;
using Edge = std::pair<Vertex, Vertex>;

enum class Color : std::uint8_t { Black = 0, White = 1 };

inline char color_char(Color c) { return c == Color::Black ? 'B' : 'W'; }
inline Color opposite(Color c) { return c == Color::Black ? Color::White : Color::Black; }

// Bipartite graph with a fixed black/white bipartition. Vertex ids are 0..n-1.
class Bigraph {
 public:
  Bigraph() = default;
  // Throws Error(ColorConflict) if an edge joins two vertices of one color,
  // Error(MalformedInput) on loops, parallel edges or out-of-range ids.
  Bigraph(std::vector<Color> colors, const std::vector<Edge>& edges, std::string name = {});

  int n() const { return static_cast<int>(colors_.size()); }
  std::size_t m() const { return m_; }
  const std::string& name() const { return name_; }
  void set_name(std::string s) { name_ = std::move(s); }

  Color color(Vertex v) const { return colors_[v]; }
  const std::vector<Color>& colors() const { return colors_; }
  std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
  std::size_t degree(Vertex v) const { return adj_[v].size(); }
  bool adjacent(Vertex a, Vertex b) const { return matrix_.test(a, b); }
  // Adjacency row of v as a bitset over vertex ids.
  std::span<const Word> row(Vertex v) const { return matrix_.row(v); }
  std::size_t words() const { return matrix_.stride(); }

  // Edges as (black, white), sorted.
  std::vector<Edge> edges() const;

  bool operator==(const Bigraph& o) const {
    return colors_ == o.colors_ && adj_ == o.adj_;
  }

 private:
  std::vector<Color> colors_;
  std::vector<std::vector<Vertex>> adj_;
  BitMatrix matrix_;
  std::size_t m_ = 0;
  std::string name_;
};

// Induced subgraph of a larger graph; to_original[i] is the id of vertex i in the host.
struct Subgraph {
  Bigraph graph;
  std::vector<Vertex> to_original;
};

// Parses the "p ibg" text format. Without "v" lines the coloring is computed by BFS.
Bigraph parse_bigraph(std::string_view text);
Bigraph read_bigraph_file(const std::string& path);
std::string write_bigraph(const Bigraph& g, std::string_view comment = {});

// Two-coloring by BFS layering per component; lowest id of each component is Black.
// Throws Error(NotBipartite).
std::vector<Color> two_color(int n, const std::vector<Edge>& edges);

// Components in order of their least vertex id, each with dense ids.
std::vector<Subgraph> connected_components(const Bigraph& g);
bool is_connected(const Bigraph& g);

Subgraph induced_subgraph(const Bigraph& g, std::vector<Vertex> keep);

}  // namespace ibg
