#include "ibg/bigraph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <queue>
#include <sstream>

#include "ibg/error.hpp"

namespace ibg {

Bigraph::Bigraph(std::vector<Color> colors, const std::vector<Edge>& edges, std::string name)
    : colors_(std::move(colors)), name_(std::move(name)) {
  const int n = static_cast<int>(colors_.size());
  adj_.assign(n, {});
  matrix_ = BitMatrix(static_cast<std::size_t>(n));
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw Error(ErrorCode::MalformedInput, "edge endpoint out of range");
    if (u == v) throw Error(ErrorCode::MalformedInput, "self-loop at " + std::to_string(u));
    if (colors_[u] == colors_[v])
      throw Error(ErrorCode::ColorConflict,
                  "edge " + std::to_string(u) + "-" + std::to_string(v) + " joins equal colors");
    if (matrix_.test(u, v))
      throw Error(ErrorCode::MalformedInput,
                  "parallel edge " + std::to_string(u) + "-" + std::to_string(v));
    matrix_.set(u, v);
    matrix_.set(v, u);
    adj_[u].push_back(v);
    adj_[v].push_back(u);
    ++m_;
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());
}

std::vector<Edge> Bigraph::edges() const {
  std::vector<Edge> out;
  out.reserve(m_);
  for (Vertex u = 0; u < n(); ++u) {
    if (colors_[u] != Color::Black) continue;
    for (Vertex v : adj_[u]) out.emplace_back(u, v);
  }
  return out;
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

long long to_int(std::string_view tok, std::size_t lineno) {
  long long v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size())
    throw Error(ErrorCode::MalformedInput,
                "line " + std::to_string(lineno) + ": bad integer '" + std::string(tok) + "'");
  return v;
}

}  // namespace

std::vector<Color> two_color(int n, const std::vector<Edge>& edges) {
  std::vector<std::vector<Vertex>> adj(n);
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<int> side(n, -1);
  for (Vertex s = 0; s < n; ++s) {
    if (side[s] != -1) continue;
    side[s] = 0;
    std::queue<Vertex> q;
    q.push(s);
    while (!q.empty()) {
      Vertex u = q.front();
      q.pop();
      for (Vertex v : adj[u]) {
        if (side[v] == -1) {
          side[v] = 1 - side[u];
          q.push(v);
        } else if (side[v] == side[u]) {
          throw Error(ErrorCode::NotBipartite, "odd cycle through edge " + std::to_string(u) +
                                                   "-" + std::to_string(v));
        }
      }
    }
  }
  std::vector<Color> colors(n);
  for (int i = 0; i < n; ++i) colors[i] = side[i] == 0 ? Color::Black : Color::White;
  return colors;
}

Bigraph parse_bigraph(std::string_view text) {
  long long n = -1, m = -1;
  std::vector<std::optional<Color>> declared;
  std::vector<Edge> edges;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  std::string name;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++lineno;
    auto tok = split_ws(line);
    if (tok.empty()) continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (tok[0] == "c") {
      if (name.empty() && tok.size() >= 3 && tok[1] == "name") name = std::string(tok[2]);
      continue;
    }
    if (tok[0] == "p") {
      if (n >= 0) throw Error(ErrorCode::MalformedInput, where + "duplicate header");
      if (tok.size() != 4 || tok[1] != "ibg")
        throw Error(ErrorCode::MalformedInput, where + "header must be 'p ibg <n> <m>'");
      n = to_int(tok[2], lineno);
      m = to_int(tok[3], lineno);
      if (n < 0 || m < 0 || n > 1'000'000)
        throw Error(ErrorCode::MalformedInput, where + "bad header counts");
      declared.assign(static_cast<std::size_t>(n), std::nullopt);
      continue;
    }
    if (n < 0) throw Error(ErrorCode::MalformedInput, where + "content before header");
    if (tok[0] == "v") {
      if (tok.size() != 3) throw Error(ErrorCode::MalformedInput, where + "expected 'v <id> <B|W>'");
      long long id = to_int(tok[1], lineno);
      if (id < 0 || id >= n) throw Error(ErrorCode::MalformedInput, where + "vertex id out of range");
      Color c;
      if (tok[2] == "B") c = Color::Black;
      else if (tok[2] == "W") c = Color::White;
      else throw Error(ErrorCode::MalformedInput, where + "color must be B or W");
      if (declared[id]) throw Error(ErrorCode::MalformedInput, where + "vertex declared twice");
      declared[id] = c;
      continue;
    }
    if (tok[0] == "e") {
      if (tok.size() != 3) throw Error(ErrorCode::MalformedInput, where + "expected 'e <u> <v>'");
      long long u = to_int(tok[1], lineno), v = to_int(tok[2], lineno);
      if (u < 0 || v < 0 || u >= n || v >= n)
        throw Error(ErrorCode::MalformedInput, where + "edge endpoint out of range");
      edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
      continue;
    }
    throw Error(ErrorCode::MalformedInput, where + "unknown line type '" + std::string(tok[0]) + "'");
  }
  if (n < 0) throw Error(ErrorCode::MalformedInput, "missing 'p ibg' header");
  if (static_cast<long long>(edges.size()) != m)
    throw Error(ErrorCode::MalformedInput, "header says " + std::to_string(m) + " edges, found " +
                                               std::to_string(edges.size()));
  std::size_t ndecl = std::count_if(declared.begin(), declared.end(),
                                    [](const auto& c) { return c.has_value(); });
  std::vector<Color> colors;
  if (ndecl == 0) {
    colors = two_color(static_cast<int>(n), edges);
  } else if (ndecl == declared.size()) {
    for (auto& c : declared) colors.push_back(*c);
  } else {
    throw Error(ErrorCode::MalformedInput, "vertex block must declare every vertex or none");
  }
  return Bigraph(std::move(colors), edges, std::move(name));
}

Bigraph read_bigraph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MalformedInput, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_bigraph(ss.str());
}

std::string write_bigraph(const Bigraph& g, std::string_view comment) {
  std::ostringstream os;
  if (!g.name().empty()) os << "c name " << g.name() << "\n";
  if (!comment.empty()) os << "c " << comment << "\n";
  os << "p ibg " << g.n() << " " << g.m() << "\n";
  for (Vertex v = 0; v < g.n(); ++v) os << "v " << v << " " << color_char(g.color(v)) << "\n";
  for (Vertex u = 0; u < g.n(); ++u)
    for (Vertex v : g.neighbors(u))
      if (u < v) os << "e " << u << " " << v << "\n";
  return os.str();
}

Subgraph induced_subgraph(const Bigraph& g, std::vector<Vertex> keep) {
  std::sort(keep.begin(), keep.end());
  std::vector<Vertex> local(g.n(), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) local[keep[i]] = static_cast<Vertex>(i);
  std::vector<Color> colors;
  std::vector<Edge> edges;
  for (Vertex v : keep) colors.push_back(g.color(v));
  for (Vertex u : keep)
    for (Vertex v : g.neighbors(u))
      if (u < v && local[v] >= 0) edges.emplace_back(local[u], local[v]);
  return {Bigraph(std::move(colors), edges, g.name()), std::move(keep)};
}

std::vector<Subgraph> connected_components(const Bigraph& g) {
  std::vector<int> comp(g.n(), -1);
  std::vector<std::vector<Vertex>> groups;
  for (Vertex s = 0; s < g.n(); ++s) {
    if (comp[s] >= 0) continue;
    int id = static_cast<int>(groups.size());
    groups.emplace_back();
    std::vector<Vertex> stack{s};
    comp[s] = id;
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      groups[id].push_back(u);
      for (Vertex v : g.neighbors(u))
        if (comp[v] < 0) {
          comp[v] = id;
          stack.push_back(v);
        }
    }
  }
  std::vector<Subgraph> out;
  out.reserve(groups.size());
  for (auto& grp : groups) out.push_back(induced_subgraph(g, std::move(grp)));
  return out;
}

bool is_connected(const Bigraph& g) {
  if (g.n() <= 1) return true;
  std::vector<char> seen(g.n(), 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    Vertex u = stack.back();
    stack.pop_back();
    for (Vertex v : g.neighbors(u))
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
        stack.push_back(v);
      }
  }
  return count == g.n();
}

}  // namespace ibg
