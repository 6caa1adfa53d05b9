#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dht/error.hpp"

namespace dht {

using VertexId = std::uint32_t;

/// Natural ("human") ordering: digit runs compare numerically, everything
/// else bytewise. Total order on distinct strings.
inline bool natural_less(std::string_view a, std::string_view b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const bool da = std::isdigit(static_cast<unsigned char>(a[i])) != 0;
    const bool db = std::isdigit(static_cast<unsigned char>(b[j])) != 0;
    if (da && db) {
      std::size_t ie = i, je = j;
      while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie]))) ++ie;
      while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je]))) ++je;
      std::size_t is = i, js = j;
      while (is + 1 < ie && a[is] == '0') ++is;
      while (js + 1 < je && b[js] == '0') ++js;
      if (ie - is != je - js) return ie - is < je - js;
      for (std::size_t k = 0; k < ie - is; ++k)
        if (a[is + k] != b[js + k]) return a[is + k] < b[js + k];
      // equal value: fewer leading zeros first keeps the order total
      if (ie - i != je - j) return ie - i < je - j;
      i = ie;
      j = je;
      continue;
    }
    if (a[i] != b[j]) return static_cast<unsigned char>(a[i]) < static_cast<unsigned char>(b[j]);
    ++i;
    ++j;
  }
  return a.size() - i < b.size() - j;
}

struct NaturalLess {
  bool operator()(std::string_view a, std::string_view b) const { return natural_less(a, b); }
};

inline bool valid_label(std::string_view s) {
  if (s.empty()) return false;
  return std::none_of(s.begin(), s.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) != 0 || c == '#';
  });
}

/// Finite simple connected undirected graph. Vertices are identified by
/// their index in the natural order of their labels. Immutable and cheap to
/// copy (shared state).
class Graph {
 public:
  Graph() = default;

  static Graph from_edges(std::vector<std::string> vertices,
                          const std::vector<std::pair<std::string, std::string>>& edges) {
    auto impl = std::make_shared<Impl>();
    if (vertices.empty()) throw Error(Errc::InvalidSize, "graph needs at least one vertex");
    for (const auto& v : vertices)
      if (!valid_label(v)) throw Error(Errc::InvalidLabel, "bad vertex label '" + v + "'");
    std::sort(vertices.begin(), vertices.end(), NaturalLess{});
    for (std::size_t i = 1; i < vertices.size(); ++i)
      if (vertices[i] == vertices[i - 1])
        throw Error(Errc::DuplicateVertex, "vertex '" + vertices[i] + "' listed twice");
    impl->labels = std::move(vertices);
    const std::size_t n = impl->labels.size();
    impl->index.reserve(n);
    for (std::size_t i = 0; i < n; ++i) impl->index.emplace(impl->labels[i], static_cast<VertexId>(i));

    impl->adj.assign(n, {});
    std::set<std::pair<VertexId, VertexId>> seen;
    for (const auto& [a, b] : edges) {
      auto ia = impl->index.find(a);
      auto ib = impl->index.find(b);
      if (ia == impl->index.end()) throw Error(Errc::UnknownVertex, "edge endpoint '" + a + "'");
      if (ib == impl->index.end()) throw Error(Errc::UnknownVertex, "edge endpoint '" + b + "'");
      if (ia->second == ib->second) throw Error(Errc::SelfLoop, "self-loop at '" + a + "'");
      auto key = std::minmax(ia->second, ib->second);
      if (!seen.insert(key).second)
        throw Error(Errc::DuplicateEdge, "edge {" + a + ", " + b + "} listed twice");
      impl->adj[ia->second].push_back(ib->second);
      impl->adj[ib->second].push_back(ia->second);
    }
    impl->edges.assign(seen.begin(), seen.end());
    for (auto& row : impl->adj) std::sort(row.begin(), row.end());
    if (n <= kDenseLimit) {
      impl->dense.assign(n * n, false);
      for (const auto& [u, v] : impl->edges) {
        impl->dense[u * n + v] = true;
        impl->dense[v * n + u] = true;
      }
    }
    Graph g;
    g.impl_ = std::move(impl);
    if (!g.connected()) throw Error(Errc::Disconnected, "graph is not connected");
    return g;
  }

  bool valid() const noexcept { return impl_ != nullptr; }
  std::size_t size() const noexcept { return impl_ ? impl_->labels.size() : 0; }
  std::size_t edge_count() const noexcept { return impl_ ? impl_->edges.size() : 0; }

  const std::string& label(VertexId v) const { return impl_->labels.at(v); }
  const std::vector<std::string>& labels() const { return impl_->labels; }

  std::optional<VertexId> find(std::string_view label) const {
    auto it = impl_->index.find(std::string(label));
    if (it == impl_->index.end()) return std::nullopt;
    return it->second;
  }

  VertexId id(std::string_view label) const {
    auto v = find(label);
    if (!v) throw Error(Errc::UnknownVertex, "no vertex '" + std::string(label) + "'");
    return *v;
  }

  std::span<const VertexId> neighbors(VertexId v) const { return impl_->adj[v]; }
  std::size_t degree(VertexId v) const { return impl_->adj[v].size(); }

  bool adjacent(VertexId u, VertexId v) const {
    if (!impl_->dense.empty()) return impl_->dense[static_cast<std::size_t>(u) * size() + v];
    const auto& row = impl_->adj[u];
    return std::binary_search(row.begin(), row.end(), v);
  }

  /// The reflexive relation written u ≃ v.
  bool adjacent_or_equal(VertexId u, VertexId v) const { return u == v || adjacent(u, v); }

  /// Edges as (u, v) with u < v, sorted.
  const std::vector<std::pair<VertexId, VertexId>>& edges() const { return impl_->edges; }

  std::vector<std::size_t> distances_from(VertexId source) const {
    constexpr std::size_t inf = static_cast<std::size_t>(-1);
    std::vector<std::size_t> dist(size(), inf);
    std::queue<VertexId> q;
    dist[source] = 0;
    q.push(source);
    while (!q.empty()) {
      VertexId u = q.front();
      q.pop();
      for (VertexId w : neighbors(u))
        if (dist[w] == inf) {
          dist[w] = dist[u] + 1;
          q.push(w);
        }
    }
    return dist;
  }

  std::size_t eccentricity(VertexId v) const {
    auto d = distances_from(v);
    return *std::max_element(d.begin(), d.end());
  }

  std::size_t diameter() const {
    std::size_t best = 0;
    for (VertexId v = 0; v < size(); ++v) best = std::max(best, eccentricity(v));
    return best;
  }

  bool is_tree() const { return edge_count() + 1 == size(); }

  /// Induced subgraph on `keep` (must induce a connected graph).
  Graph induced(const std::vector<VertexId>& keep) const {
    std::vector<bool> in(size(), false);
    std::vector<std::string> names;
    for (VertexId v : keep) {
      if (!in[v]) names.push_back(label(v));
      in[v] = true;
    }
    std::vector<std::pair<std::string, std::string>> es;
    for (const auto& [u, v] : edges())
      if (in[u] && in[v]) es.emplace_back(label(u), label(v));
    return from_edges(std::move(names), es);
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    if (a.impl_ == b.impl_) return true;
    if (!a.impl_ || !b.impl_) return false;
    return a.impl_->labels == b.impl_->labels && a.impl_->edges == b.impl_->edges;
  }

 private:
  static constexpr std::size_t kDenseLimit = 4096;

  struct Impl {
    std::vector<std::string> labels;
    std::unordered_map<std::string, VertexId> index;
    std::vector<std::vector<VertexId>> adj;
    std::vector<std::pair<VertexId, VertexId>> edges;
    std::vector<bool> dense;
  };

  bool connected() const {
    auto d = distances_from(0);
    return std::none_of(d.begin(), d.end(), [](std::size_t x) { return x == static_cast<std::size_t>(-1); });
  }

  std::shared_ptr<const Impl> impl_;
};

/// Vertex function between graphs preserving ≃.
struct GraphMap {
  Graph source;
  Graph target;
  std::vector<VertexId> assignment;

  VertexId operator()(VertexId v) const { return assignment[v]; }
};

/// Checks that `assignment` is a graph map source → target. On failure the
/// verdict names a source edge whose image is neither an edge nor a vertex.
inline Verdict is_graph_map(const std::vector<VertexId>& assignment, const Graph& src, const Graph& dst) {
  if (assignment.size() != src.size())
    return Verdict::fail("assignment is not total on the source");
  for (VertexId v : assignment)
    if (v >= dst.size()) return Verdict::fail("assignment leaves the target");
  for (const auto& [u, v] : src.edges())
    if (!dst.adjacent_or_equal(assignment[u], assignment[v]))
      return Verdict::fail("edge image " + dst.label(assignment[u]) + " -- " + dst.label(assignment[v]) +
                               " is not adjacent-or-equal",
                           {src.label(u), src.label(v)});
  return Verdict::pass();
}

/// Label-level variant. Throws UnknownVertex for labels absent from either
/// graph or a source vertex without an image.
inline Verdict is_graph_map(const std::map<std::string, std::string>& f, const Graph& src, const Graph& dst) {
  std::vector<VertexId> assignment(src.size());
  std::vector<bool> set(src.size(), false);
  for (const auto& [from, to] : f) {
    VertexId u = src.id(from);
    assignment[u] = dst.id(to);
    set[u] = true;
  }
  for (VertexId u = 0; u < src.size(); ++u)
    if (!set[u]) throw Error(Errc::UnknownVertex, "no image for '" + src.label(u) + "'");
  return is_graph_map(assignment, src, dst);
}

inline GraphMap make_graph_map(const Graph& src, const Graph& dst, std::vector<VertexId> assignment) {
  auto verdict = is_graph_map(assignment, src, dst);
  if (!verdict) throw Error(Errc::NotAGraphMap, verdict.describe());
  return GraphMap{src, dst, std::move(assignment)};
}

inline GraphMap compose(const GraphMap& second, const GraphMap& first) {
  if (!(first.target == second.source)) throw Error(Errc::DomainMismatch, "maps do not compose");
  std::vector<VertexId> out(first.assignment.size());
  for (std::size_t v = 0; v < out.size(); ++v) out[v] = second.assignment[first.assignment[v]];
  return GraphMap{first.source, second.target, std::move(out)};
}

inline GraphMap identity_map(const Graph& g) {
  std::vector<VertexId> id(g.size());
  std::iota(id.begin(), id.end(), VertexId{0});
  return GraphMap{g, g, std::move(id)};
}

// ---- standard families --------------------------------------------------

/// I_m: integers 0..m with consecutive edges.
inline Graph path_graph(int m) {
  if (m < 0) throw Error(Errc::InvalidSize, "path length must be >= 0");
  std::vector<std::string> vs;
  std::vector<std::pair<std::string, std::string>> es;
  for (int i = 0; i <= m; ++i) vs.push_back(std::to_string(i));
  for (int i = 0; i < m; ++i) es.emplace_back(std::to_string(i), std::to_string(i + 1));
  return Graph::from_edges(std::move(vs), es);
}

/// Z_m with vertices 0..m-1.
inline Graph cycle_graph(int m) {
  if (m < 3) throw Error(Errc::InvalidSize, "cycle length must be >= 3");
  std::vector<std::string> vs;
  std::vector<std::pair<std::string, std::string>> es;
  for (int i = 0; i < m; ++i) vs.push_back(std::to_string(i));
  for (int i = 0; i < m; ++i) es.emplace_back(std::to_string(i), std::to_string((i + 1) % m));
  return Graph::from_edges(std::move(vs), es);
}

/// Cycle through the given labels in order.
inline Graph labeled_cycle(const std::vector<std::string>& names) {
  if (names.size() < 3) throw Error(Errc::InvalidSize, "cycle length must be >= 3");
  std::vector<std::pair<std::string, std::string>> es;
  for (std::size_t i = 0; i < names.size(); ++i) es.emplace_back(names[i], names[(i + 1) % names.size()]);
  return Graph::from_edges(names, es);
}

/// Tree from an edge list; rejects cycles and disconnected input.
inline Graph tree_graph(const std::vector<std::pair<std::string, std::string>>& edges) {
  std::set<std::string> names;
  for (const auto& [a, b] : edges) {
    names.insert(a);
    names.insert(b);
  }
  if (names.empty()) throw Error(Errc::NotATree, "empty edge list");
  Graph g;
  try {
    g = Graph::from_edges({names.begin(), names.end()}, edges);
  } catch (const Error& e) {
    if (e.code() == Errc::Disconnected) throw Error(Errc::NotATree, "edge list is disconnected");
    throw;
  }
  if (!g.is_tree()) throw Error(Errc::NotATree, "edge list contains a cycle");
  return g;
}

inline Graph single_vertex(const std::string& name) { return Graph::from_edges({name}, {}); }

/// G □ H with vertex labels "(u,x)".
inline Graph cartesian_product(const Graph& g, const Graph& h) {
  auto name = [&](VertexId u, VertexId x) { return "(" + g.label(u) + "," + h.label(x) + ")"; };
  std::vector<std::string> vs;
  std::vector<std::pair<std::string, std::string>> es;
  for (VertexId u = 0; u < g.size(); ++u)
    for (VertexId x = 0; x < h.size(); ++x) vs.push_back(name(u, x));
  for (VertexId u = 0; u < g.size(); ++u)
    for (const auto& [x, y] : h.edges()) es.emplace_back(name(u, x), name(u, y));
  for (const auto& [u, v] : g.edges())
    for (VertexId x = 0; x < h.size(); ++x) es.emplace_back(name(u, x), name(v, x));
  return Graph::from_edges(std::move(vs), es);
}

/// True iff G has no 3-cycle and no 4-cycle subgraph.
inline bool girth_at_least_5(const Graph& g) {
  for (const auto& [u, v] : g.edges())
    for (VertexId w : g.neighbors(u))
      if (w != v && g.adjacent(v, w)) return false;
  const std::size_t n = g.size();
  std::vector<int> mark(n, -1);
  for (VertexId u = 0; u < n; ++u) {
    // a second path of length two from u to w closes a 4-cycle
    for (VertexId x : g.neighbors(u))
      for (VertexId w : g.neighbors(x)) {
        if (w == u) continue;
        if (mark[w] == static_cast<int>(u)) return false;
        mark[w] = static_cast<int>(u);
      }
  }
  return true;
}

}  // namespace dht
