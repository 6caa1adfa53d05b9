#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dht/error.hpp"
#include "dht/graph.hpp"

namespace dht {

/// Freely reduced word in the free group on edge letters 1..k. A letter is
/// +e or -e (the inverse of e).
class FreeWord {
 public:
  FreeWord() = default;
  explicit FreeWord(const std::vector<int>& letters) {
    for (int l : letters) push(l);
  }

  const std::vector<int>& letters() const noexcept { return w_; }
  std::size_t length() const noexcept { return w_.size(); }
  bool is_identity() const noexcept { return w_.empty(); }

  /// Right multiplication by one letter; amortized O(1).
  void push(int l) {
    if (l == 0) throw Error(Errc::InvalidParameter, "letter 0 is not a generator");
    if (!w_.empty() && w_.back() == -l) w_.pop_back();
    else w_.push_back(l);
  }

  FreeWord inverse() const {
    FreeWord r;
    for (auto it = w_.rbegin(); it != w_.rend(); ++it) r.w_.push_back(-*it);
    return r;
  }

  FreeWord& operator*=(const FreeWord& o) {
    for (int l : o.w_) push(l);
    return *this;
  }
  friend FreeWord operator*(FreeWord a, const FreeWord& b) { return a *= b; }
  friend bool operator==(const FreeWord&, const FreeWord&) = default;

  /// Shortlex order: the identity first, then by length.
  friend bool operator<(const FreeWord& a, const FreeWord& b) {
    if (a.w_.size() != b.w_.size()) return a.w_.size() < b.w_.size();
    return a.w_ < b.w_;
  }

  /// |u^{-1} v|
  static std::size_t distance(const FreeWord& u, const FreeWord& v) { return (u.inverse() * v).length(); }

 private:
  std::vector<int> w_;
};

/// One chosen orientation per edge of a graph. Letter e (1-based) stands for
/// the oriented edge edges()[e-1].
class OrientedEdgeSet {
 public:
  OrientedEdgeSet() = default;

  /// Every edge oriented from the lesser to the greater label.
  explicit OrientedEdgeSet(const Graph& g) : g_(g) {
    for (auto [u, v] : g.edges()) add(std::min(u, v), std::max(u, v));
  }

  /// Explicit orientation; must cover every edge exactly once.
  OrientedEdgeSet(const Graph& g, const std::vector<std::pair<std::string, std::string>>& arcs) : g_(g) {
    for (const auto& [a, b] : arcs) {
      VertexId u = g.id(a), v = g.id(b);
      if (!g.adjacent(u, v)) throw Error(Errc::NotAdjacent, a + " and " + b + " are not adjacent");
      if (index_.count({u, v}) || index_.count({v, u})) throw Error(Errc::DuplicateEdge, "edge " + a + "-" + b + " oriented twice");
      add(u, v);
    }
    if (arcs_.size() != g.edge_count()) throw Error(Errc::InvalidParameter, "orientation misses some edges");
  }

  std::size_t size() const noexcept { return arcs_.size(); }
  const Graph& graph() const noexcept { return g_; }
  std::pair<VertexId, VertexId> arc(int letter) const { return arcs_.at(static_cast<std::size_t>(std::abs(letter) - 1)); }

  /// +e if (u,v) is the arc e, -e if (v,u) is, 0 if u == v.
  int letter(VertexId u, VertexId v) const {
    if (u == v) return 0;
    if (auto it = index_.find({u, v}); it != index_.end()) return it->second;
    if (auto it = index_.find({v, u}); it != index_.end()) return -it->second;
    throw Error(Errc::NotAdjacent, g_.label(u) + " and " + g_.label(v) + " are not adjacent");
  }

  /// Endpoint of the walk spelled by w from `start`, or nullopt if the
  /// letters do not chain.
  std::optional<VertexId> walk(VertexId start, const FreeWord& w) const {
    VertexId cur = start;
    for (int l : w.letters()) {
      auto [u, v] = arc(l);
      if (l > 0 && cur == u) cur = v;
      else if (l < 0 && cur == v) cur = u;
      else return std::nullopt;
    }
    return cur;
  }

  std::string str(const FreeWord& w) const {
    if (w.is_identity()) return "1";
    std::string s;
    for (int l : w.letters()) {
      auto [u, v] = arc(l);
      s += "(" + g_.label(u) + "," + g_.label(v) + ")";
      if (l < 0) s += "^-1";
    }
    return s;
  }

 private:
  void add(VertexId u, VertexId v) {
    arcs_.emplace_back(u, v);
    index_[{u, v}] = static_cast<int>(arcs_.size());
  }

  Graph g_;
  std::vector<std::pair<VertexId, VertexId>> arcs_;
  std::map<std::pair<VertexId, VertexId>, int> index_;
};

}  // namespace dht
