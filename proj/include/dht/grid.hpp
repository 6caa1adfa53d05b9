#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "dht/error.hpp"
#include "dht/graph.hpp"

namespace dht {

using MultiIndex = std::vector<int>;

inline std::string format_index(const MultiIndex& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(x[i]);
  }
  return s + ")";
}

inline MultiIndex unit_vector(std::size_t n, std::size_t axis) {
  MultiIndex e(n, 0);
  e.at(axis) = 1;
  return e;
}

struct Interval {
  int lo = 0;
  int hi = 0;
  int length() const { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Box I_{[a_1,b_1]} x ... x I_{[a_n,b_n]} in Z^n. Points are addressed by a
/// row-major flat index with axis 0 varying slowest.
class GridSpec {
 public:
  GridSpec() = default;

  explicit GridSpec(std::vector<Interval> intervals) : iv_(std::move(intervals)) {
    if (iv_.empty()) throw Error(Errc::InvalidSize, "grid needs at least one axis");
    for (const auto& i : iv_)
      if (i.lo > i.hi) throw Error(Errc::InvalidSize, "grid interval with lo > hi");
    stride_.assign(iv_.size(), 1);
    for (std::size_t a = iv_.size(); a-- > 1;)
      stride_[a - 1] = stride_[a] * static_cast<std::size_t>(iv_[a].length() + 1);
    size_ = stride_[0] * static_cast<std::size_t>(iv_[0].length() + 1);
  }

  /// I_{m_1} x ... x I_{m_n} based at the origin.
  static GridSpec box(const std::vector<int>& extents) {
    std::vector<Interval> iv;
    for (int m : extents) iv.push_back({0, m});
    return GridSpec(std::move(iv));
  }

  static GridSpec cube(std::size_t n, int m) { return box(std::vector<int>(n, m)); }

  std::size_t dim() const noexcept { return iv_.size(); }
  std::size_t size() const noexcept { return size_; }
  const Interval& interval(std::size_t axis) const { return iv_.at(axis); }
  const std::vector<Interval>& intervals() const noexcept { return iv_; }
  std::size_t stride(std::size_t axis) const { return stride_[axis]; }

  bool contains(const MultiIndex& x) const {
    if (x.size() != dim()) return false;
    for (std::size_t a = 0; a < dim(); ++a)
      if (x[a] < iv_[a].lo || x[a] > iv_[a].hi) return false;
    return true;
  }

  std::size_t index(const MultiIndex& x) const {
    std::size_t k = 0;
    for (std::size_t a = 0; a < dim(); ++a) k += static_cast<std::size_t>(x[a] - iv_[a].lo) * stride_[a];
    return k;
  }

  MultiIndex point(std::size_t k) const {
    MultiIndex x(dim());
    for (std::size_t a = 0; a < dim(); ++a) {
      x[a] = iv_[a].lo + static_cast<int>(k / stride_[a]);
      k %= stride_[a];
    }
    return x;
  }

  int coord(std::size_t k, std::size_t axis) const {
    return iv_[axis].lo + static_cast<int>((k / stride_[axis]) % static_cast<std::size_t>(iv_[axis].length() + 1));
  }

  bool on_boundary(const MultiIndex& x) const {
    for (std::size_t a = 0; a < dim(); ++a)
      if (x[a] == iv_[a].lo || x[a] == iv_[a].hi) return true;
    return false;
  }

  bool on_boundary(std::size_t k) const {
    for (std::size_t a = 0; a < dim(); ++a) {
      int c = coord(k, a);
      if (c == iv_[a].lo || c == iv_[a].hi) return true;
    }
    return false;
  }

  /// Flat index of the +1 neighbour along `axis`, if inside.
  bool has_next(std::size_t k, std::size_t axis) const { return coord(k, axis) < iv_[axis].hi; }
  std::size_t next(std::size_t k, std::size_t axis) const { return k + stride_[axis]; }

  GridSpec translated(const MultiIndex& by) const {
    std::vector<Interval> iv = iv_;
    for (std::size_t a = 0; a < dim(); ++a) {
      iv[a].lo += by[a];
      iv[a].hi += by[a];
    }
    return GridSpec(std::move(iv));
  }

  GridSpec expanded(int r) const {
    std::vector<Interval> iv = iv_;
    for (auto& i : iv) {
      i.lo -= r;
      i.hi += r;
    }
    return GridSpec(std::move(iv));
  }

  /// Grid with the given extra axis appended.
  GridSpec times(Interval extra) const {
    std::vector<Interval> iv = iv_;
    iv.push_back(extra);
    return GridSpec(std::move(iv));
  }

  MultiIndex lower() const {
    MultiIndex x;
    for (const auto& i : iv_) x.push_back(i.lo);
    return x;
  }

  std::string describe() const {
    std::string s;
    for (std::size_t a = 0; a < dim(); ++a) {
      if (a) s += ' ';
      s += std::to_string(iv_[a].lo) + ":" + std::to_string(iv_[a].hi);
    }
    return s;
  }

  friend bool operator==(const GridSpec& a, const GridSpec& b) { return a.iv_ == b.iv_; }

  /// Calls fn(k, k') for every grid edge (k' is the +1 neighbour of k).
  template <class Fn>
  void for_each_edge(Fn&& fn) const {
    for (std::size_t k = 0; k < size_; ++k)
      for (std::size_t a = 0; a < dim(); ++a)
        if (has_next(k, a)) fn(k, next(k, a));
  }

 private:
  std::vector<Interval> iv_;
  std::vector<std::size_t> stride_;
  std::size_t size_ = 0;
};

struct BoundaryInterior {
  std::vector<std::size_t> boundary;
  std::vector<std::size_t> interior;
};

/// Partition of the grid points (flat indices) into boundary and interior.
inline BoundaryInterior grid_boundary_interior(const GridSpec& spec) {
  BoundaryInterior out;
  for (std::size_t k = 0; k < spec.size(); ++k)
    (spec.on_boundary(k) ? out.boundary : out.interior).push_back(k);
  return out;
}

/// The grid as a Graph with labels "(x_1,...,x_n)".
inline Graph grid_graph(const GridSpec& spec) {
  std::vector<std::string> vs;
  vs.reserve(spec.size());
  for (std::size_t k = 0; k < spec.size(); ++k) vs.push_back(format_index(spec.point(k)));
  std::vector<std::pair<std::string, std::string>> es;
  spec.for_each_edge([&](std::size_t a, std::size_t b) { es.emplace_back(vs[a], vs[b]); });
  return Graph::from_edges(std::move(vs), es);
}

/// Flat grid index -> vertex id in grid_graph(spec).
inline std::vector<VertexId> grid_vertex_ids(const GridSpec& spec, const Graph& g) {
  std::vector<VertexId> ids(spec.size());
  for (std::size_t k = 0; k < spec.size(); ++k) ids[k] = g.id(format_index(spec.point(k)));
  return ids;
}

}  // namespace dht
