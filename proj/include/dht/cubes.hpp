#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "dht/error.hpp"
#include "dht/graph.hpp"
#include "dht/smith.hpp"

namespace dht {

/// Graph map Q_n -> G stored as its 2^n corner values. Corner a in {0,1}^n
/// sits at index sum a_i 2^(i-1), so axis i is bit i-1.
struct Cube {
  int dim = 0;
  std::vector<VertexId> v;

  Cube() : v(1, 0) {}
  Cube(int n, std::vector<VertexId> values) : dim(n), v(std::move(values)) {
    if (v.size() != (std::size_t{1} << n)) throw Error(Errc::DimensionMismatch, "cube needs 2^n corners");
  }

  static Cube point(VertexId x) { return Cube(0, {x}); }

  friend bool operator<(const Cube& a, const Cube& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.v < b.v;
  }
  friend bool operator==(const Cube& a, const Cube& b) = default;
};

inline bool is_cube_of(const Cube& c, const Graph& g) {
  const std::size_t corners = c.v.size();
  for (std::size_t y = 0; y < corners; ++y) {
    if (c.v[y] >= g.size()) return false;
    for (int b = 0; b < c.dim; ++b)
      if (!(y >> b & 1) && !g.adjacent_or_equal(c.v[y], c.v[y | (std::size_t{1} << b)])) return false;
  }
  return true;
}

/// D_i^- (sign < 0) or D_i^+ (sign > 0) for axis i in 1..n.
inline Cube face(const Cube& c, int axis, int sign) {
  if (axis < 1 || axis > c.dim) throw Error(Errc::AxisOutOfRange, "axis " + std::to_string(axis));
  const int b = axis - 1;
  const std::size_t low = (std::size_t{1} << b) - 1;
  const std::size_t bit = sign > 0 ? (std::size_t{1} << b) : 0;
  std::vector<VertexId> out(std::size_t{1} << (c.dim - 1));
  for (std::size_t y = 0; y < out.size(); ++y) {
    std::size_t full = (y & low) | ((y & ~low) << 1) | bit;
    out[y] = c.v[full];
  }
  return Cube(c.dim - 1, std::move(out));
}

inline bool degenerate_along(const Cube& c, int axis) {
  const std::size_t bit = std::size_t{1} << (axis - 1);
  for (std::size_t y = 0; y < c.v.size(); ++y)
    if (!(y & bit) && c.v[y] != c.v[y | bit]) return false;
  return true;
}

inline bool is_degenerate(const Cube& c) {
  for (int i = 1; i <= c.dim; ++i)
    if (degenerate_along(c, i)) return true;
  return false;
}

/// Same test on a raw corner span of dimension n.
inline bool is_degenerate(std::span<const VertexId> v, int n) {
  for (int b = 0; b < n; ++b) {
    const std::size_t bit = std::size_t{1} << b;
    bool same = true;
    for (std::size_t y = 0; y < v.size() && same; ++y)
      if (!(y & bit) && v[y] != v[y | bit]) same = false;
    if (same) return true;
  }
  return false;
}

// ---- enumeration -------------------------------------------------------

/// Flat sorted list of n-cubes; cube k occupies corners [k*2^n, (k+1)*2^n).
struct CubeList {
  int dim = 0;
  std::vector<VertexId> flat;

  std::size_t corners() const { return std::size_t{1} << dim; }
  std::size_t size() const { return flat.size() / corners(); }
  std::span<const VertexId> at(std::size_t k) const { return {flat.data() + k * corners(), corners()}; }
  Cube cube(std::size_t k) const {
    auto s = at(k);
    return Cube(dim, {s.begin(), s.end()});
  }

  /// Position of a cube, or size() if absent.
  std::size_t find(std::span<const VertexId> c) const {
    std::size_t lo = 0, hi = size();
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      auto m = at(mid);
      if (std::lexicographical_compare(m.begin(), m.end(), c.begin(), c.end())) lo = mid + 1;
      else hi = mid;
    }
    if (lo < size()) {
      auto m = at(lo);
      if (std::equal(m.begin(), m.end(), c.begin(), c.end())) return lo;
    }
    return size();
  }
};

inline constexpr std::size_t kDefaultCubeBudget = 5'000'000;

/// All graph maps Q_n -> G (or only the nondegenerate ones) in lexicographic
/// order of corner tuples, by backtracking over corners in index order.
inline CubeList enumerate_cubes(const Graph& g, int n, bool nondegenerate_only = false,
                                std::size_t budget = kDefaultCubeBudget, std::size_t* total_seen = nullptr) {
  if (n < 0) throw Error(Errc::InvalidParameter, "cube dimension must be >= 0");
  if (n > 20) throw Error(Errc::InvalidParameter, "cube dimension too large");
  CubeList out;
  out.dim = n;
  const std::size_t corners = std::size_t{1} << n;
  std::vector<VertexId> cur(corners);
  std::size_t seen = 0;
  auto rec = [&](auto&& self, std::size_t y) -> void {
    if (y == corners) {
      if (++seen > budget)
        throw Error(Errc::BudgetExceeded, "more than " + std::to_string(budget) + " " + std::to_string(n) + "-cubes");
      if (!nondegenerate_only || !is_degenerate(std::span<const VertexId>(cur), n))
        out.flat.insert(out.flat.end(), cur.begin(), cur.end());
      return;
    }
    auto fits = [&](VertexId x) {
      for (int b = 0; b < n; ++b)
        if (y >> b & 1)
          if (!g.adjacent_or_equal(cur[y ^ (std::size_t{1} << b)], x)) return false;
      return true;
    };
    if (y == 0) {
      for (VertexId x = 0; x < g.size(); ++x) {
        cur[0] = x;
        self(self, 1);
      }
      return;
    }
    // candidates: closed neighbourhood of the corner across the lowest set bit
    const VertexId anchor = cur[y & (y - 1)];
    std::vector<VertexId> cand(g.neighbors(anchor).begin(), g.neighbors(anchor).end());
    cand.insert(std::lower_bound(cand.begin(), cand.end(), anchor), anchor);
    for (VertexId x : cand)
      if (fits(x)) {
        cur[y] = x;
        self(self, y + 1);
      }
  };
  rec(rec, 0);
  if (total_seen) *total_seen = seen;
  return out;
}

inline std::size_t count_cubes(const Graph& g, int n, std::size_t budget = kDefaultCubeBudget) {
  std::size_t seen = 0;
  enumerate_cubes(g, n, true, budget, &seen);
  return seen;
}

// ---- chains ------------------------------------------------------------

/// Integer combination of nondegenerate n-cubes. Degenerate cubes and zero
/// coefficients are never stored.
class Chain {
 public:
  using Terms = std::map<std::vector<VertexId>, Int>;

  Chain() = default;
  explicit Chain(int n) : dim_(n) {}

  int dim() const noexcept { return dim_; }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  void add(std::span<const VertexId> corners, const Int& coeff) {
    if (coeff == 0) return;
    if (dim_ > 0 && is_degenerate(corners, dim_)) return;
    std::vector<VertexId> key(corners.begin(), corners.end());
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      terms_.emplace(std::move(key), coeff);
      return;
    }
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }

  void add(const Cube& c, const Int& coeff) {
    if (c.dim != dim_) throw Error(Errc::DimensionMismatch, "cube dimension differs from chain");
    add(std::span<const VertexId>(c.v), coeff);
  }

  Int coefficient(const Cube& c) const {
    auto it = terms_.find(c.v);
    return it == terms_.end() ? Int(0) : it->second;
  }

  Chain& operator+=(const Chain& o) {
    check(o);
    for (const auto& [k, v] : o.terms_) add(std::span<const VertexId>(k), v);
    return *this;
  }
  Chain& operator-=(const Chain& o) {
    check(o);
    for (const auto& [k, v] : o.terms_) add(std::span<const VertexId>(k), -v);
    return *this;
  }
  friend Chain operator+(Chain a, const Chain& b) { return a += b; }
  friend Chain operator-(Chain a, const Chain& b) { return a -= b; }
  friend Chain operator*(const Int& s, const Chain& a) {
    Chain out(a.dim_);
    if (s == 0) return out;
    for (const auto& [k, v] : a.terms_) out.terms_.emplace(k, s * v);
    return out;
  }
  friend bool operator==(const Chain& a, const Chain& b) {
    return (a.dim_ == b.dim_ || (a.is_zero() && b.is_zero())) && a.terms_ == b.terms_;
  }

  /// True iff every stored term is a nondegenerate cube with nonzero coefficient.
  bool normal_form() const {
    for (const auto& [k, v] : terms_)
      if (v == 0 || (dim_ > 0 && is_degenerate(std::span<const VertexId>(k), dim_))) return false;
    return true;
  }

 private:
  void check(const Chain& o) const {
    if (o.dim_ != dim_ && !o.is_zero()) throw Error(Errc::DimensionMismatch, "chain dimensions differ");
  }
  int dim_ = 0;
  Terms terms_;
};

/// sum_i (-1)^i (D_i^- c - D_i^+ c), degenerate faces dropped.
inline Chain boundary(const Cube& c) {
  if (c.dim < 1) throw Error(Errc::DimensionMismatch, "boundary of a 0-cube");
  Chain out(c.dim - 1);
  for (int i = 1; i <= c.dim; ++i) {
    const Int s = (i % 2 == 0) ? 1 : -1;
    out.add(face(c, i, -1), s);
    out.add(face(c, i, +1), -s);
  }
  return out;
}

inline Chain boundary(const Chain& z) {
  if (z.dim() < 1) throw Error(Errc::DimensionMismatch, "boundary of a 0-chain");
  Chain out(z.dim() - 1);
  for (const auto& [k, v] : z.terms()) {
    Chain b = boundary(Cube(z.dim(), k));
    for (const auto& [fk, fv] : b.terms()) out.add(std::span<const VertexId>(fk), v * fv);
  }
  return out;
}

/// Boundary matrix with rows indexed by `lower` and columns by `upper`
/// (both lists of nondegenerate cubes).
inline SparseMatrix boundary_matrix(const CubeList& upper, const CubeList& lower) {
  if (upper.dim != lower.dim + 1) throw Error(Errc::DimensionMismatch, "boundary matrix dimensions");
  SparseMatrix m;
  m.rows = lower.size();
  m.cols = upper.size();
  for (std::size_t j = 0; j < upper.size(); ++j) {
    Cube c = upper.cube(j);
    for (int i = 1; i <= c.dim; ++i) {
      const long long s = (i % 2 == 0) ? 1 : -1;
      for (int sign : {-1, +1}) {
        Cube f = face(c, i, sign);
        if (f.dim > 0 && is_degenerate(f)) continue;
        std::size_t r = lower.find(std::span<const VertexId>(f.v));
        if (r == lower.size()) throw Error(Errc::InvalidCertificate, "face missing from the lower basis");
        m.add(r, j, sign < 0 ? s : -s);
      }
    }
  }
  return m;
}

inline IntMatrix to_dense(const SparseMatrix& m) {
  IntMatrix d(m.rows, m.cols);
  for (std::size_t k = 0; k < m.pos.size(); ++k) d(m.pos[k].first, m.pos[k].second) += m.val[k];
  return d;
}

/// "rows cols nnz" header then "r c v" lines, 0-based, entries merged.
inline void write_triplets(std::ostream& os, const SparseMatrix& m) {
  std::map<std::pair<std::size_t, std::size_t>, long long> merged;
  for (std::size_t k = 0; k < m.pos.size(); ++k) merged[m.pos[k]] += m.val[k];
  std::size_t nnz = 0;
  for (const auto& [p, v] : merged) nnz += v != 0;
  os << m.rows << ' ' << m.cols << ' ' << nnz << '\n';
  for (const auto& [p, v] : merged)
    if (v != 0) os << p.first << ' ' << p.second << ' ' << v << '\n';
}

inline std::string cube_string(const Graph& g, std::span<const VertexId> c) {
  std::string s = "[";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ' ';
    s += g.label(c[i]);
  }
  return s + "]";
}

}  // namespace dht
