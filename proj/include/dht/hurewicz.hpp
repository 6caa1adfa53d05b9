#pragma once

#include <algorithm>
#include <deque>
#include <string>
#include <vector>

#include "dht/cubes.hpp"
#include "dht/homology.hpp"
#include "dht/homotopy.hpp"

namespace dht {

// ---- cubes of a grid map -----------------------------------------------

/// Flat-index offsets of the 2^n corners of x + Q_n; corner y has bit i-1
/// set iff it is shifted along axis i.
inline std::vector<std::size_t> corner_offsets(const GridSpec& d) {
  const std::size_t n = d.dim();
  std::vector<std::size_t> off(std::size_t{1} << n, 0);
  for (std::size_t y = 0; y < off.size(); ++y)
    for (std::size_t a = 0; a < n; ++a)
      if (y >> a & 1) off[y] += d.stride(a);
  return off;
}

/// f^x: the cube y -> f(x + y). x must satisfy x + Q_n inside the domain.
inline Cube cube_at(const GridMap& f, const MultiIndex& x) {
  const GridSpec& d = f.domain;
  for (std::size_t a = 0; a < d.dim(); ++a)
    if (x[a] < d.interval(a).lo || x[a] >= d.interval(a).hi)
      throw Error(Errc::DomainMismatch, "cube " + format_index(x) + " leaves the domain");
  auto off = corner_offsets(d);
  const std::size_t base = d.index(x);
  std::vector<VertexId> v(off.size());
  for (std::size_t y = 0; y < off.size(); ++y) v[y] = f.values[base + off[y]];
  return Cube(static_cast<int>(d.dim()), std::move(v));
}

/// phi(f): the sum of f^x over all x with x + Q_n in the domain.
inline Chain phi(const GridMap& f) {
  const GridSpec& d = f.domain;
  const int n = static_cast<int>(d.dim());
  Chain out(n);
  for (std::size_t a = 0; a < d.dim(); ++a)
    if (d.interval(a).length() < 1) return out;
  auto off = corner_offsets(d);
  std::vector<VertexId> v(off.size());
  for (std::size_t k = 0; k < d.size(); ++k) {
    bool inner = true;
    for (std::size_t a = 0; a < d.dim() && inner; ++a) inner = d.has_next(k, a);
    if (!inner) continue;
    for (std::size_t y = 0; y < off.size(); ++y) v[y] = f.values[k + off[y]];
    out.add(std::span<const VertexId>(v), 1);
  }
  return out;
}

inline bool verify_hurewicz_cycle(const GridMap& f) { return boundary(phi(f)).is_zero(); }

/// The stages of a grid-domain certificate as one map on D x I_m, time last.
inline GridMap certificate_as_map(const HomotopyCertificate& h) {
  if (!h.grid_domain() || h.stages.empty())
    throw Error(Errc::InvalidCertificate, "certificate needs a grid domain and at least one stage");
  const GridSpec& d = h.grid();
  GridSpec big = d.times({0, static_cast<int>(h.length())});
  std::vector<VertexId> vals;
  vals.reserve(big.size());
  // time is the fastest axis in row-major order
  for (std::size_t k = 0; k < d.size(); ++k)
    for (const auto& s : h.stages) vals.push_back(s[k]);
  return GridMap{big, h.target, std::move(vals)};
}

/// d phi(H) = (-1)^{n+1} (phi(h_0) - phi(h_m)) for a based certificate H.
struct InvarianceCheck {
  bool holds = false;
  Chain lhs, rhs;
};

inline InvarianceCheck homotopy_invariance(const HomotopyCertificate& h) {
  auto v = verify_based(h);
  if (!v) throw Error(Errc::InvalidCertificate, v.describe());
  const GridSpec& d = h.grid();
  InvarianceCheck out;
  out.lhs = boundary(phi(certificate_as_map(h)));
  Chain f = phi(GridMap{d, h.target, h.stages.front()});
  Chain g = phi(GridMap{d, h.target, h.stages.back()});
  Int sign = (d.dim() + 1) % 2 == 0 ? 1 : -1;
  out.rhs = sign * (f - g);
  out.holds = out.lhs == out.rhs;
  return out;
}

inline bool verify_homotopy_invariance(const HomotopyCertificate& h) { return homotopy_invariance(h).holds; }

/// Coordinates of psi([f]) against an explicit homology basis.
struct HomologyClassCoords {
  int dim = 0;
  HomologyGroup group;
  std::vector<Int> coords;  // torsion coordinates first, then free
};

inline HomologyClassCoords psi(const BasedMap& f, const HomologyBasis& hb) {
  if (static_cast<int>(f.domain.dim()) != hb.dim())
    throw Error(Errc::DimensionMismatch, "map dimension differs from the homology degree");
  Chain z = phi(f);
  if (!boundary(z).is_zero()) throw Error(Errc::InvalidParameter, "phi(f) is not a cycle");
  return {hb.dim(), hb.group(), hb.coordinates(z)};
}

inline HomologyClassCoords psi(const BasedMap& f, std::size_t budget = kDefaultCubeBudget) {
  HomologyBasis hb(f.target, static_cast<int>(f.domain.dim()), budget);
  return psi(f, hb);
}

inline bool verify_psi_additive(const BasedMap& f, const BasedMap& g) {
  Chain d = phi(concatenate(f, g)) - phi(f) - phi(g);
  return d.is_zero();
}

// ---- the A_1 presentation ----------------------------------------------

/// Generators are the non-tree edges of a BFS spanning tree, oriented from
/// lesser to greater vertex. Letters are +-(generator index + 1).
struct GroupPresentation {
  std::vector<std::pair<VertexId, VertexId>> generators;
  std::vector<std::vector<int>> relators;

  std::string word_string(const std::vector<int>& w) const {
    if (w.empty()) return "1";
    std::string s;
    for (int l : w) {
      if (!s.empty()) s += ' ';
      s += "g" + std::to_string(std::abs(l) - 1);
      if (l < 0) s += "^-1";
    }
    return s;
  }
};

inline void append_reduced(std::vector<int>& w, int letter) {
  if (!w.empty() && w.back() == -letter) w.pop_back();
  else w.push_back(letter);
}

inline GroupPresentation a1_presentation(const Graph& g, VertexId root = 0) {
  if (root >= g.size()) throw Error(Errc::UnknownVertex, "root out of range");
  const std::size_t n = g.size();
  std::vector<VertexId> parent(n, n);
  parent[root] = root;
  std::deque<VertexId> q{root};
  while (!q.empty()) {
    VertexId u = q.front();
    q.pop_front();
    for (VertexId w : g.neighbors(u))
      if (parent[w] == n) {
        parent[w] = u;
        q.push_back(w);
      }
  }
  auto is_tree = [&](VertexId a, VertexId b) { return parent[a] == b || parent[b] == a; };

  GroupPresentation p;
  std::map<std::pair<VertexId, VertexId>, int> gen;
  for (auto [a, b] : g.edges()) {
    auto e = std::minmax(a, b);
    if (is_tree(e.first, e.second)) continue;
    gen[e] = static_cast<int>(p.generators.size()) + 1;
    p.generators.push_back(e);
  }
  auto relator = [&](const std::vector<VertexId>& cyc) {
    std::vector<int> w;
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      VertexId a = cyc[i], b = cyc[(i + 1) % cyc.size()];
      auto it = gen.find(std::minmax(a, b));
      if (it != gen.end()) append_reduced(w, a < b ? it->second : -it->second);
    }
    p.relators.push_back(std::move(w));
  };
  // triangles s < a < b, traversed s -> a -> b
  for (VertexId s = 0; s < n; ++s)
    for (VertexId a : g.neighbors(s))
      if (a > s)
        for (VertexId b : g.neighbors(a))
          if (b > a && g.adjacent(s, b)) relator({s, a, b});
  // 4-cycles s -> a -> w -> b with s least, a < b, w opposite to s
  for (VertexId s = 0; s < n; ++s)
    for (VertexId w = s + 1; w < n; ++w) {
      std::vector<VertexId> common;
      for (VertexId a : g.neighbors(s))
        if (a > s && a != w && g.adjacent(a, w)) common.push_back(a);
      std::sort(common.begin(), common.end());
      for (std::size_t i = 0; i < common.size(); ++i)
        for (std::size_t j = i + 1; j < common.size(); ++j) relator({s, common[i], w, common[j]});
    }
  return p;
}

/// Relator exponent matrix (relators x generators).
inline IntMatrix exponent_matrix(const GroupPresentation& p) {
  IntMatrix m(p.relators.size(), p.generators.size());
  for (std::size_t r = 0; r < p.relators.size(); ++r)
    for (int l : p.relators[r]) m(r, static_cast<std::size_t>(std::abs(l) - 1)) += l > 0 ? 1 : -1;
  return m;
}

inline HomologyGroup abelianized_a1(const Graph& g) {
  GroupPresentation p = a1_presentation(g);
  HomologyGroup h;
  if (p.generators.empty()) return h;
  auto f = invariant_factors(exponent_matrix(p));
  h.rank = p.generators.size() - f.rank;
  h.torsion = f.torsion;
  return h;
}

}  // namespace dht
