#pragma once

// Explicit generators of DH_n(G_n): the maps gamma_n on J_n, the onion maps
// f_n and g_n on L_n, and the chain identities relating them.

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "dht/constructions.hpp"
#include "dht/cubes.hpp"
#include "dht/homotopy.hpp"
#include "dht/hurewicz.hpp"

namespace dht {

/// Checks that `walk` is a closed walk going once around a cycle of g.
inline void validate_seed(const Graph& g, const std::vector<VertexId>& walk) {
  if (walk.size() < 4) throw Error(Errc::SeedNotClosedWalk, "seed walk needs at least three steps");
  if (walk.front() != walk.back()) throw Error(Errc::SeedNotClosedWalk, "seed walk is not closed");
  std::set<VertexId> seen;
  for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
    if (walk[i] >= g.size()) throw Error(Errc::SeedNotClosedWalk, "seed vertex out of range");
    if (!g.adjacent(walk[i], walk[i + 1]))
      throw Error(Errc::SeedNotClosedWalk, "seed step " + g.label(walk[i]) + " -> " + g.label(walk[i + 1]) + " is not an edge");
    if (!seen.insert(walk[i]).second) throw Error(Errc::SeedNotClosedWalk, "seed revisits " + g.label(walk[i]));
  }
}

/// Closed walk from labels, e.g. {"a","b","c","d","e","a"}.
inline std::vector<VertexId> seed_walk(const Graph& g, const std::vector<std::string>& labels) {
  std::vector<VertexId> w;
  for (const auto& l : labels) w.push_back(g.id(l));
  validate_seed(g, w);
  return w;
}

/// The default seed a b c d e a on the pentagon.
inline std::vector<VertexId> pentagon_seed(const Graph& z5) { return seed_walk(z5, {"a", "b", "c", "d", "e", "a"}); }

/// Two pentagons glued at the vertex a.
inline Graph pentagon_pair() {
  return Graph::from_edges({"a", "b", "c", "d", "e", "f", "g", "h", "i"},
                           {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "e"}, {"e", "a"},
                            {"a", "f"}, {"f", "g"}, {"g", "h"}, {"h", "i"}, {"i", "a"}});
}

/// Every cycle of g once, as a closed walk starting at its least vertex
/// and stepping to the lesser of its two neighbours on the cycle first.
/// Exponential in general; meant for small seeds.
inline std::vector<std::vector<VertexId>> cycle_seeds(const Graph& g, std::size_t limit = 1000) {
  std::vector<std::vector<VertexId>> out;
  std::vector<VertexId> path;
  std::vector<bool> on(g.size(), false);
  auto dfs = [&](auto&& self, VertexId s, VertexId u) -> void {
    if (out.size() >= limit) return;
    for (VertexId w : g.neighbors(u)) {
      if (w == s && path.size() >= 3 && path[1] < path.back()) {
        out.push_back(path);
        out.back().push_back(s);
      }
      if (w <= s || on[w]) continue;
      on[w] = true;
      path.push_back(w);
      self(self, s, w);
      path.pop_back();
      on[w] = false;
    }
  };
  for (VertexId s = 0; s < g.size(); ++s) {
    path = {s};
    on[s] = true;
    dfs(dfs, s, s);
    on[s] = false;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---- gamma_n ------------------------------------------------------------

/// J_1 = I_l, J_{n+1} = J_n x I_{n+3}.
inline GridSpec j_grid(int n, int ell = 5) {
  if (n < 1) throw Error(Errc::InvalidLevel, "J_n needs n >= 1");
  std::vector<int> ext{ell};
  for (int k = 2; k <= n; ++k) ext.push_back(k + 2);
  return GridSpec::box(ext);
}

inline int seed_length(const std::vector<VertexId>& walk) { return static_cast<int>(walk.size()) - 1; }

/// gamma_1 is the seed walk; gamma_{n+1}(v, i) = iota_n^i(gamma_n(v)).
inline GridMap gamma(const Tower& tw, const std::vector<VertexId>& walk, int n) {
  if (n < 1 || n > tw.height()) throw Error(Errc::InvalidLevel, "gamma needs 1 <= n <= tower height");
  validate_seed(tw.level(1), walk);
  std::vector<VertexId> vals = walk;
  for (int k = 1; k < n; ++k) {
    const int t = tower_height(k);
    std::vector<VertexId> next;
    next.reserve(vals.size() * static_cast<std::size_t>(t + 1));
    for (VertexId v : vals)
      for (int i = 0; i <= t; ++i) next.push_back(tw.embed(k, i)(v));
    vals = std::move(next);
  }
  return GridMap{j_grid(n, seed_length(walk)), tw.level(n), std::move(vals)};
}

/// The three families of flatness identities on gamma_n.
inline Verdict verify_flatness(const GridMap& g) {
  const GridSpec& d = g.domain;
  const std::size_t n = d.dim();
  const int ell = d.interval(0).hi;
  for (std::size_t k = 0; k < d.size(); ++k) {
    MultiIndex x = d.point(k);
    if (x[0] == 0) {
      MultiIndex y = x;
      y[0] = ell;
      if (g.at(x) != g.at(y)) return Verdict::fail("first and last axis-1 slabs differ at " + format_index(x));
    }
    for (std::size_t a = 1; a < n; ++a) {
      const int top = static_cast<int>(a) + 3;  // axis a+1 has extent (a+1)+2
      if (x[a] != 0 && x[a] != top) continue;
      MultiIndex y = x;
      std::fill(y.begin(), y.begin() + static_cast<long>(a), 0);
      if (g.at(x) != g.at(y))
        return Verdict::fail("gamma is not flat at " + format_index(x) + " along axis " + std::to_string(a + 1));
    }
  }
  return Verdict::pass();
}

// ---- the onion grid L_n -------------------------------------------------

/// m_1 = n(n+5) - 1 + (l - 5), m_i = (n-i+1)(n+i+4) for i > 1.
inline std::vector<int> onion_extents(int n, int ell = 5) {
  std::vector<int> m;
  for (int i = 1; i <= n; ++i) m.push_back((n - i + 1) * (n + i + 4) - (i == 1 ? 1 : 0));
  m[0] += ell - 5;
  return m;
}

/// x_i^*: x_i - (n+2) clamped to {0, ..., i+2}.
inline int star(int n, int i, int x) { return std::clamp(x - (n + 2), 0, i + 2); }

struct OnionDecomposition {
  int n = 0;
  int ell = 5;
  GridSpec L;
  MultiIndex c;  // M_n = c + J_n
  GridSpec M;
  std::vector<int> shell;  // B_{n,k} index per flat point of L

  int shell_of(const MultiIndex& x) const {
    int k = n + 2;
    for (std::size_t a = 0; a < L.dim(); ++a) k = std::min({k, x[a], L.interval(a).hi - x[a]});
    return k;
  }
  bool in_M(const MultiIndex& x) const { return M.contains(x); }
  bool on_M_boundary(const MultiIndex& x) const { return M.contains(x) && M.on_boundary(x); }
};

inline OnionDecomposition onion(int n, int ell = 5) {
  if (n < 2) throw Error(Errc::InvalidLevel, "the onion grid needs n >= 2");
  OnionDecomposition o;
  o.n = n;
  o.ell = ell;
  o.L = GridSpec::box(onion_extents(n, ell));
  o.c.assign(static_cast<std::size_t>(n), n + 2);
  o.c.back() = 0;
  o.M = j_grid(n, ell).translated(o.c);
  o.shell.resize(o.L.size());
  for (std::size_t k = 0; k < o.L.size(); ++k) o.shell[k] = o.shell_of(o.L.point(k));
  return o;
}

/// J_n point (0, x_2^*, ..., x_{n-1}^*, k) that f_n reads at x.
inline MultiIndex f_source(const OnionDecomposition& o, const MultiIndex& x) {
  MultiIndex y(x.size(), 0);
  for (int i = 2; i < o.n; ++i) y[static_cast<std::size_t>(i - 1)] = star(o.n, i, x[static_cast<std::size_t>(i - 1)]);
  y.back() = o.shell_of(x);
  return y;
}

inline VertexId south_pole(const Tower& tw, int n) {
  if (n < 2) throw Error(Errc::InvalidLevel, "G_1 has no poles");
  return tw.quotients.at(static_cast<std::size_t>(n - 2)).south();
}

inline BasedMap f_map(const Tower& tw, const std::vector<VertexId>& walk, int n) {
  GridMap gm = gamma(tw, walk, n);
  OnionDecomposition o = onion(n, seed_length(walk));
  std::vector<VertexId> vals(o.L.size());
  for (std::size_t k = 0; k < o.L.size(); ++k) vals[k] = gm.at(f_source(o, o.L.point(k)));
  return BasedMap::make(o.L, tw.level(n), south_pole(tw, n), std::move(vals));
}

/// gamma_n(x - c) = f_n(x) on every point of the boundary of M_n.
inline Verdict verify_seam(const GridMap& gm, const BasedMap& f, const OnionDecomposition& o) {
  for (std::size_t k = 0; k < o.M.size(); ++k) {
    if (!o.M.on_boundary(k)) continue;
    MultiIndex x = o.M.point(k);
    MultiIndex y = x;
    for (std::size_t a = 0; a < y.size(); ++a) y[a] -= o.c[a];
    if (gm.at(y) != f.at(x))
      return Verdict::fail("seam mismatch at " + format_index(x) + ": " + f.target.label(gm.at(y)) + " vs " +
                           f.target.label(f.at(x)));
  }
  return Verdict::pass();
}

inline BasedMap g_map(const Tower& tw, const std::vector<VertexId>& walk, int n) {
  GridMap gm = gamma(tw, walk, n);
  BasedMap f = f_map(tw, walk, n);
  OnionDecomposition o = onion(n, seed_length(walk));
  if (auto v = verify_seam(gm, f, o); !v) throw Error(Errc::SeamViolation, v.reason);
  std::vector<VertexId> vals = f.values;
  for (std::size_t k = 0; k < o.M.size(); ++k) {
    MultiIndex x = o.M.point(k);
    MultiIndex y = x;
    for (std::size_t a = 0; a < y.size(); ++a) y[a] -= o.c[a];
    vals[o.L.index(x)] = gm.at(y);
  }
  return BasedMap::make(o.L, tw.level(n), south_pole(tw, n), std::move(vals));
}

// ---- chain identities ---------------------------------------------------

struct SurjectivityCheck {
  bool omega_degenerate = false;  // every f_n^x with x + Q_n in M_n is degenerate along axis 1
  bool identity = false;          // phi(g_n) - phi(f_n) = phi(gamma_n)
  std::size_t phi_f = 0, phi_g = 0, phi_gamma = 0;
};

inline SurjectivityCheck verify_surjectivity_identity(const Tower& tw, const std::vector<VertexId>& walk, int n) {
  SurjectivityCheck out;
  GridMap gm = gamma(tw, walk, n);
  Chain pg = phi(gm);
  out.phi_gamma = pg.size();
  if (n == 1) {
    out.omega_degenerate = out.identity = true;
    return out;
  }
  BasedMap f = f_map(tw, walk, n);
  BasedMap g = g_map(tw, walk, n);
  OnionDecomposition o = onion(n, seed_length(walk));
  out.omega_degenerate = true;
  for (std::size_t k = 0; k < o.M.size() && out.omega_degenerate; ++k) {
    bool inner = true;
    for (std::size_t a = 0; a < o.M.dim(); ++a) inner = inner && o.M.has_next(k, a);
    if (inner && !degenerate_along(cube_at(f, o.M.point(k)), 1)) out.omega_degenerate = false;
  }
  Chain cf = phi(f), cg = phi(g);
  out.phi_f = cf.size();
  out.phi_g = cg.size();
  out.identity = cg - cf == pg;
  return out;
}

struct DeltaCheck {
  bool top_faces_constant = false;  // D_n^+ gamma_n^w constant on the top slab
  bool identity = false;            // d y = (-1)^n phi(iota^1 o gamma_{n-1})
  Chain lhs, rhs;
};

/// y is the sum of gamma_n^u over cubes with 1 <= u_n <= n+1.
inline DeltaCheck verify_delta_sign(const Tower& tw, const std::vector<VertexId>& walk, int n) {
  if (n < 2) throw Error(Errc::InvalidLevel, "the delta identity needs n >= 2");
  DeltaCheck out;
  GridMap gm = gamma(tw, walk, n);
  const GridSpec& d = gm.domain;
  const std::size_t last = d.dim() - 1;
  Chain y(n);
  out.top_faces_constant = true;
  for (std::size_t k = 0; k < d.size(); ++k) {
    bool inner = true;
    for (std::size_t a = 0; a < d.dim(); ++a) inner = inner && d.has_next(k, a);
    if (!inner) continue;
    MultiIndex u = d.point(k);
    if (u[last] < 1) continue;
    Cube c = cube_at(gm, u);
    y.add(c, 1);
    if (u[last] == n + 1) {
      Cube top = face(c, n, +1);
      if (std::adjacent_find(top.v.begin(), top.v.end(), std::not_equal_to<>()) != top.v.end())
        out.top_faces_constant = false;
    }
  }
  out.lhs = boundary(y);
  GridMap prev = gamma(tw, walk, n - 1);
  for (auto& v : prev.values) v = tw.embed(n - 1, 1)(v);
  prev.target = tw.level(n);
  out.rhs = Int(n % 2 == 0 ? 1 : -1) * phi(prev);
  out.identity = out.lhs == out.rhs;
  return out;
}

/// The image of f_n induces a copy of U_n (U_1 a point, U_{k+1} = S_{k+3} U_k);
/// carries a contraction of U_n over to it.
struct ImageContraction {
  Graph image;
  bool isomorphic = false;
  Contraction contraction;
  Verdict verdict;
};

inline ImageContraction image_of_f_is_contractible(const Tower& tw, const std::vector<VertexId>& walk, int n) {
  BasedMap f = f_map(tw, walk, n);
  const Graph& gn = tw.level(n);
  std::vector<VertexId> img(f.values.begin(), f.values.end());
  std::sort(img.begin(), img.end());
  img.erase(std::unique(img.begin(), img.end()), img.end());
  ImageContraction out;
  out.image = gn.induced(img);

  // U_k with its embedding into G_k, built level by level
  Graph u = single_vertex(tw.level(1).label(walk.front()));
  std::vector<VertexId> emb{walk.front()};
  Contraction c = tree_contraction(u, 0);
  for (int k = 1; k < n; ++k) {
    const int t = tower_height(k);
    auto q = suspension(u, t);
    std::vector<VertexId> next(q.result.size());
    for (VertexId v = 0; v < u.size(); ++v)
      for (int i = 0; i <= t; ++i) next[q.lift(v, i)] = tw.embed(k, i)(emb[v]);
    c = suspension_contraction(q, c);
    u = q.result;
    emb = std::move(next);
  }
  // emb must be a bijection onto the image preserving adjacency both ways
  std::vector<VertexId> sorted = emb;
  std::sort(sorted.begin(), sorted.end());
  out.isomorphic = sorted == img && std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  for (VertexId a = 0; a < u.size() && out.isomorphic; ++a)
    for (VertexId b = a + 1; b < u.size(); ++b)
      if (u.adjacent(a, b) != gn.adjacent(emb[a], emb[b])) {
        out.isomorphic = false;
        break;
      }
  if (!out.isomorphic) {
    out.verdict = Verdict::fail("image of f_n is not a copy of U_n");
    return out;
  }
  std::vector<VertexId> to_image(u.size());
  for (VertexId v = 0; v < u.size(); ++v) to_image[v] = out.image.id(gn.label(emb[v]));
  Contraction h{out.image, out.image, std::nullopt, {}};
  for (const auto& s : c.stages) {
    std::vector<VertexId> st(u.size());
    for (VertexId v = 0; v < u.size(); ++v) st[to_image[v]] = to_image[s[v]];
    h.stages.push_back(std::move(st));
  }
  out.contraction = std::move(h);
  out.verdict = verify_contraction(out.contraction);
  return out;
}

// ---- the whole suite ----------------------------------------------------

struct IdentityResult {
  std::string name;
  bool ok = false;
  std::string detail;
};

/// Every identity for one level and seed, in a fixed order.
inline std::vector<IdentityResult> identity_suite(const Tower& tw, const std::vector<VertexId>& walk, int n) {
  std::vector<IdentityResult> r;
  auto add = [&](std::string name, bool ok, std::string detail = {}) { r.push_back({std::move(name), ok, std::move(detail)}); };
  GridMap gm = gamma(tw, walk, n);
  auto gv = check_grid_map(gm);
  add("gamma_graph_map", gv.ok, gv.ok ? "" : gv.describe());
  auto fv = verify_flatness(gm);
  add("flatness", fv.ok, fv.ok ? "" : fv.reason);
  add("gamma_cycle", verify_hurewicz_cycle(gm));
  if (n >= 2) {
    BasedMap f = f_map(tw, walk, n);
    auto fg = check_grid_map(f);
    add("f_graph_map", fg.ok, fg.ok ? "" : fg.describe());
    auto sv = verify_seam(gm, f, onion(n, seed_length(walk)));
    add("seam", sv.ok, sv.ok ? "" : sv.reason);
    BasedMap g = g_map(tw, walk, n);
    auto gg = check_grid_map(g);
    add("g_graph_map", gg.ok, gg.ok ? "" : gg.describe());
  }
  auto s = verify_surjectivity_identity(tw, walk, n);
  add("surjectivity", s.identity && s.omega_degenerate,
      "phi(f) " + std::to_string(s.phi_f) + " cubes, phi(g) " + std::to_string(s.phi_g) + ", phi(gamma) " +
          std::to_string(s.phi_gamma));
  if (n >= 2) {
    auto d = verify_delta_sign(tw, walk, n);
    add("delta_sign", d.identity && d.top_faces_constant);
    auto ic = image_of_f_is_contractible(tw, walk, n);
    add("image_contraction", ic.isomorphic && ic.verdict.ok,
        std::to_string(ic.image.size()) + " vertices, length " + std::to_string(ic.contraction.length()));
  }
  return r;
}

}  // namespace dht
