#pragma once

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "dht/error.hpp"
#include "dht/graph.hpp"
#include "dht/grid.hpp"

namespace dht {

/// A vertex function on a grid box, stored by flat index.
struct GridMap {
  GridSpec domain;
  Graph target;
  std::vector<VertexId> values;

  VertexId at(const MultiIndex& x) const { return values[domain.index(x)]; }
  std::size_t dim() const { return domain.dim(); }
};

inline Verdict check_grid_map(const GridSpec& domain, const Graph& target, const std::vector<VertexId>& values) {
  if (values.size() != domain.size()) return Verdict::fail("value count does not match the grid");
  for (VertexId v : values)
    if (v >= target.size()) return Verdict::fail("value outside the target");
  std::optional<Verdict> bad;
  domain.for_each_edge([&](std::size_t a, std::size_t b) {
    if (bad) return;
    if (!target.adjacent_or_equal(values[a], values[b]))
      bad = Verdict::fail("grid edge maps to non-adjacent " + target.label(values[a]) + ", " + target.label(values[b]),
                          {format_index(domain.point(a)), format_index(domain.point(b))});
  });
  return bad ? *bad : Verdict::pass();
}

inline Verdict check_grid_map(const GridMap& f) { return check_grid_map(f.domain, f.target, f.values); }

/// Grid map constant (= basepoint) on the boundary of its box.
struct BasedMap : GridMap {
  VertexId basepoint = 0;

  static BasedMap make(GridSpec domain, Graph target, VertexId basepoint, std::vector<VertexId> values) {
    if (basepoint >= target.size()) throw Error(Errc::UnknownVertex, "basepoint outside the target");
    auto v = check_grid_map(domain, target, values);
    if (!v) throw Error(Errc::NotAGraphMap, v.describe());
    for (std::size_t k = 0; k < domain.size(); ++k)
      if (domain.on_boundary(k) && values[k] != basepoint)
        throw Error(Errc::BasepointMismatch,
                    "boundary point " + format_index(domain.point(k)) + " is not sent to the basepoint");
    BasedMap f;
    f.domain = std::move(domain);
    f.target = std::move(target);
    f.values = std::move(values);
    f.basepoint = basepoint;
    return f;
  }

  static BasedMap constant(GridSpec domain, Graph target, VertexId basepoint) {
    std::vector<VertexId> values(domain.size(), basepoint);
    return make(std::move(domain), std::move(target), basepoint, std::move(values));
  }

  bool is_constant() const {
    return std::all_of(values.begin(), values.end(), [&](VertexId v) { return v == basepoint; });
  }
};

/// Values of f on a larger box, basepoint outside f's domain.
inline std::vector<VertexId> extend_to(const BasedMap& f, const GridSpec& big) {
  std::vector<VertexId> out(big.size(), f.basepoint);
  for (std::size_t k = 0; k < f.domain.size(); ++k) {
    MultiIndex x = f.domain.point(k);
    if (!big.contains(x)) throw Error(Errc::DomainMismatch, "map does not fit in the requested box");
    out[big.index(x)] = f.values[k];
  }
  return out;
}

/// Stage list h_0..h_m of vertex functions on a common domain. Domain
/// points are vertex ids for a Graph domain, flat indices for a grid.
struct HomotopyCertificate {
  std::variant<Graph, GridSpec> domain;
  Graph target;
  std::optional<VertexId> basepoint;
  std::vector<std::vector<VertexId>> stages;

  std::size_t length() const { return stages.empty() ? 0 : stages.size() - 1; }

  bool grid_domain() const { return std::holds_alternative<GridSpec>(domain); }
  const GridSpec& grid() const { return std::get<GridSpec>(domain); }
  const Graph& graph() const { return std::get<Graph>(domain); }

  std::size_t domain_size() const {
    return grid_domain() ? grid().size() : graph().size();
  }

  std::string point_label(std::size_t p) const {
    return grid_domain() ? format_index(grid().point(p)) : graph().label(static_cast<VertexId>(p));
  }

  template <class Fn>
  void for_each_domain_edge(Fn&& fn) const {
    if (grid_domain()) {
      grid().for_each_edge(fn);
    } else {
      for (const auto& [u, v] : graph().edges()) fn(std::size_t{u}, std::size_t{v});
    }
  }
};

using Contraction = HomotopyCertificate;

/// Stage-by-stage check of the Cartesian homotopy condition: every stage is
/// a graph map and h_i(u) ≃ h_{i+1}(u) for every domain point u. Optional
/// endpoints are compared against h_0 and h_m.
inline Verdict verify_homotopy(const HomotopyCertificate& h,
                               const std::vector<VertexId>* f = nullptr,
                               const std::vector<VertexId>* g = nullptr) {
  if (h.stages.empty()) return Verdict::fail("certificate has no stages");
  const std::size_t n = h.domain_size();
  for (std::size_t i = 0; i < h.stages.size(); ++i) {
    if (h.stages[i].size() != n) throw Error(Errc::DomainMismatch, "stage " + std::to_string(i) + " has wrong size");
    for (VertexId v : h.stages[i])
      if (v >= h.target.size()) throw Error(Errc::DomainMismatch, "stage value outside the target");
  }
  for (std::size_t i = 0; i < h.stages.size(); ++i) {
    const auto& s = h.stages[i];
    std::optional<Verdict> bad;
    h.for_each_domain_edge([&](std::size_t a, std::size_t b) {
      if (bad) return;
      if (!h.target.adjacent_or_equal(s[a], s[b]))
        bad = Verdict::fail("stage is not a graph map", {h.point_label(a), h.point_label(b)}, i);
    });
    if (bad) return *bad;
    if (i + 1 < h.stages.size()) {
      const auto& t = h.stages[i + 1];
      for (std::size_t p = 0; p < n; ++p)
        if (!h.target.adjacent_or_equal(s[p], t[p]))
          return Verdict::fail("consecutive stages move " + h.point_label(p) + " from " + h.target.label(s[p]) +
                                   " to non-adjacent " + h.target.label(t[p]),
                               {h.target.label(s[p]), h.target.label(t[p])}, i);
    }
  }
  if (f && *f != h.stages.front()) return Verdict::fail("first stage differs from the expected start");
  if (g && *g != h.stages.back()) return Verdict::fail("last stage differs from the expected end");
  return Verdict::pass();
}

/// verify_homotopy plus: grid domain, every stage sends the grid boundary to
/// the basepoint.
inline Verdict verify_based(const HomotopyCertificate& h,
                            const std::vector<VertexId>* f = nullptr,
                            const std::vector<VertexId>* g = nullptr) {
  if (!h.grid_domain()) return Verdict::fail("based certificate needs a grid domain");
  if (!h.basepoint) return Verdict::fail("based certificate has no basepoint");
  auto v = verify_homotopy(h, f, g);
  if (!v) return v;
  const GridSpec& d = h.grid();
  for (std::size_t i = 0; i < h.stages.size(); ++i)
    for (std::size_t k = 0; k < d.size(); ++k)
      if (d.on_boundary(k) && h.stages[i][k] != *h.basepoint) {
        Verdict out = Verdict::fail("boundary point " + format_index(d.point(k)) + " leaves the basepoint");
        out.stage = i;
        return out;
      }
  return Verdict::pass();
}

inline bool is_constant_stage(const std::vector<VertexId>& s) {
  return std::adjacent_find(s.begin(), s.end(), std::not_equal_to<>()) == s.end();
}

/// verify_homotopy plus: graph domain equal to the target, h_0 the
/// identity, h_m constant.
inline Verdict verify_contraction(const Contraction& c) {
  if (c.grid_domain()) return Verdict::fail("contraction needs a graph domain");
  if (!(c.graph() == c.target)) return Verdict::fail("contraction domain differs from its target");
  auto v = verify_homotopy(c);
  if (!v) return v;
  for (std::size_t p = 0; p < c.stages.front().size(); ++p)
    if (c.stages.front()[p] != p) return Verdict::fail("NotIdentityStart: first stage is not the identity");
  if (!is_constant_stage(c.stages.back())) return Verdict::fail("NotConstantEnd: last stage is not constant");
  return Verdict::pass();
}

/// Certificate with all m+1 stages equal to `f`.
inline HomotopyCertificate constant_homotopy(const BasedMap& f, std::size_t m) {
  HomotopyCertificate h{f.domain, f.target, f.basepoint, {}};
  h.stages.assign(m + 1, f.values);
  return h;
}

// ---- constructive contractions -----------------------------------------

/// Retraction of a grid onto its lower corner, one axis at a time: axis 1
/// slides down by one per stage, then axis 2, and so on. In one dimension
/// this is c(v, i) = max(v - i, a). Length is the sum of the side lengths,
/// the graph distance from the far corner to the lower one.
inline Contraction grid_contraction(const GridSpec& spec) {
  Graph g = grid_graph(spec);
  auto ids = grid_vertex_ids(spec, g);
  Contraction c{g, g, std::nullopt, {}};
  std::vector<VertexId> stage(g.size());
  for (std::size_t k = 0; k < spec.size(); ++k) stage[ids[k]] = ids[k];
  c.stages.push_back(stage);
  std::vector<MultiIndex> pos(spec.size());
  for (std::size_t k = 0; k < spec.size(); ++k) pos[k] = spec.point(k);
  for (std::size_t a = 0; a < spec.dim(); ++a)
    for (int step = 0; step < spec.interval(a).length(); ++step) {
      for (std::size_t k = 0; k < spec.size(); ++k) {
        pos[k][a] = std::max(pos[k][a] - 1, spec.interval(a).lo);
        stage[ids[k]] = ids[spec.index(pos[k])];
      }
      c.stages.push_back(stage);
    }
  return c;
}

/// The simultaneous formula max(v_a - i, a_lo) on every axis at once, kept
/// for comparison: for n >= 2 consecutive stages move points diagonally, so
/// it is not a homotopy.
inline std::vector<VertexId> simultaneous_grid_stage(const GridSpec& spec, const Graph& g, int i) {
  auto ids = grid_vertex_ids(spec, g);
  std::vector<VertexId> stage(g.size());
  for (std::size_t k = 0; k < spec.size(); ++k) {
    MultiIndex x = spec.point(k);
    for (std::size_t a = 0; a < x.size(); ++a) x[a] = std::max(x[a] - i, spec.interval(a).lo);
    stage[ids[k]] = ids[spec.index(x)];
  }
  return stage;
}

/// Parent map of a BFS tree rooted at `root` (root maps to itself).
inline std::vector<VertexId> parent_map(const Graph& t, VertexId root) {
  std::vector<VertexId> parent(t.size(), root);
  std::vector<bool> seen(t.size(), false);
  std::deque<VertexId> q{root};
  seen[root] = true;
  while (!q.empty()) {
    VertexId u = q.front();
    q.pop_front();
    for (VertexId w : t.neighbors(u))
      if (!seen[w]) {
        seen[w] = true;
        parent[w] = u;
        q.push_back(w);
      }
  }
  return parent;
}

/// Iterates the parent map toward `root`. The default length is the
/// diameter; any length at least the eccentricity of the root works.
inline Contraction tree_contraction(const Graph& t, VertexId root, std::optional<std::size_t> length = std::nullopt) {
  if (!t.is_tree()) throw Error(Errc::NotATree, "graph has a cycle");
  if (root >= t.size()) throw Error(Errc::UnknownVertex, "root outside the tree");
  const std::size_t ecc = t.eccentricity(root);
  const std::size_t m = length.value_or(t.diameter());
  if (m < ecc) throw Error(Errc::InvalidParameter, "length below the eccentricity of the root");
  auto rho = parent_map(t, root);
  Contraction c{t, t, std::nullopt, {}};
  std::vector<VertexId> stage(t.size());
  for (VertexId v = 0; v < t.size(); ++v) stage[v] = v;
  c.stages.push_back(stage);
  for (std::size_t i = 1; i <= m; ++i) {
    for (auto& v : stage) v = rho[v];
    c.stages.push_back(stage);
  }
  return c;
}

// ---- radius normalization ----------------------------------------------

struct NormalizedMap {
  BasedMap map;              // on I_{2r}^n
  HomotopyCertificate shift; // on [-r, 2r]^n, from f to map
};

/// f is given on an arbitrary window of Z^n and taken to be the basepoint
/// outside it; it must be the basepoint wherever some |x_i| >= r. Returns
/// g(y) = f(y - r) on I_{2r}^n together with a based homotopy on [-r,2r]^n
/// that translates by one unit along one axis per stage (n*r stages).
inline NormalizedMap normalize_radius(const GridMap& f, int r, VertexId basepoint) {
  if (r < 1) throw Error(Errc::InvalidParameter, "radius must be >= 1");
  if (basepoint >= f.target.size()) throw Error(Errc::UnknownVertex, "basepoint outside the target");
  auto gv = check_grid_map(f);
  if (!gv) throw Error(Errc::NotAGraphMap, gv.describe());
  const std::size_t n = f.dim();
  for (std::size_t k = 0; k < f.domain.size(); ++k) {
    MultiIndex x = f.domain.point(k);
    bool far = std::any_of(x.begin(), x.end(), [&](int c) { return std::abs(c) >= r; });
    if (far && f.values[k] != basepoint)
      throw Error(Errc::RadiusViolation, "value at " + format_index(x) + " is not the basepoint");
  }
  // window values on the support box [-r, r]^n
  GridSpec support(std::vector<Interval>(n, Interval{-r, r}));
  auto F = [&](const MultiIndex& x) -> VertexId {
    if (!support.contains(x) || !f.domain.contains(x)) return basepoint;
    return f.at(x);
  };
  GridSpec wide(std::vector<Interval>(n, Interval{-r, 2 * r}));
  HomotopyCertificate h{wide, f.target, basepoint, {}};
  MultiIndex d(n, 0);
  auto emit = [&] {
    std::vector<VertexId> s(wide.size());
    for (std::size_t k = 0; k < wide.size(); ++k) {
      MultiIndex x = wide.point(k);
      for (std::size_t a = 0; a < n; ++a) x[a] -= d[a];
      s[k] = F(x);
    }
    h.stages.push_back(std::move(s));
  };
  emit();
  for (std::size_t a = 0; a < n; ++a)
    for (int j = 1; j <= r; ++j) {
      d[a] = j;
      emit();
    }
  GridSpec out_box = GridSpec::cube(n, 2 * r);
  std::vector<VertexId> vals(out_box.size());
  for (std::size_t k = 0; k < out_box.size(); ++k) {
    MultiIndex y = out_box.point(k);
    for (auto& c : y) c -= r;
    vals[k] = F(y);
  }
  return {BasedMap::make(out_box, f.target, basepoint, std::move(vals)), std::move(h)};
}

// ---- onion nullhomotopy ------------------------------------------------

/// Chebyshev distance from x to the box (0 inside).
inline int box_distance(const GridSpec& box, const MultiIndex& x) {
  int k = 0;
  for (std::size_t a = 0; a < box.dim(); ++a) {
    const auto& iv = box.interval(a);
    if (x[a] < iv.lo) k = std::max(k, iv.lo - x[a]);
    if (x[a] > iv.hi) k = std::max(k, x[a] - iv.hi);
  }
  return k;
}

/// Based nullhomotopy of f of length exactly 2m from a contraction of its
/// target of length m. Runs on f's box widened by m on every side; shell k
/// is the set of points at Chebyshev distance k from f's box.
inline HomotopyCertificate nullhomotopy_from_contraction(const BasedMap& f, const Contraction& c) {
  auto cv = verify_contraction(c);
  if (!cv) throw Error(Errc::InvalidContraction, cv.describe());
  if (!(c.target == f.target)) throw Error(Errc::InvalidContraction, "contraction is for a different graph");
  const int m = static_cast<int>(c.length());
  const VertexId v0 = f.basepoint;
  GridSpec window = f.domain.expanded(m);
  HomotopyCertificate h{window, f.target, v0, {}};
  if (f.is_constant()) {
    h.stages.assign(2 * m + 1, std::vector<VertexId>(window.size(), v0));
    return h;
  }
  std::vector<int> shell(window.size());
  std::vector<VertexId> inner(window.size(), v0);
  for (std::size_t k = 0; k < window.size(); ++k) {
    MultiIndex x = window.point(k);
    shell[k] = box_distance(f.domain, x);
    if (shell[k] == 0) inner[k] = f.at(x);
  }
  auto C = [&](VertexId v, int i) { return c.stages[static_cast<std::size_t>(i)][v]; };
  for (int i = 0; i <= m; ++i) {
    std::vector<VertexId> s(window.size());
    for (std::size_t k = 0; k < window.size(); ++k) {
      const int sk = shell[k];
      if (sk == 0) s[k] = C(inner[k], i);
      else s[k] = i >= sk ? C(v0, i - sk) : v0;
    }
    h.stages.push_back(std::move(s));
  }
  for (int j = 1; j <= m; ++j) {
    std::vector<VertexId> s(window.size());
    for (std::size_t k = 0; k < window.size(); ++k) {
      const int sk = shell[k];
      if (sk <= j) s[k] = C(v0, m - j);
      else s[k] = sk <= m ? C(v0, m - sk) : v0;
    }
    h.stages.push_back(std::move(s));
  }
  return h;
}

// ---- group operation ---------------------------------------------------

/// Translates f so its box starts at the origin.
inline BasedMap to_origin(const BasedMap& f) {
  MultiIndex lo = f.domain.lower();
  for (auto& c : lo) c = -c;
  BasedMap g = f;
  g.domain = f.domain.translated(lo);
  return g;
}

/// Representative of [f]·[g]: f on the left block, g placed after it along
/// axis 1 (sharing one basepoint column), basepoint elsewhere.
inline BasedMap concatenate(const BasedMap& f0, const BasedMap& g0) {
  if (f0.dim() != g0.dim()) throw Error(Errc::DimensionMismatch, "maps have different dimensions");
  if (!(f0.target == g0.target)) throw Error(Errc::DomainMismatch, "maps have different targets");
  if (f0.basepoint != g0.basepoint) throw Error(Errc::BasepointMismatch, "maps have different basepoints");
  BasedMap f = to_origin(f0), g = to_origin(g0);
  const std::size_t n = f.dim();
  std::vector<int> ext(n);
  const int a1 = f.domain.interval(0).hi;
  ext[0] = a1 + g.domain.interval(0).hi;
  for (std::size_t a = 1; a < n; ++a) ext[a] = std::max(f.domain.interval(a).hi, g.domain.interval(a).hi);
  GridSpec box = GridSpec::box(ext);
  std::vector<VertexId> vals(box.size(), f.basepoint);
  for (std::size_t k = 0; k < f.domain.size(); ++k) vals[box.index(f.domain.point(k))] = f.values[k];
  for (std::size_t k = 0; k < g.domain.size(); ++k) {
    MultiIndex x = g.domain.point(k);
    x[0] += a1;
    VertexId v = g.values[k];
    if (v != g.basepoint) vals[box.index(x)] = v;
  }
  return BasedMap::make(box, f.target, f.basepoint, std::move(vals));
}

/// Smallest origin box carrying the non-basepoint values with a one-point
/// basepoint margin. Constant maps trim to I_0^n.
inline BasedMap trim(const BasedMap& f) {
  const std::size_t n = f.dim();
  MultiIndex lo(n, 0), hi(n, 0);
  bool any = false;
  for (std::size_t k = 0; k < f.domain.size(); ++k) {
    if (f.values[k] == f.basepoint) continue;
    MultiIndex x = f.domain.point(k);
    if (!any) {
      lo = hi = x;
      any = true;
    }
    for (std::size_t a = 0; a < n; ++a) {
      lo[a] = std::min(lo[a], x[a]);
      hi[a] = std::max(hi[a], x[a]);
    }
  }
  if (!any) return BasedMap::constant(GridSpec::cube(n, 0), f.target, f.basepoint);
  std::vector<int> ext(n);
  for (std::size_t a = 0; a < n; ++a) ext[a] = hi[a] - lo[a] + 2;
  GridSpec box = GridSpec::box(ext);
  std::vector<VertexId> vals(box.size(), f.basepoint);
  for (std::size_t k = 0; k < box.size(); ++k) {
    MultiIndex x = box.point(k);
    for (std::size_t a = 0; a < n; ++a) x[a] += lo[a] - 1;
    if (f.domain.contains(x)) vals[k] = f.at(x);
  }
  return BasedMap::make(box, f.target, f.basepoint, std::move(vals));
}

// ---- brute-force oracle ------------------------------------------------

struct ContractibilityResult {
  enum class Status { Contractible, NotContractible, Unknown };
  Status status = Status::Unknown;
  std::optional<Contraction> witness;
  std::size_t explored = 0;  // reachable self-maps visited
  std::string note;
};

inline const char* status_name(ContractibilityResult::Status s) {
  switch (s) {
    case ContractibilityResult::Status::Contractible: return "contractible";
    case ContractibilityResult::Status::NotContractible: return "not-contractible";
    case ContractibilityResult::Status::Unknown: return "unknown";
  }
  return "unknown";
}

/// Breadth-first search over self-maps of G reachable from the identity by
/// one-step homotopies (f' a graph map with f(u) ≃ f'(u) for all u). With
/// `fixed` set, every map must fix that vertex and the goal is the constant
/// map there (a deformation retraction onto it).
inline ContractibilityResult brute_force_contractibility(const Graph& g, std::size_t vertex_cap = 9,
                                                         std::optional<VertexId> fixed = std::nullopt,
                                                         std::size_t state_cap = 20'000'000) {
  using Status = ContractibilityResult::Status;
  ContractibilityResult res;
  const std::size_t n = g.size();
  if (n > vertex_cap) {
    res.note = "CapExceeded: graph has " + std::to_string(n) + " vertices, cap " + std::to_string(vertex_cap);
    return res;
  }
  using State = std::vector<VertexId>;
  auto key = [](const State& s) { return std::string(s.begin(), s.end()); };  // n <= 255
  std::vector<State> states;
  std::vector<std::size_t> parent;
  std::unordered_map<std::string, std::size_t> seen;
  State id(n);
  for (VertexId v = 0; v < n; ++v) id[v] = v;
  states.push_back(id);
  parent.push_back(0);
  seen.emplace(key(id), 0);

  auto is_goal = [&](const State& s) {
    if (!is_constant_stage(s)) return false;
    return !fixed || s[0] == *fixed;
  };
  auto finish = [&](std::size_t at) {
    std::vector<State> path;
    for (std::size_t p = at;; p = parent[p]) {
      path.push_back(states[p]);
      if (p == 0) break;
    }
    std::reverse(path.begin(), path.end());
    Contraction c{g, g, fixed, std::move(path)};
    res.status = Status::Contractible;
    res.witness = std::move(c);
    res.explored = states.size();
  };
  if (is_goal(id)) {
    finish(0);
    return res;
  }

  State next(n);
  bool stop = false;
  for (std::size_t head = 0; head < states.size() && !stop; ++head) {
    const State cur = states[head];
    std::vector<std::vector<VertexId>> cand(n);
    for (VertexId u = 0; u < n; ++u) {
      if (fixed && u == *fixed) {
        cand[u] = {*fixed};
        continue;
      }
      cand[u].push_back(cur[u]);
      for (VertexId w : g.neighbors(cur[u])) cand[u].push_back(w);
      std::sort(cand[u].begin(), cand[u].end());
    }
    // successors in lexicographic order, pruned against earlier neighbours
    auto extend = [&](auto&& self, VertexId u) -> void {
      if (stop) return;
      if (u == n) {
        auto [it, inserted] = seen.emplace(key(next), states.size());
        if (!inserted) return;
        states.push_back(next);
        parent.push_back(head);
        if (is_goal(next)) {
          finish(states.size() - 1);
          stop = true;
        } else if (states.size() > state_cap) {
          res.note = "BudgetExceeded: more than " + std::to_string(state_cap) + " states";
          res.explored = states.size();
          stop = true;
        }
        return;
      }
      for (VertexId v : cand[u]) {
        bool ok = true;
        for (VertexId w : g.neighbors(u))
          if (w < u && !g.adjacent_or_equal(next[w], v)) {
            ok = false;
            break;
          }
        if (!ok) continue;
        next[u] = v;
        self(self, u + 1);
        if (stop) return;
      }
    };
    extend(extend, 0);
  }
  if (stop) return res;
  res.status = Status::NotContractible;
  res.explored = states.size();
  res.note = "exhausted " + std::to_string(states.size()) + " reachable self-maps without a constant one";
  return res;
}

}  // namespace dht
