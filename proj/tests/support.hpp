#pragma once

// Shared random generators for the test suites. All take an explicit
// engine so every test is reproducible from its seed.

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dht/graph.hpp"
#include "dht/grid.hpp"
#include "dht/homotopy.hpp"
#include "dht/tsfree.hpp"

namespace dht::testing {

using Rng = std::mt19937_64;

inline std::vector<std::string> numbered(std::size_t n, const std::string& prefix = "v") {
  std::vector<std::string> vs;
  for (std::size_t i = 0; i < n; ++i) vs.push_back(prefix + std::to_string(i));
  return vs;
}

/// Random labelled tree on n vertices (random attachment).
inline Graph random_tree(Rng& rng, std::size_t n) {
  auto vs = numbered(n);
  std::vector<std::pair<std::string, std::string>> es;
  for (std::size_t i = 1; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    es.emplace_back(vs[pick(rng)], vs[i]);
  }
  return Graph::from_edges(vs, es);
}

/// Random tree plus each remaining pair with probability p.
inline Graph random_connected(Rng& rng, std::size_t n, double p) {
  auto vs = numbered(n);
  std::set<std::pair<std::size_t, std::size_t>> es;
  for (std::size_t i = 1; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    es.emplace(pick(rng), i);
  }
  std::bernoulli_distribution coin(p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!es.count({i, j}) && coin(rng)) es.emplace(i, j);
  std::vector<std::pair<std::string, std::string>> el;
  for (auto [a, b] : es) el.emplace_back(vs[a], vs[b]);
  return Graph::from_edges(vs, el);
}

/// Random connected graph of girth >= 5 that contains at least one cycle:
/// a random tree, then extra edges only between vertices at distance >= 4.
inline Graph random_girth5(Rng& rng, std::size_t n, std::size_t extra) {
  for (;;) {
    Graph t = random_tree(rng, n);
    std::vector<std::pair<std::string, std::string>> el;
    for (auto [a, b] : t.edges()) el.emplace_back(t.label(a), t.label(b));
    Graph g = t;
    std::size_t added = 0;
    for (std::size_t tries = 0; tries < 50 && added < extra; ++tries) {
      std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(n - 1));
      VertexId a = pick(rng), b = pick(rng);
      if (a == b || g.distances_from(a)[b] < 4) continue;
      el.emplace_back(g.label(a), g.label(b));
      g = Graph::from_edges(g.labels(), el);
      ++added;
    }
    if (added > 0) return g;
  }
}

/// Random based map on `box` into g: repeated sweeps that resample each
/// interior value among the vertices compatible with its grid neighbours.
inline BasedMap random_based_map(Rng& rng, const GridSpec& box, const Graph& g, VertexId bp, int sweeps = 6) {
  std::vector<VertexId> vals(box.size(), bp);
  std::vector<std::size_t> interior = grid_boundary_interior(box).interior;
  for (int s = 0; s < sweeps; ++s) {
    std::shuffle(interior.begin(), interior.end(), rng);
    for (std::size_t k : interior) {
      std::vector<VertexId> cand;
      for (VertexId v = 0; v < g.size(); ++v) {
        bool ok = true;
        for (std::size_t a = 0; a < box.dim() && ok; ++a) {
          std::size_t stride = box.stride(a);
          int c = box.coord(k, a);
          if (c > box.interval(a).lo && !g.adjacent_or_equal(vals[k - stride], v)) ok = false;
          if (c < box.interval(a).hi && !g.adjacent_or_equal(vals[k + stride], v)) ok = false;
        }
        if (ok) cand.push_back(v);
      }
      std::uniform_int_distribution<std::size_t> pick(0, cand.size() - 1);
      vals[k] = cand[pick(rng)];
    }
  }
  return BasedMap::make(box, g, bp, std::move(vals));
}

inline Graph z5() { return labeled_cycle({"a", "b", "c", "d", "e"}); }

/// The worked 2-dimensional example into the 5-cycle a..e: radius 4, given
/// on the window [-4,4]^2. Row r of the table is axis-1 coordinate r-4,
/// column c is axis-2 coordinate c-4 (r, c in 1..7).
inline GridMap worked_map() {
  static const char* rows[7] = {"aaabbaa", "aabccba", "abcddcb", "bcdedcb", "bcddcba", "abccbaa", "aabbaaa"};
  Graph g = z5();
  GridSpec w({{-4, 4}, {-4, 4}});
  std::vector<VertexId> vals(w.size(), g.id("a"));
  for (int r = 1; r <= 7; ++r)
    for (int c = 1; c <= 7; ++c) vals[w.index({r - 4, c - 4})] = g.id(std::string(1, rows[r - 1][c - 1]));
  return GridMap{w, g, vals};
}

/// gamma_1 for the 5-cycle as a based map on I_5.
inline BasedMap gamma1_map() {
  Graph g = z5();
  std::vector<VertexId> vals;
  for (const char* s : {"a", "b", "c", "d", "e", "a"}) vals.push_back(g.id(s));
  return BasedMap::make(GridSpec::box({5}), g, g.id("a"), vals);
}

/// Random walk in the box from `start` of the given length.
inline GridPath random_walk(Rng& rng, const GridSpec& box, MultiIndex start, int len) {
  GridPath p{start};
  std::uniform_int_distribution<std::size_t> axis(0, start.size() - 1);
  std::uniform_int_distribution<int> sign(0, 1);
  while (static_cast<int>(p.size()) <= len) {
    MultiIndex y = p.back();
    y[axis(rng)] += sign(rng) ? 1 : -1;
    if (box.contains(y)) p.push_back(y);
  }
  return p;
}

/// Closes a path by walking back to its start along a random monotone route.
inline GridPath close_up(Rng& rng, GridPath p) {
  MultiIndex cur = p.back();
  const MultiIndex s = p.front();
  std::vector<std::size_t> steps;
  for (std::size_t a = 0; a < s.size(); ++a)
    for (int k = 0; k < std::abs(cur[a] - s[a]); ++k) steps.push_back(a);
  std::shuffle(steps.begin(), steps.end(), rng);
  for (std::size_t a : steps) {
    cur[a] += s[a] > cur[a] ? 1 : -1;
    p.push_back(cur);
  }
  if (p.size() == 1) p.push_back(cur);
  return p;
}

inline std::vector<std::size_t> swap_sites(const GridPath& p) {
  std::vector<std::size_t> out;
  for (std::size_t j = 1; j + 1 < p.size(); ++j) {
    int d = 0;
    bool unit = true;
    for (std::size_t i = 0; i < p[j].size(); ++i) {
      d += std::abs(p[j - 1][i] - p[j + 1][i]);
      unit = unit && std::abs(p[j - 1][i] - p[j + 1][i]) <= 1;
    }
    if (d == 2 && unit && p[j - 1] != p[j + 1]) out.push_back(j);
  }
  return out;
}

inline std::vector<std::size_t> backtrack_sites(const GridPath& p) {
  std::vector<std::size_t> out;
  for (std::size_t k = 1; k + 1 < p.size(); ++k)
    if (p[k - 1] == p[k + 1]) out.push_back(k);
  return out;
}

}  // namespace dht::testing
