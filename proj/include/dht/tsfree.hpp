#pragma once

// Nullhomotopies of based maps into graphs without 3- and 4-cycles, by
// lifting through the free group on the oriented edges into a finite tree.

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "dht/free_group.hpp"
#include "dht/homotopy.hpp"

namespace dht {

using GridPath = std::vector<MultiIndex>;

/// f(x) on f's box, the basepoint everywhere else in Z^n.
inline VertexId value_at(const BasedMap& f, const MultiIndex& x) {
  return f.domain.contains(x) ? f.at(x) : f.basepoint;
}

inline bool grid_adjacent_or_equal(const MultiIndex& x, const MultiIndex& y) {
  if (x.size() != y.size()) return false;
  int diff = 0;
  for (std::size_t a = 0; a < x.size(); ++a) diff += std::abs(x[a] - y[a]);
  return diff <= 1;
}

inline FreeWord tau_edge(const BasedMap& f, const MultiIndex& x, const MultiIndex& y, const OrientedEdgeSet& e) {
  if (!grid_adjacent_or_equal(x, y))
    throw Error(Errc::NotAdjacent, format_index(x) + " and " + format_index(y) + " are not adjacent");
  FreeWord w;
  if (int l = e.letter(value_at(f, x), value_at(f, y)); l != 0) w.push(l);
  return w;
}

inline FreeWord tau_path(const BasedMap& f, const GridPath& p, const OrientedEdgeSet& e) {
  if (p.size() < 2) throw Error(Errc::NotAPath, "path needs at least one step");
  FreeWord w;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    if (!grid_adjacent_or_equal(p[i], p[i + 1]))
      throw Error(Errc::NotAPath, "step " + std::to_string(i) + " jumps from " + format_index(p[i]) + " to " +
                                      format_index(p[i + 1]));
    if (int l = e.letter(value_at(f, p[i]), value_at(f, p[i + 1])); l != 0) w.push(l);
  }
  return w;
}

/// Replaces p_j by the fourth corner of the unit square through p_{j-1},
/// p_j, p_{j+1}.
inline GridPath corner_swap(GridPath p, std::size_t j) {
  if (j == 0 || j + 1 >= p.size()) throw Error(Errc::MovePreconditionFailed, "corner swap needs an inner index");
  const MultiIndex &a = p[j - 1], &b = p[j], &c = p[j + 1];
  auto dist = [](const MultiIndex& x, const MultiIndex& y) {
    int d = 0;
    for (std::size_t i = 0; i < x.size(); ++i) d += std::abs(x[i] - y[i]);
    return d;
  };
  bool square = dist(a, b) == 1 && dist(b, c) == 1 && dist(a, c) == 2;
  if (square)
    for (std::size_t i = 0; i < a.size(); ++i)
      if (std::abs(a[i] - c[i]) > 1) square = false;
  if (!square) throw Error(Errc::MovePreconditionFailed, "no unit square at index " + std::to_string(j));
  MultiIndex q(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) q[i] = a[i] + c[i] - b[i];
  p[j] = q;
  return p;
}

/// Deletes p_k and p_{k+1} when p_{k-1} = p_{k+1}.
inline GridPath backtrack_delete(GridPath p, std::size_t k) {
  if (k == 0 || k + 1 >= p.size() || p[k - 1] != p[k + 1])
    throw Error(Errc::MovePreconditionFailed, "no backtrack at index " + std::to_string(k));
  p.erase(p.begin() + static_cast<long>(k), p.begin() + static_cast<long>(k) + 2);
  return p;
}

/// The canonical staircase from the least corner of f's box to x: axis 1
/// first, then axis 2, and so on.
inline GridPath staircase(const GridSpec& box, const MultiIndex& x) {
  MultiIndex cur = box.lower();
  GridPath p{cur};
  for (std::size_t a = 0; a < x.size(); ++a)
    while (cur[a] != x[a]) {
      cur[a] += cur[a] < x[a] ? 1 : -1;
      p.push_back(cur);
    }
  if (p.size() == 1) p.push_back(cur);
  return p;
}

/// Image of the lift in the Cayley graph of the free group, with the
/// projection back to G. Vertex ids follow shortlex order of the words, so
/// the identity word is vertex 0 ("w0").
struct WordTree {
  Graph graph;
  std::vector<FreeWord> words;
  std::vector<VertexId> pi;
  VertexId root = 0;

  GraphMap projection(const Graph& target) const { return GraphMap{graph, target, pi}; }
  std::size_t depth() const { return graph.eccentricity(root); }
};

struct LiftOptions {
  double sample_fraction = 0.05;
  int paths_per_sample = 3;
  std::uint64_t seed = 1;
};

struct Lift {
  BasedMap g;  // into tree.graph, basepoint the identity word
  WordTree tree;
  OrientedEdgeSet edges;
  std::size_t samples_checked = 0;
};

namespace detail {

/// Random path from the least corner to x inside the box: a shuffled
/// monotone staircase with a few random back-and-forth detours.
inline GridPath random_path(const GridSpec& box, const MultiIndex& x, std::mt19937_64& rng) {
  MultiIndex cur = box.lower();
  std::vector<std::size_t> steps;
  for (std::size_t a = 0; a < x.size(); ++a)
    for (int s = cur[a]; s < x[a]; ++s) steps.push_back(a);
  std::shuffle(steps.begin(), steps.end(), rng);
  GridPath p{cur};
  std::bernoulli_distribution detour(0.2);
  std::uniform_int_distribution<std::size_t> axis(0, x.size() - 1);
  for (std::size_t a : steps) {
    if (detour(rng)) {
      MultiIndex d = cur;
      d[axis(rng)] += 1;
      if (box.contains(d)) {
        p.push_back(d);
        p.push_back(cur);
      }
    }
    ++cur[a];
    p.push_back(cur);
  }
  if (p.size() == 1) p.push_back(cur);
  return p;
}

}  // namespace detail

inline Lift lift(const BasedMap& f, const OrientedEdgeSet& e, const LiftOptions& opt = {}) {
  if (f.dim() < 2) throw Error(Errc::InvalidParameter, "the tree lift needs dimension n >= 2");
  if (!girth_at_least_5(f.target)) throw Error(Errc::GirthViolation, "target has a 3- or 4-cycle");
  if (!(e.graph() == f.target)) throw Error(Errc::DomainMismatch, "orientation is for a different graph");
  const GridSpec& box = f.domain;
  std::vector<FreeWord> g(box.size());
  // staircase recursion: g(x) = g(x - e_j) tau(x - e_j, x) with j the last
  // axis where x has left the lower corner
  for (std::size_t k = 0; k < box.size(); ++k) {
    MultiIndex x = box.point(k);
    std::size_t j = x.size();
    for (std::size_t a = x.size(); a-- > 0;)
      if (x[a] > box.interval(a).lo) {
        j = a;
        break;
      }
    if (j == x.size()) continue;
    const std::size_t prev = k - box.stride(j);
    g[k] = g[prev];
    if (int l = e.letter(f.values[prev], f.values[k]); l != 0) g[k].push(l);
  }

  Lift out{BasedMap{}, {}, e, 0};
  std::mt19937_64 rng(opt.seed);
  std::bernoulli_distribution pick(opt.sample_fraction);
  for (std::size_t k = 0; k < box.size(); ++k) {
    if (!pick(rng)) continue;
    MultiIndex x = box.point(k);
    for (int t = 0; t < opt.paths_per_sample; ++t) {
      GridPath p = detail::random_path(box, x, rng);
      if (!(tau_path(f, p, e) == g[k]))
        throw Error(Errc::WellDefinednessViolation, "two paths to " + format_index(x) + " disagree");
    }
    ++out.samples_checked;
  }

  std::vector<FreeWord> words = g;
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  std::map<std::vector<int>, VertexId> id;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < words.size(); ++i) {
    id[words[i].letters()] = static_cast<VertexId>(i);
    labels.push_back("w" + std::to_string(i));
  }
  std::vector<std::pair<std::string, std::string>> es;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (words[i].is_identity()) continue;
    std::vector<int> parent = words[i].letters();
    parent.pop_back();
    if (auto it = id.find(parent); it != id.end()) es.emplace_back(labels[it->second], labels[i]);
  }
  WordTree& tree = out.tree;
  try {
    tree.graph = Graph::from_edges(labels, es);
  } catch (const Error& err) {
    throw Error(Errc::WellDefinednessViolation, std::string("word image is not connected: ") + err.what());
  }
  if (!tree.graph.is_tree()) throw Error(Errc::WellDefinednessViolation, "word image has a cycle");
  if (!words.front().is_identity()) throw Error(Errc::WellDefinednessViolation, "identity word missing from the image");
  tree.words = words;
  tree.root = 0;
  // labels "w<i>" sort naturally, so vertex ids match word indices
  for (std::size_t i = 0; i < words.size(); ++i) {
    auto v = e.walk(f.basepoint, words[i]);
    if (!v) throw Error(Errc::WellDefinednessViolation, "word " + e.str(words[i]) + " is not a walk");
    tree.pi.push_back(*v);
  }
  std::vector<VertexId> gv(box.size());
  for (std::size_t k = 0; k < box.size(); ++k) {
    gv[k] = id.at(g[k].letters());
    if (tree.pi[gv[k]] != f.values[k])
      throw Error(Errc::WellDefinednessViolation, "projection disagrees with f at " + format_index(box.point(k)));
  }
  out.g = BasedMap::make(box, tree.graph, tree.root, std::move(gv));
  return out;
}

inline Lift lift(const BasedMap& f, const LiftOptions& opt = {}) { return lift(f, OrientedEdgeSet(f.target), opt); }

/// Based nullhomotopy of f: lift into the word tree, contract the tree onto
/// the identity word, apply the onion construction, project back to G.
/// Length is twice the depth of the tree.
inline HomotopyCertificate nullhomotopy_tsfree(const BasedMap& f, const LiftOptions& opt = {}) {
  Lift l = lift(f, opt);
  const Graph& t = l.tree.graph;
  Contraction c = tree_contraction(t, l.tree.root, t.eccentricity(l.tree.root));
  HomotopyCertificate h = nullhomotopy_from_contraction(l.g, c);
  h.target = f.target;
  h.basepoint = f.basepoint;
  for (auto& s : h.stages)
    for (auto& v : s) v = l.tree.pi[v];
  return h;
}

}  // namespace dht
