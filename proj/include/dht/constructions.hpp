#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dht/error.hpp"
#include "dht/graph.hpp"
#include "dht/homotopy.hpp"

namespace dht {

/// Quotient of G x I_p collapsing layer 0 (cone) or layers 0 and p
/// (suspension). Vertex v at layer i is labelled "v_i"; a collapsed layer
/// takes the label of the sentinel vertex.
struct LabeledQuotient {
  enum class Kind { Cone, Suspension };
  Kind kind = Kind::Cone;
  Graph base;
  int param = 0;                     // s or t
  Graph result;
  std::vector<int> layer_of;         // result vertex -> layer
  std::vector<std::vector<VertexId>> lift_table;  // [base vertex][layer]

  VertexId lift(VertexId v, int layer) const { return lift_table.at(v).at(static_cast<std::size_t>(layer)); }
  VertexId south() const { return lift(0, 0); }
  VertexId apex() const { return south(); }
  VertexId north() const { return lift(0, param); }
};

namespace detail {

inline LabeledQuotient build_quotient(const Graph& g, int p, bool collapse_top, std::optional<VertexId> sentinel) {
  const VertexId s = sentinel.value_or(0);
  if (s >= g.size()) throw Error(Errc::UnknownVertex, "sentinel outside the base");
  auto name = [&](VertexId v, int i) { return g.label(v) + "_" + std::to_string(i); };
  auto collapsed = [&](int i) { return i == 0 || (collapse_top && i == p); };
  auto rep = [&](VertexId v, int i) { return collapsed(i) ? name(s, i) : name(v, i); };

  std::vector<std::string> vs;
  std::vector<std::pair<std::string, std::string>> es;
  for (int i = 0; i <= p; ++i) {
    if (collapsed(i)) {
      vs.push_back(name(s, i));
      continue;
    }
    for (VertexId v = 0; v < g.size(); ++v) vs.push_back(name(v, i));
    for (const auto& [u, v] : g.edges()) es.emplace_back(name(u, i), name(v, i));
  }
  for (int i = 0; i < p; ++i) {
    // vertical edges; between a collapsed layer and the next, one per vertex
    if (collapsed(i) && collapsed(i + 1)) {
      es.emplace_back(rep(0, i), rep(0, i + 1));
      continue;
    }
    for (VertexId v = 0; v < g.size(); ++v) es.emplace_back(rep(v, i), rep(v, i + 1));
  }
  LabeledQuotient q;
  q.base = g;
  q.param = p;
  q.result = Graph::from_edges(std::move(vs), es);
  q.layer_of.assign(q.result.size(), 0);
  q.lift_table.assign(g.size(), std::vector<VertexId>(static_cast<std::size_t>(p) + 1));
  for (VertexId v = 0; v < g.size(); ++v)
    for (int i = 0; i <= p; ++i) {
      VertexId x = q.result.id(rep(v, i));
      q.lift_table[v][static_cast<std::size_t>(i)] = x;
      q.layer_of[x] = i;
    }
  return q;
}

}  // namespace detail

/// C_s G: G x I_s with G x {0} collapsed to the apex.
inline LabeledQuotient cone(const Graph& g, int s, std::optional<VertexId> sentinel = std::nullopt) {
  if (s < 1) throw Error(Errc::InvalidParameter, "cone height must be >= 1");
  auto q = detail::build_quotient(g, s, false, sentinel);
  q.kind = LabeledQuotient::Kind::Cone;
  return q;
}

/// S_t G: G x I_t with G x {0} (south pole) and G x {t} (north pole)
/// collapsed.
inline LabeledQuotient suspension(const Graph& g, int t, std::optional<VertexId> sentinel = std::nullopt) {
  if (t < 2) throw Error(Errc::InvalidParameter, "suspension height must be >= 2");
  auto q = detail::build_quotient(g, t, true, sentinel);
  q.kind = LabeledQuotient::Kind::Suspension;
  return q;
}

/// Length-s contraction of a cone to its apex: at stage j every layer above
/// s-j drops to layer s-j.
inline Contraction cone_contraction(const LabeledQuotient& q) {
  if (q.kind != LabeledQuotient::Kind::Cone) throw Error(Errc::ModeMismatch, "not a cone");
  const int s = q.param;
  Contraction c{q.result, q.result, std::nullopt, {}};
  for (int j = 0; j <= s; ++j) {
    std::vector<VertexId> stage(q.result.size());
    for (VertexId v = 0; v < q.base.size(); ++v)
      for (int i = 0; i <= s; ++i) stage[q.lift(v, i)] = i > s - j ? q.lift(v, s - j) : q.lift(v, i);
    c.stages.push_back(std::move(stage));
  }
  return c;
}

/// t = 2 contraction onto the south pole: stage 1 sends the middle layer to
/// the south pole and the north pole to w_1.
inline Contraction suspension_contraction_t2(const LabeledQuotient& q, VertexId w) {
  if (q.kind != LabeledQuotient::Kind::Suspension || q.param != 2)
    throw Error(Errc::ModeMismatch, "t2 mode needs a suspension with t = 2");
  if (w >= q.base.size()) throw Error(Errc::UnknownVertex, "w outside the base");
  const VertexId south = q.south();
  Contraction c{q.result, q.result, std::nullopt, {}};
  std::vector<VertexId> id(q.result.size());
  for (VertexId x = 0; x < id.size(); ++x) id[x] = x;
  c.stages.push_back(id);
  std::vector<VertexId> one(q.result.size(), south);
  one[q.north()] = q.lift(w, 1);
  c.stages.push_back(one);
  c.stages.push_back(std::vector<VertexId>(q.result.size(), south));
  return c;
}

/// Contraction of S_t G of length m + t built from a contraction C of G of
/// length m ending at w: run C inside every layer, then slide w's column
/// down to the south pole.
inline Contraction suspension_contraction(const LabeledQuotient& q, const Contraction& base) {
  if (q.kind != LabeledQuotient::Kind::Suspension) throw Error(Errc::ModeMismatch, "not a suspension");
  auto v = verify_contraction(base);
  if (!v) throw Error(Errc::ModeMismatch, "base contraction invalid: " + v.describe());
  if (!(base.target == q.base)) throw Error(Errc::ModeMismatch, "base contraction is for another graph");
  const int m = static_cast<int>(base.length());
  const int t = q.param;
  const VertexId w = base.stages.back()[0];
  Contraction c{q.result, q.result, std::nullopt, {}};
  for (int j = 0; j <= m + t; ++j) {
    std::vector<VertexId> stage(q.result.size());
    for (VertexId x = 0; x < q.base.size(); ++x)
      for (int i = 0; i <= t; ++i) {
        VertexId img;
        if (j <= m) img = q.lift(base.stages[static_cast<std::size_t>(j)][x], i);
        else img = q.lift(w, std::max(i + m - j, 0));
        stage[q.lift(x, i)] = img;
      }
    c.stages.push_back(std::move(stage));
  }
  return c;
}

// ---- tower -------------------------------------------------------------

/// Canonical name of a tower vertex: base vertex of G_1 plus one subscript
/// per suspension.
struct SuspensionLabel {
  std::string base;
  std::vector<int> subs;

  std::string str() const {
    std::string s = base;
    for (int i : subs) s += "_" + std::to_string(i);
    return s;
  }
  friend bool operator==(const SuspensionLabel&, const SuspensionLabel&) = default;
};

/// Pole absorption: a subscript equal to 0 or to its suspension height
/// forgets the base vertex and all earlier subscripts.
inline SuspensionLabel canonicalize(SuspensionLabel l, const std::string& base0, const std::vector<int>& heights) {
  if (l.subs.size() > heights.size()) throw Error(Errc::InvalidLevel, "too many subscripts");
  for (std::size_t k = l.subs.size(); k-- > 0;) {
    if (l.subs[k] < 0 || l.subs[k] > heights[k]) throw Error(Errc::InvalidLabel, "subscript out of range");
    if (l.subs[k] == 0 || l.subs[k] == heights[k]) {
      l.base = base0;
      for (std::size_t j = 0; j < k; ++j) l.subs[j] = 0;
      break;
    }
  }
  return l;
}

/// Suspension height used to pass from G_k to G_{k+1}.
inline int tower_height(int k) { return k + 3; }

/// G_1, G_2 = S_4 G_1, ..., G_n with the embeddings iota[k][i] : G_k ->
/// G_{k+1} (levels are 1-based in names, 0-based in the vectors).
struct Tower {
  std::vector<Graph> levels;
  std::vector<LabeledQuotient> quotients;          // quotients[k-1] builds G_{k+1}
  std::vector<std::vector<GraphMap>> iota;         // iota[k-1][i]
  std::vector<std::vector<SuspensionLabel>> labels; // labels[k-1][v]

  const Graph& level(int k) const { return levels.at(static_cast<std::size_t>(k - 1)); }
  const GraphMap& embed(int k, int i) const {
    return iota.at(static_cast<std::size_t>(k - 1)).at(static_cast<std::size_t>(i));
  }
  int height() const { return static_cast<int>(levels.size()); }
  std::vector<int> heights(int k) const {
    std::vector<int> h;
    for (int j = 1; j < k; ++j) h.push_back(tower_height(j));
    return h;
  }
  /// Vertex of G_k carrying the canonical form of `l`.
  VertexId find(int k, const SuspensionLabel& l) const {
    auto c = canonicalize(l, levels[0].label(0), heights(k));
    return level(k).id(c.str());
  }
};

/// Suspension tower over `g1` up to level n. Each suspension uses the
/// previous south pole as its sentinel so labels stay canonical.
inline Tower build_tower(const Graph& g1, int n) {
  if (n < 1) throw Error(Errc::InvalidLevel, "tower needs n >= 1");
  Tower tw;
  tw.levels.push_back(g1);
  std::vector<SuspensionLabel> l1;
  for (VertexId v = 0; v < g1.size(); ++v) l1.push_back({g1.label(v), {}});
  tw.labels.push_back(std::move(l1));
  const std::string base0 = g1.label(0);
  VertexId sentinel = 0;
  for (int k = 1; k < n; ++k) {
    const Graph& gk = tw.levels.back();
    const int t = tower_height(k);
    auto q = suspension(gk, t, sentinel);
    std::vector<GraphMap> maps;
    for (int i = 0; i <= t; ++i) {
      std::vector<VertexId> a(gk.size());
      for (VertexId v = 0; v < gk.size(); ++v) a[v] = q.lift(v, i);
      maps.push_back(GraphMap{gk, q.result, std::move(a)});
    }
    std::vector<int> hs = tw.heights(k + 1);
    std::vector<SuspensionLabel> lk(q.result.size());
    for (VertexId v = 0; v < gk.size(); ++v)
      for (int i = 0; i <= t; ++i) {
        SuspensionLabel l = tw.labels.back()[v];
        l.subs.push_back(i);
        lk[q.lift(v, i)] = canonicalize(l, base0, hs);
      }
    for (VertexId x = 0; x < q.result.size(); ++x)
      if (lk[x].str() != q.result.label(x))
        throw Error(Errc::InvalidLabel, "tower label mismatch at " + q.result.label(x));
    sentinel = q.south();
    tw.levels.push_back(q.result);
    tw.iota.push_back(std::move(maps));
    tw.labels.push_back(std::move(lk));
    tw.quotients.push_back(std::move(q));
  }
  return tw;
}

}  // namespace dht
