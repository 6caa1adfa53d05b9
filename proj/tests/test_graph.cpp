#include <gtest/gtest.h>

#include <map>
#include <random>

#include "dht/graph.hpp"
#include "dht/grid.hpp"
#include "support.hpp"

using namespace dht;
using dht::testing::Rng;

namespace {

// Independent girth oracle: look for a 3- or 4-cycle among all vertex
// subsets of that size.
bool has_short_cycle(const Graph& g) {
  const VertexId n = static_cast<VertexId>(g.size());
  for (VertexId a = 0; a < n; ++a)
    for (VertexId b = a + 1; b < n; ++b)
      for (VertexId c = b + 1; c < n; ++c) {
        if (g.adjacent(a, b) && g.adjacent(b, c) && g.adjacent(a, c)) return true;
        for (VertexId d = c + 1; d < n; ++d) {
          auto cyc = [&](VertexId p, VertexId q, VertexId r, VertexId s) {
            return g.adjacent(p, q) && g.adjacent(q, r) && g.adjacent(r, s) && g.adjacent(s, p);
          };
          if (cyc(a, b, c, d) || cyc(a, b, d, c) || cyc(a, c, b, d)) return true;
        }
      }
  return false;
}

std::vector<VertexId> random_graph_map(Rng& rng, const Graph& src, const Graph& dst) {
  std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(dst.size() - 1));
  for (;;) {
    std::vector<VertexId> f(src.size());
    std::vector<bool> set(src.size(), false);
    bool ok = true;
    auto order = src.distances_from(0);
    std::vector<VertexId> vs(src.size());
    for (VertexId v = 0; v < vs.size(); ++v) vs[v] = v;
    std::sort(vs.begin(), vs.end(), [&](VertexId a, VertexId b) { return order[a] < order[b]; });
    for (VertexId u : vs) {
      std::vector<VertexId> cand;
      for (VertexId x = 0; x < dst.size(); ++x) {
        bool fits = true;
        for (VertexId w : src.neighbors(u))
          if (set[w] && !dst.adjacent_or_equal(f[w], x)) fits = false;
        if (fits) cand.push_back(x);
      }
      if (cand.empty()) {
        ok = false;
        break;
      }
      std::uniform_int_distribution<std::size_t> pc(0, cand.size() - 1);
      f[u] = cand[pc(rng)];
      set[u] = true;
    }
    (void)pick;
    if (ok) return f;
  }
}

}  // namespace

TEST(NaturalOrder, DigitRunsCompareNumerically) {
  EXPECT_TRUE(natural_less("2", "10"));
  EXPECT_FALSE(natural_less("10", "2"));
  EXPECT_TRUE(natural_less("a_2", "a_10"));
  EXPECT_TRUE(natural_less("(0,2)", "(0,10)"));
  EXPECT_TRUE(natural_less("a", "b"));
  EXPECT_TRUE(natural_less("a", "a_0"));
  EXPECT_FALSE(natural_less("x", "x"));
  EXPECT_TRUE(natural_less("01", "001") != natural_less("001", "01"));
}

TEST(Graph, IdentityOnZ5IsGraphMap) {
  Graph z = cycle_graph(5);
  std::vector<VertexId> id{0, 1, 2, 3, 4};
  EXPECT_TRUE(is_graph_map(id, z, z).ok);
}

TEST(Graph, Gamma1RowIsGraphMap) {
  Graph z = dht::testing::z5();
  Graph p = path_graph(5);
  std::map<std::string, std::string> f{{"0", "a"}, {"1", "b"}, {"2", "c"}, {"3", "d"}, {"4", "e"}, {"5", "a"}};
  EXPECT_TRUE(is_graph_map(f, p, z).ok);
}

TEST(Graph, NonAdjacentImageGivesWitness) {
  Graph z = dht::testing::z5();
  Graph p = path_graph(1);
  std::map<std::string, std::string> f{{"0", "a"}, {"1", "c"}};
  // a and c are at distance 2 on the 5-cycle
  ASSERT_FALSE(z.adjacent(z.id("a"), z.id("c")));
  auto v = is_graph_map(f, p, z);
  EXPECT_FALSE(v.ok);
  ASSERT_TRUE(v.edge.has_value());
  EXPECT_EQ(v.edge->first, "0");
  EXPECT_EQ(v.edge->second, "1");
}

TEST(Graph, UnknownLabelInMapThrows) {
  Graph z = dht::testing::z5();
  Graph p = path_graph(1);
  std::map<std::string, std::string> f{{"0", "a"}, {"1", "zz"}};
  try {
    (void)is_graph_map(f, p, z);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::UnknownVertex);
  }
  std::map<std::string, std::string> g{{"0", "a"}, {"7", "a"}};
  EXPECT_THROW((void)is_graph_map(g, p, z), Error);
}

TEST(Graph, StandardFamilies) {
  Graph c = cycle_graph(5);
  EXPECT_EQ(c.size(), 5u);
  EXPECT_EQ(c.edge_count(), 5u);
  Graph p = path_graph(5);
  EXPECT_EQ(p.size(), 6u);
  EXPECT_EQ(p.edge_count(), 5u);
  EXPECT_EQ(p.label(0), "0");
  EXPECT_EQ(p.label(5), "5");
  Graph grid = grid_graph(GridSpec({{0, 13}, {0, 8}}));
  EXPECT_EQ(grid.size(), 14u * 9u);
  EXPECT_TRUE(grid.find("(13,8)").has_value());
  Graph t = tree_graph({{"r", "x"}, {"r", "y"}, {"y", "z"}});
  EXPECT_EQ(t.size(), 4u);
  EXPECT_TRUE(t.is_tree());
}

TEST(Graph, ConstructionErrors) {
  auto code = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::ParseError;
  };
  EXPECT_EQ(code([] { cycle_graph(2); }), Errc::InvalidSize);
  EXPECT_EQ(code([] { tree_graph({{"a", "b"}, {"b", "c"}, {"c", "a"}}); }), Errc::NotATree);
  EXPECT_EQ(code([] { tree_graph({{"a", "b"}, {"c", "d"}}); }), Errc::NotATree);
  EXPECT_EQ(code([] { Graph::from_edges({"a", "b"}, {}); }), Errc::Disconnected);
  EXPECT_EQ(code([] { Graph::from_edges({"a", "b"}, {{"a", "b"}, {"b", "a"}}); }), Errc::DuplicateEdge);
  EXPECT_EQ(code([] { Graph::from_edges({"a"}, {{"a", "a"}}); }), Errc::SelfLoop);
  EXPECT_EQ(code([] { Graph::from_edges({"a", "a"}, {}); }), Errc::DuplicateVertex);
  EXPECT_EQ(code([] { Graph::from_edges({"a", "b"}, {{"a", "q"}}); }), Errc::UnknownVertex);
  EXPECT_EQ(code([] { Graph::from_edges({"a b"}, {}); }), Errc::InvalidLabel);
}

TEST(Product, SquareIsFourCycle) {
  Graph q = cartesian_product(path_graph(1), path_graph(1));
  EXPECT_EQ(q.size(), 4u);
  EXPECT_EQ(q.edge_count(), 4u);
  for (VertexId v = 0; v < 4; ++v) EXPECT_EQ(q.degree(v), 2u);
}

TEST(Product, EdgeCountOracle) {
  Rng rng(11);
  std::vector<std::pair<Graph, Graph>> cases{{cycle_graph(5), path_graph(2)}};
  for (int i = 0; i < 10; ++i)
    cases.emplace_back(dht::testing::random_connected(rng, 2 + i % 4, 0.4),
                       dht::testing::random_connected(rng, 1 + i % 5, 0.5));
  for (const auto& [g, h] : cases) {
    Graph p = cartesian_product(g, h);
    EXPECT_EQ(p.size(), g.size() * h.size());
    EXPECT_EQ(p.edge_count(), g.size() * h.edge_count() + g.edge_count() * h.size());
  }
  Graph z = cartesian_product(cycle_graph(5), path_graph(2));
  EXPECT_EQ(z.size(), 15u);
  EXPECT_EQ(z.edge_count(), 25u);
}

TEST(Product, TimesPointIsIsomorphic) {
  Graph g = dht::testing::z5();
  Graph p = cartesian_product(g, path_graph(0));
  ASSERT_EQ(p.size(), g.size());
  for (const auto& [u, v] : g.edges())
    EXPECT_TRUE(p.adjacent(p.id("(" + g.label(u) + ",0)"), p.id("(" + g.label(v) + ",0)")));
  EXPECT_EQ(p.edge_count(), g.edge_count());
}

TEST(Product, CommutativeAndAssociativeUpToRelabel) {
  Rng rng(5);
  for (int i = 0; i < 5; ++i) {
    Graph a = dht::testing::random_connected(rng, 3, 0.5);
    Graph b = dht::testing::random_connected(rng, 3, 0.5);
    Graph c = path_graph(1);
    Graph ab = cartesian_product(a, b), ba = cartesian_product(b, a);
    for (VertexId u = 0; u < a.size(); ++u)
      for (VertexId x = 0; x < b.size(); ++x)
        for (VertexId v = 0; v < a.size(); ++v)
          for (VertexId y = 0; y < b.size(); ++y) {
            auto l1 = [&](VertexId p, VertexId q) { return "(" + a.label(p) + "," + b.label(q) + ")"; };
            auto l2 = [&](VertexId p, VertexId q) { return "(" + b.label(q) + "," + a.label(p) + ")"; };
            EXPECT_EQ(ab.adjacent(ab.id(l1(u, x)), ab.id(l1(v, y))), ba.adjacent(ba.id(l2(u, x)), ba.id(l2(v, y))));
          }
    Graph left = cartesian_product(ab, c), right = cartesian_product(a, cartesian_product(b, c));
    ASSERT_EQ(left.size(), right.size());
    EXPECT_EQ(left.edge_count(), right.edge_count());
    for (VertexId u = 0; u < a.size(); ++u)
      for (VertexId x = 0; x < b.size(); ++x)
        for (VertexId z = 0; z < c.size(); ++z)
          for (VertexId w = 0; w < c.size(); ++w) {
            auto L = [&](VertexId q) { return "((" + a.label(u) + "," + b.label(x) + ")," + c.label(q) + ")"; };
            auto R = [&](VertexId q) { return "(" + a.label(u) + ",(" + b.label(x) + "," + c.label(q) + "))"; };
            EXPECT_EQ(left.adjacent(left.id(L(z)), left.id(L(w))), right.adjacent(right.id(R(z)), right.id(R(w))));
          }
  }
}

TEST(Grid, BoundaryInterior) {
  auto bi = grid_boundary_interior(GridSpec::box({2, 2}));
  EXPECT_EQ(bi.boundary.size(), 8u);
  EXPECT_EQ(bi.interior.size(), 1u);
  auto one = grid_boundary_interior(GridSpec::box({1}));
  EXPECT_EQ(one.boundary.size(), 2u);
  EXPECT_TRUE(one.interior.empty());
  GridSpec big({{0, 13}, {0, 8}});
  auto b2 = grid_boundary_interior(big);
  EXPECT_EQ(b2.interior.size(), static_cast<std::size_t>((13 - 1) * (8 - 1)));
  EXPECT_EQ(b2.interior.size() + b2.boundary.size(), big.size());
  std::vector<bool> hit(big.size(), false);
  for (auto k : b2.boundary) hit[k] = true;
  for (auto k : b2.interior) {
    EXPECT_FALSE(hit[k]);
    hit[k] = true;
  }
  EXPECT_TRUE(std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }));
}

TEST(Grid, IndexRoundTrip) {
  GridSpec g({{-2, 3}, {1, 4}, {0, 0}});
  for (std::size_t k = 0; k < g.size(); ++k) {
    EXPECT_EQ(g.index(g.point(k)), k);
    for (std::size_t a = 0; a < g.dim(); ++a) EXPECT_EQ(g.coord(k, a), g.point(k)[a]);
  }
  EXPECT_THROW(GridSpec({{1, 0}}), Error);
}

TEST(Girth, KnownCases) {
  EXPECT_TRUE(girth_at_least_5(cycle_graph(5)));
  EXPECT_FALSE(girth_at_least_5(cycle_graph(4)));
  EXPECT_FALSE(girth_at_least_5(cycle_graph(3)));
  Rng rng(3);
  for (int i = 0; i < 10; ++i) EXPECT_TRUE(girth_at_least_5(dht::testing::random_tree(rng, 2 + i)));
}

TEST(Girth, AgreesWithSubsetOracle) {
  Rng rng(17);
  for (int i = 0; i < 60; ++i) {
    Graph g = dht::testing::random_connected(rng, 4 + i % 5, 0.25);
    EXPECT_EQ(girth_at_least_5(g), !has_short_cycle(g)) << i;
  }
}

TEST(GraphMap, CompositionOfRandomMaps) {
  Rng rng(23);
  for (int i = 0; i < 30; ++i) {
    Graph a = dht::testing::random_connected(rng, 5, 0.3);
    Graph b = dht::testing::random_connected(rng, 5, 0.3);
    Graph c = dht::testing::random_connected(rng, 4, 0.3);
    GraphMap f = make_graph_map(a, b, random_graph_map(rng, a, b));
    GraphMap g = make_graph_map(b, c, random_graph_map(rng, b, c));
    EXPECT_TRUE(is_graph_map(compose(g, f).assignment, a, c).ok);
  }
}

TEST(Graph, ConnectivityAuditOnConstructedGraphs) {
  Rng rng(29);
  for (int i = 0; i < 20; ++i) {
    Graph g = dht::testing::random_connected(rng, 1 + i % 8, 0.2);
    auto d = g.distances_from(0);
    EXPECT_TRUE(std::none_of(d.begin(), d.end(), [](std::size_t x) { return x == static_cast<std::size_t>(-1); }));
  }
}
