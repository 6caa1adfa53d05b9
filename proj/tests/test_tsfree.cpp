#include <gtest/gtest.h>

#include "dht/tsfree.hpp"
#include "support.hpp"

using namespace dht;
using dht::testing::Rng;
using namespace dht::testing;

namespace {

BasedMap worked_based() {
  GridMap f = dht::testing::worked_map();
  return BasedMap::make(f.domain, f.target, f.target.id("a"), f.values);
}

OrientedEdgeSet cyclic_orientation(const Graph& z) {
  return OrientedEdgeSet(z, {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "e"}, {"e", "a"}});
}

}  // namespace

TEST(FreeWord, Reduction) {
  FreeWord w({1, 2, -2, 3});
  EXPECT_EQ(w.letters(), (std::vector<int>{1, 3}));
  EXPECT_TRUE((w * w.inverse()).is_identity());
  EXPECT_EQ(FreeWord::distance(FreeWord({1, 2}), FreeWord({1, 2, 3})), 1u);
  EXPECT_EQ(FreeWord::distance(FreeWord({1, 2}), FreeWord({1, -3})), 2u);
  EXPECT_TRUE(FreeWord() < FreeWord({5}));
  EXPECT_THROW(FreeWord({0}), Error);
}

TEST(Orientation, Conventions) {
  Graph z = dht::testing::z5();
  OrientedEdgeSet e(z);
  EXPECT_EQ(e.size(), 5u);
  int ab = e.letter(z.id("a"), z.id("b"));
  EXPECT_GT(ab, 0);
  EXPECT_EQ(e.letter(z.id("b"), z.id("a")), -ab);
  EXPECT_GT(e.letter(z.id("a"), z.id("e")), 0);  // lesser label first
  EXPECT_EQ(e.letter(z.id("c"), z.id("c")), 0);
  EXPECT_THROW(e.letter(z.id("a"), z.id("c")), Error);
  OrientedEdgeSet cyc = cyclic_orientation(z);
  EXPECT_GT(cyc.letter(z.id("e"), z.id("a")), 0);
  EXPECT_THROW(OrientedEdgeSet(z, {{"a", "b"}, {"b", "a"}}), Error);
}

TEST(Tau, SingleSteps) {
  BasedMap f = worked_based();
  const Graph& z = f.target;
  OrientedEdgeSet e(z);
  EXPECT_TRUE(tau_edge(f, {0, -4}, {0, -4}, e).is_identity());
  EXPECT_TRUE(tau_edge(f, {-4, 0}, {-4, 1}, e).is_identity());  // a -> a
  EXPECT_EQ(e.str(tau_edge(f, {0, -4}, {0, -3}, e)), "(a,b)");
  EXPECT_EQ(e.str(tau_edge(f, {0, -3}, {0, -4}, e)), "(a,b)^-1");
  EXPECT_THROW(tau_edge(f, {0, 0}, {1, 1}, e), Error);
  EXPECT_TRUE(tau_edge(f, {10, 10}, {10, 11}, e).is_identity());  // outside the box
}

TEST(Tau, WorkedPathsAgree) {
  BasedMap f = worked_based();
  for (const OrientedEdgeSet& e : {OrientedEdgeSet(f.target), cyclic_orientation(f.target)}) {
    GridPath green{{0, -4}, {0, -3}, {0, -2}};
    GridPath blue{{-4, 0}, {-3, 0}, {-2, 0}, {-1, 0}, {-1, -1}, {-1, -2}, {0, -2}};
    GridPath red{{4, 1}, {3, 1}, {2, 1}, {1, 1}, {1, 2}, {2, 2}, {2, 1}, {2, 0}, {2, -1}, {2, -2}, {1, -2}, {0, -2}};
    EXPECT_EQ(e.str(tau_path(f, green, e)), "(a,b)(b,c)");
    EXPECT_EQ(e.str(tau_path(f, blue, e)), "(a,b)(b,c)");
    EXPECT_EQ(e.str(tau_path(f, red, e)), "(a,b)(b,c)");
    // the blue path before reduction
    std::vector<int> letters;
    for (std::size_t i = 0; i + 1 < blue.size(); ++i)
      if (int l = e.letter(f.at(blue[i]), f.at(blue[i + 1]))) letters.push_back(l);
    EXPECT_EQ(letters.size(), 6u);
  }
  EXPECT_THROW(tau_path(f, {{0, 0}}, OrientedEdgeSet(f.target)), Error);
  EXPECT_THROW(tau_path(f, {{0, 0}, {0, 2}}, OrientedEdgeSet(f.target)), Error);
}

TEST(Moves, Preconditions) {
  GridPath p{{0, 0}, {1, 0}, {1, 1}, {1, 0}};
  EXPECT_EQ(corner_swap(p, 1)[1], (MultiIndex{0, 1}));
  EXPECT_EQ(backtrack_delete(p, 2), (GridPath{{0, 0}, {1, 0}}));
  EXPECT_THROW(corner_swap(p, 2), Error);
  EXPECT_THROW(backtrack_delete(p, 1), Error);
  EXPECT_THROW(corner_swap(p, 0), Error);
}

TEST(Moves, DegenerateSwapOnConstantMap) {
  Graph z = dht::testing::z5();
  BasedMap k = BasedMap::constant(GridSpec::box({3, 3}), z, 0);
  OrientedEdgeSet e(z);
  GridPath p{{0, 0}, {1, 0}, {1, 1}};
  EXPECT_TRUE(tau_path(k, p, e).is_identity());
  EXPECT_TRUE(tau_path(k, corner_swap(p, 1), e).is_identity());
}

TEST(Moves, RandomMovesPreserveTau) {
  Rng rng(40);
  int checked = 0;
  for (int t = 0; t < 40; ++t) {
    Graph g = dht::testing::random_girth5(rng, 8 + t % 5, 1 + t % 3);
    GridSpec box = t % 4 == 0 ? GridSpec::box({4, 4, 4}) : GridSpec::box({6, 6});
    BasedMap f = dht::testing::random_based_map(rng, box, g, 0);
    OrientedEdgeSet e(g);
    GridPath p = random_walk(rng, box, box.lower(), 40);
    FreeWord w = tau_path(f, p, e);
    for (int m = 0; m < 30; ++m) {
      auto sw = swap_sites(p);
      auto bt = backtrack_sites(p);
      if (sw.empty() && bt.empty()) break;
      std::uniform_int_distribution<std::size_t> pick(0, sw.size() + bt.size() - 1);
      std::size_t i = pick(rng);
      GridPath q = i < sw.size() ? corner_swap(p, sw[i]) : backtrack_delete(p, bt[i - sw.size()]);
      if (q.size() < 2) break;
      EXPECT_EQ(tau_path(f, q, e), w);
      p = std::move(q);
      ++checked;
    }
  }
  EXPECT_GE(checked, 1000);
}

TEST(Tau, ClosedPathsAreTrivial) {
  Rng rng(41);
  for (int t = 0; t < 60; ++t) {
    Graph g = dht::testing::random_girth5(rng, 10, 2);
    GridSpec box = GridSpec::box({6, 6});
    BasedMap f = dht::testing::random_based_map(rng, box, g, 0);
    OrientedEdgeSet e(g);
    std::uniform_int_distribution<std::size_t> at(0, box.size() - 1);
    GridPath p = close_up(rng, random_walk(rng, box, box.point(at(rng)), 25));
    EXPECT_TRUE(tau_path(f, p, e).is_identity());
  }
}

TEST(Lift, WorkedMap) {
  BasedMap f = worked_based();
  Lift l = lift(f, {1.0, 3, 7});
  EXPECT_EQ(l.edges.str(l.tree.words[l.g.at({0, -2})]), "(a,b)(b,c)");
  EXPECT_EQ(l.samples_checked, f.domain.size());
  EXPECT_TRUE(l.tree.graph.is_tree());
  EXPECT_TRUE(check_grid_map(l.g).ok);
  EXPECT_TRUE(is_graph_map(l.tree.pi, l.tree.graph, f.target).ok);
  EXPECT_EQ(l.tree.pi[l.tree.root], f.basepoint);
  for (std::size_t k = 0; k < f.domain.size(); ++k) EXPECT_EQ(l.tree.pi[l.g.values[k]], f.values[k]);
  for (VertexId u = 0; u < l.tree.graph.size(); ++u)
    for (VertexId v : l.tree.graph.neighbors(u)) EXPECT_EQ(FreeWord::distance(l.tree.words[u], l.tree.words[v]), 1u);
}

TEST(Lift, ConstantMapGivesOneWord) {
  Graph z = dht::testing::z5();
  BasedMap k = BasedMap::constant(GridSpec::box({4, 4}), z, 2);
  Lift l = lift(k);
  EXPECT_EQ(l.tree.graph.size(), 1u);
  EXPECT_TRUE(l.tree.words[0].is_identity());
  HomotopyCertificate h = nullhomotopy_tsfree(k);
  EXPECT_EQ(h.length(), 0u);
  EXPECT_TRUE(verify_based(h).ok);
}

TEST(Lift, Rejections) {
  Rng rng(3);
  try {
    lift(dht::testing::gamma1_map());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InvalidParameter);
  }
  Graph z4 = cycle_graph(4);
  try {
    lift(BasedMap::constant(GridSpec::box({3, 3}), z4, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::GirthViolation);
  }
}

TEST(Lift, RandomMapsIntoGirthFiveGraphs) {
  Rng rng(42);
  for (int t = 0; t < 20; ++t) {
    Graph g = dht::testing::random_girth5(rng, 12, 1 + t % 3);
    BasedMap f = dht::testing::random_based_map(rng, GridSpec::box({6, 6}), g, static_cast<VertexId>(t % 12));
    Lift l = lift(f, {0.2, 3, static_cast<std::uint64_t>(t)});
    EXPECT_TRUE(l.tree.graph.is_tree());
    EXPECT_TRUE(check_grid_map(l.g).ok);
    for (std::size_t k = 0; k < f.domain.size(); ++k) EXPECT_EQ(l.tree.pi[l.g.values[k]], f.values[k]);
  }
}

TEST(Nullhomotopy, WorkedMap) {
  BasedMap f = worked_based();
  HomotopyCertificate h = nullhomotopy_tsfree(f);
  auto v = verify_based(h);
  EXPECT_TRUE(v.ok) << v.describe();
  EXPECT_TRUE(is_constant_stage(h.stages.back()));
  EXPECT_EQ(h.stages.back()[0], f.target.id("a"));
  Lift l = lift(f);
  EXPECT_EQ(h.length(), 2 * l.tree.depth());
  std::vector<VertexId> start = extend_to(f, h.grid());
  EXPECT_EQ(h.stages.front(), start);
}

TEST(Nullhomotopy, RandomMapsVerify) {
  Rng rng(43);
  for (int t = 0; t < 25; ++t) {
    Graph g = dht::testing::random_girth5(rng, 6 + t % 7, 1 + t % 3);
    GridSpec box = t % 5 == 0 ? GridSpec::box({4, 4, 4}) : GridSpec::box({6, 6});
    BasedMap f = dht::testing::random_based_map(rng, box, g, 0);
    HomotopyCertificate h = nullhomotopy_tsfree(f);
    auto v = verify_based(h);
    EXPECT_TRUE(v.ok) << v.describe();
    EXPECT_TRUE(is_constant_stage(h.stages.back()));
    EXPECT_EQ(h.length(), 2 * lift(f).tree.depth());
  }
}
