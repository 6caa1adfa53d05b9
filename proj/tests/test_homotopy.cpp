#include <gtest/gtest.h>

#include <chrono>

#include "dht/homotopy.hpp"
#include "support.hpp"

using namespace dht;
using dht::testing::Rng;

namespace {

// Independent oracle for the Cartesian homotopy condition.
bool cartesian_ok(const Contraction& c) {
  const Graph& g = c.target;
  for (std::size_t i = 0; i + 1 < c.stages.size(); ++i)
    for (VertexId u = 0; u < g.size(); ++u)
      if (g.distances_from(c.stages[i][u])[c.stages[i + 1][u]] > 1) return false;
  return true;
}

Graph three_path() { return Graph::from_edges({"blue", "yellow", "magenta"}, {{"blue", "yellow"}, {"yellow", "magenta"}}); }

}  // namespace

TEST(Verify, ConstantCertificate) {
  Graph g = dht::testing::z5();
  BasedMap f = BasedMap::constant(GridSpec::box({3, 3}), g, 0);
  for (std::size_t m : {0u, 1u, 5u}) {
    auto h = constant_homotopy(f, m);
    EXPECT_TRUE(verify_based(h, &f.values, &f.values).ok);
    EXPECT_EQ(h.length(), m);
  }
}

TEST(Verify, BadStageGivesWitness) {
  Graph z = dht::testing::z5();
  Graph p = path_graph(2);
  HomotopyCertificate h{p, z, std::nullopt, {}};
  h.stages.push_back({z.id("a"), z.id("a"), z.id("a")});
  h.stages.push_back({z.id("a"), z.id("c"), z.id("c")});  // 0 and 1 adjacent, images a and c
  ASSERT_EQ(z.distances_from(z.id("a"))[z.id("c")], 2u);
  auto v = verify_homotopy(h);
  EXPECT_FALSE(v.ok);
  ASSERT_TRUE(v.stage.has_value());
  EXPECT_LE(*v.stage, 1u);
  ASSERT_TRUE(v.edge.has_value());
}

TEST(Verify, EndpointMismatch) {
  Graph g = dht::testing::z5();
  BasedMap f = BasedMap::constant(GridSpec::box({2}), g, 0);
  auto h = constant_homotopy(f, 2);
  std::vector<VertexId> other(f.values.size(), 1);
  EXPECT_FALSE(verify_homotopy(h, &other).ok);
  EXPECT_FALSE(verify_homotopy(h, nullptr, &other).ok);
  HomotopyCertificate bad = h;
  bad.stages[1].pop_back();
  EXPECT_THROW((void)verify_homotopy(bad), Error);
}

TEST(Verify, BasedBoundaryMustStayPut) {
  Graph g = dht::testing::z5();
  BasedMap f = BasedMap::constant(GridSpec::box({2, 2}), g, 0);
  auto h = constant_homotopy(f, 1);
  h.stages[1][0] = 1;  // corner moves to a neighbour of the basepoint
  EXPECT_TRUE(verify_homotopy(h).ok);
  EXPECT_FALSE(verify_based(h).ok);
}

TEST(Verify, NonConstantEndIsRejected) {
  Graph p = path_graph(2);
  Contraction c{p, p, std::nullopt, {{0, 1, 2}, {0, 0, 1}}};
  auto v = verify_contraction(c);
  EXPECT_FALSE(v.ok);
  EXPECT_NE(v.reason.find("NotConstantEnd"), std::string::npos);
}

TEST(GridContraction, LineValues) {
  Contraction c = grid_contraction(GridSpec::box({2}));
  const Graph& g = c.target;
  EXPECT_EQ(c.length(), 2u);
  EXPECT_EQ(g.label(c.stages[1][g.id("(2)")]), "(1)");
  EXPECT_EQ(g.label(c.stages[2][g.id("(2)")]), "(0)");
  EXPECT_TRUE(verify_contraction(c).ok);
}

TEST(GridContraction, SquareAndRectangle) {
  Contraction sq = grid_contraction(GridSpec::box({2, 2}));
  EXPECT_TRUE(verify_contraction(sq).ok);
  EXPECT_TRUE(cartesian_ok(sq));
  Contraction r = grid_contraction(GridSpec::box({2, 1}));
  const Graph& g = r.target;
  EXPECT_EQ(g.label(r.stages[1][g.id("(2,1)")]), "(1,1)");
  EXPECT_EQ(g.label(r.stages[3][g.id("(2,1)")]), "(0,0)");
  EXPECT_EQ(r.length(), 3u);
  EXPECT_TRUE(verify_contraction(r).ok);
  Contraction pt = grid_contraction(GridSpec::cube(3, 0));
  EXPECT_EQ(pt.length(), 0u);
  EXPECT_TRUE(verify_contraction(pt).ok);
  Contraction off = grid_contraction(GridSpec({{-1, 1}, {3, 5}}));
  EXPECT_TRUE(verify_contraction(off).ok);
  EXPECT_EQ(off.target.label(off.stages.back()[0]), "(-1,3)");
}

TEST(GridContraction, SimultaneousFormulaIsNotAHomotopy) {
  GridSpec box = GridSpec::box({2, 1});
  Graph g = grid_graph(box);
  auto s1 = simultaneous_grid_stage(box, g, 1);
  EXPECT_EQ(g.label(s1[g.id("(2,1)")]), "(1,0)");
  EXPECT_FALSE(g.adjacent_or_equal(g.id("(2,1)"), s1[g.id("(2,1)")]));
  Contraction c{g, g, std::nullopt, {}};
  for (int i = 0; i <= 2; ++i) c.stages.push_back(simultaneous_grid_stage(box, g, i));
  EXPECT_FALSE(verify_contraction(c).ok);
  EXPECT_TRUE(verify_contraction(grid_contraction(GridSpec::box({3}))).ok);
}

TEST(GridContraction, FailsTheStrongProductCondition) {
  // u=(2), v=(1): h_0(u)=(2) and h_1(v)=(0) are two apart, so stages of a
  // valid contraction need not satisfy h_i(u) ≃ h_{i+1}(v) for u ≃ v.
  Contraction c = grid_contraction(GridSpec::box({2}));
  const Graph& g = c.target;
  VertexId u = g.id("(2)"), v = g.id("(1)");
  EXPECT_FALSE(g.adjacent_or_equal(c.stages[0][u], c.stages[1][v]));
  EXPECT_TRUE(verify_contraction(c).ok);
}

TEST(TreeContraction, PathRootedAtEnd) {
  Graph p = path_graph(2);
  Contraction c = tree_contraction(p, p.id("0"));
  EXPECT_EQ(c.stages[1][p.id("2")], p.id("1"));
  EXPECT_EQ(c.stages[2][p.id("2")], p.id("0"));
  EXPECT_TRUE(verify_contraction(c).ok);
}

TEST(TreeContraction, DiameterThreeAndPoint) {
  Graph p = path_graph(3);
  Contraction c = tree_contraction(p, p.id("1"));
  EXPECT_EQ(c.length(), 3u);
  EXPECT_TRUE(verify_contraction(c).ok);
  Graph one = single_vertex("x");
  EXPECT_EQ(tree_contraction(one, 0).length(), 0u);
  EXPECT_THROW(tree_contraction(cycle_graph(4), 0), Error);
  EXPECT_THROW(tree_contraction(p, p.id("0"), 1), Error);
  EXPECT_EQ(tree_contraction(p, p.id("1"), 2).length(), 2u);
}

TEST(TreeContraction, StarLeavesHitCentreAtStageOne) {
  Graph s = tree_graph({{"c", "l1"}, {"c", "l2"}, {"c", "l3"}, {"c", "l4"}});
  Contraction c = tree_contraction(s, s.id("c"));
  EXPECT_LE(c.length(), 2u);
  for (VertexId v = 0; v < s.size(); ++v) EXPECT_EQ(c.stages[1][v], s.id("c"));
  EXPECT_TRUE(verify_contraction(c).ok);
}

TEST(TreeContraction, RandomTrees) {
  Rng rng(41);
  for (int i = 0; i < 25; ++i) {
    Graph t = dht::testing::random_tree(rng, 1 + i % 10);
    for (VertexId r = 0; r < t.size(); r += 3) {
      Contraction c = tree_contraction(t, r);
      EXPECT_TRUE(verify_contraction(c).ok);
      EXPECT_TRUE(cartesian_ok(c));
      EXPECT_EQ(c.stages.back()[0], r);
    }
  }
}

TEST(Radius, ConstantMap) {
  Graph g = dht::testing::z5();
  GridMap f{GridSpec({{-3, 3}, {-3, 3}}), g, std::vector<VertexId>(49, 2)};
  auto out = normalize_radius(f, 3, 2);
  EXPECT_TRUE(out.map.is_constant());
  EXPECT_EQ(out.map.domain, GridSpec::cube(2, 6));
  EXPECT_TRUE(verify_based(out.shift).ok);
}

TEST(Radius, WorkedMapNormalizesToEightByEight) {
  GridMap f = dht::testing::worked_map();
  ASSERT_TRUE(check_grid_map(f).ok);
  auto out = normalize_radius(f, 4, f.target.id("a"));
  EXPECT_EQ(out.map.domain, GridSpec::cube(2, 8));
  for (std::size_t k = 0; k < out.map.domain.size(); ++k) {
    MultiIndex y = out.map.domain.point(k);
    EXPECT_EQ(out.map.values[k], f.at({y[0] - 4, y[1] - 4}));
  }
  auto start = extend_to(BasedMap::make(f.domain, f.target, f.target.id("a"), f.values), out.shift.grid());
  auto end = extend_to(out.map, out.shift.grid());
  EXPECT_TRUE(verify_based(out.shift, &start, &end).ok);
  EXPECT_EQ(out.shift.length(), 8u);
}

TEST(Radius, DiagonalShiftIsNotAHomotopy) {
  GridMap f = dht::testing::worked_map();
  const VertexId a = f.target.id("a");
  GridSpec wide({{-4, 8}, {-4, 8}});
  HomotopyCertificate h{wide, f.target, a, {}};
  for (int i = 0; i <= 4; ++i) {
    std::vector<VertexId> s(wide.size(), a);
    for (std::size_t k = 0; k < wide.size(); ++k) {
      MultiIndex x = wide.point(k);
      MultiIndex y{x[0] - i, x[1] - i};
      if (f.domain.contains(y)) s[k] = f.at(y);
    }
    h.stages.push_back(std::move(s));
  }
  EXPECT_FALSE(verify_homotopy(h).ok);
}

TEST(Radius, OneDimensionalShift) {
  Graph g = cycle_graph(5);
  GridMap f{GridSpec({{-2, 2}}), g, {0, 1, 2, 1, 0}};
  auto out = normalize_radius(f, 2, 0);
  // direct evaluation of y -> f(y - 2)
  std::vector<VertexId> expect{0, 1, 2, 1, 0};
  EXPECT_EQ(out.map.values, expect);
  EXPECT_EQ(out.map.domain, GridSpec::box({4}));
  EXPECT_TRUE(verify_based(out.shift).ok);
}

TEST(Radius, Violation) {
  Graph g = cycle_graph(5);
  GridMap f{GridSpec({{-2, 2}}), g, {1, 1, 2, 1, 0}};
  try {
    normalize_radius(f, 2, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::RadiusViolation);
  }
}

TEST(Onion, ConstantMapGivesConstantStages) {
  Graph p = path_graph(3);
  BasedMap f = BasedMap::constant(GridSpec::box({3, 3}), p, 2);
  Contraction c = tree_contraction(p, 0);
  auto h = nullhomotopy_from_contraction(f, c);
  EXPECT_EQ(h.length(), 2 * c.length());
  for (const auto& s : h.stages) EXPECT_TRUE(is_constant_stage(s));
  EXPECT_TRUE(verify_based(h).ok);
}

TEST(Onion, WorkedThreeColourExample) {
  Graph g = three_path();
  const VertexId B = g.id("blue"), Y = g.id("yellow"), M = g.id("magenta");
  Contraction c{g, g, std::nullopt, {}};
  std::vector<std::vector<VertexId>> rows{{B, Y, M, Y, B}, {Y, Y, M, Y, B}, {M, M, M, Y, B}};
  for (int i = 0; i <= 4; ++i) c.stages.push_back({rows[0][i], rows[2][i], rows[1][i]});
  // vertex ids follow label order: blue, magenta, yellow
  ASSERT_EQ(g.label(1), "magenta");
  ASSERT_TRUE(verify_contraction(c).ok);
  GridSpec box = GridSpec::box({5, 5});
  std::vector<VertexId> vals(box.size(), B);
  for (std::size_t k = 0; k < box.size(); ++k) {
    MultiIndex x = box.point(k);
    if (box.on_boundary(x)) continue;
    bool centre = x[0] >= 2 && x[0] <= 3 && x[1] >= 2 && x[1] <= 3;
    vals[k] = centre ? M : Y;
  }
  BasedMap f = BasedMap::make(box, g, B, vals);
  auto h = nullhomotopy_from_contraction(f, c);
  EXPECT_EQ(h.length(), 8u);
  auto start = extend_to(f, h.grid());
  std::vector<VertexId> end(h.grid().size(), B);
  EXPECT_TRUE(verify_based(h, &start, &end).ok);
}

TEST(Onion, RandomMapsIntoGrids) {
  Rng rng(7);
  for (int i = 0; i < 15; ++i) {
    GridSpec target_box = GridSpec::box({1 + i % 3, 2});
    Graph g = grid_graph(target_box);
    Contraction c = grid_contraction(target_box);
    std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(g.size() - 1));
    GridSpec dom = GridSpec::cube(2 + i % 2, 4);
    BasedMap f = dht::testing::random_based_map(rng, dom, g, pick(rng));
    auto h = nullhomotopy_from_contraction(f, c);
    EXPECT_EQ(h.length(), 2 * c.length());
    auto start = extend_to(f, h.grid());
    ASSERT_EQ(h.stages.front(), start);
    EXPECT_TRUE(verify_based(h, &start).ok);
    EXPECT_TRUE(std::all_of(h.stages.back().begin(), h.stages.back().end(),
                            [&](VertexId v) { return v == f.basepoint; }));
  }
}

TEST(Onion, ShellsPartitionAndOuterShellIsConstant) {
  Rng rng(8);
  Graph g = grid_graph(GridSpec::box({2, 2}));
  Contraction c = grid_contraction(GridSpec::box({2, 2}));
  BasedMap f = dht::testing::random_based_map(rng, GridSpec::box({4, 4}), g, 4);
  auto h = nullhomotopy_from_contraction(f, c);
  const GridSpec& w = h.grid();
  const int m = static_cast<int>(c.length());
  std::vector<std::size_t> per_shell(static_cast<std::size_t>(m) + 1, 0);
  for (std::size_t k = 0; k < w.size(); ++k) {
    int s = box_distance(f.domain, w.point(k));
    ASSERT_GE(s, 0);
    ASSERT_LE(s, m);
    ++per_shell[static_cast<std::size_t>(s)];
    if (s == m) {
      for (const auto& st : h.stages) EXPECT_EQ(st[k], f.basepoint);
    }
  }
  std::size_t total = 0;
  for (std::size_t s = 0; s <= static_cast<std::size_t>(m); ++s) {
    std::size_t side = 5 + 2 * s;
    std::size_t inner = s == 0 ? 0 : (side - 2) * (side - 2);
    EXPECT_EQ(per_shell[s], side * side - inner);
    total += per_shell[s];
  }
  EXPECT_EQ(total, w.size());
}

TEST(Onion, RejectsInvalidContraction) {
  Graph p = path_graph(2);
  Contraction bad{p, p, std::nullopt, {{0, 1, 2}, {0, 1, 1}}};
  BasedMap f = BasedMap::constant(GridSpec::box({2}), p, 0);
  try {
    nullhomotopy_from_contraction(f, bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InvalidContraction);
  }
}

TEST(Concatenate, WithConstant) {
  BasedMap g1 = dht::testing::gamma1_map();
  BasedMap k = BasedMap::constant(GridSpec::box({3}), g1.target, g1.basepoint);
  BasedMap p = concatenate(g1, k);
  EXPECT_EQ(p.domain, GridSpec::box({8}));
  for (int i = 0; i <= 5; ++i) EXPECT_EQ(p.at({i}), g1.at({i}));
  for (int i = 5; i <= 8; ++i) EXPECT_EQ(p.at({i}), g1.basepoint);
  EXPECT_EQ(trim(p).values, trim(g1).values);
}

TEST(Concatenate, GammaTwiceWalksTheCycleTwice) {
  BasedMap g1 = dht::testing::gamma1_map();
  BasedMap p = concatenate(g1, g1);
  const Graph& g = g1.target;
  std::string walk;
  for (int i = 0; i <= 10; ++i) walk += g.label(p.at({i}));
  EXPECT_EQ(walk, "abcdeabcdea");
}

TEST(Concatenate, ConstantsAndErrors) {
  Graph g = dht::testing::z5();
  BasedMap a = BasedMap::constant(GridSpec::box({2, 3}), g, 0);
  BasedMap b = BasedMap::constant(GridSpec::box({4, 1}), g, 0);
  BasedMap p = concatenate(a, b);
  EXPECT_TRUE(p.is_constant());
  EXPECT_EQ(p.domain, GridSpec::box({6, 3}));
  auto code = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::ParseError;
  };
  BasedMap c1 = BasedMap::constant(GridSpec::box({2}), g, 0);
  BasedMap c2 = BasedMap::constant(GridSpec::box({2}), g, 1);
  EXPECT_EQ(code([&] { concatenate(a, c1); }), Errc::DimensionMismatch);
  EXPECT_EQ(code([&] { concatenate(c1, c2); }), Errc::BasepointMismatch);
}

TEST(Concatenate, AssociativeAfterTrim) {
  Rng rng(99);
  Graph g = cycle_graph(7);
  for (int i = 0; i < 10; ++i) {
    BasedMap f = dht::testing::random_based_map(rng, GridSpec::box({3 + i % 2, 4}), g, 0);
    BasedMap h = dht::testing::random_based_map(rng, GridSpec::box({4, 3}), g, 0);
    BasedMap k = dht::testing::random_based_map(rng, GridSpec::box({3, 5}), g, 0);
    BasedMap l = trim(concatenate(concatenate(f, h), k));
    BasedMap r = trim(concatenate(f, concatenate(h, k)));
    EXPECT_EQ(l.domain, r.domain);
    EXPECT_EQ(l.values, r.values);
  }
}

TEST(BruteForce, SquareIsContractible) {
  auto r = brute_force_contractibility(cycle_graph(4));
  ASSERT_EQ(r.status, ContractibilityResult::Status::Contractible);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_TRUE(verify_contraction(*r.witness).ok);
  EXPECT_TRUE(cartesian_ok(*r.witness));
}

TEST(BruteForce, PentagonIsNot) {
  auto t0 = std::chrono::steady_clock::now();
  auto r = brute_force_contractibility(cycle_graph(5));
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  EXPECT_EQ(r.status, ContractibilityResult::Status::NotContractible);
  EXPECT_FALSE(r.witness.has_value());
  EXPECT_GT(r.explored, 1u);
  EXPECT_LT(secs, 10.0);
}

TEST(BruteForce, EdgeInOneStepAndCap) {
  auto r = brute_force_contractibility(path_graph(1));
  ASSERT_EQ(r.status, ContractibilityResult::Status::Contractible);
  EXPECT_EQ(r.witness->length(), 1u);
  auto big = brute_force_contractibility(path_graph(12));
  EXPECT_EQ(big.status, ContractibilityResult::Status::Unknown);
  EXPECT_NE(big.note.find("CapExceeded"), std::string::npos);
}

TEST(BruteForce, DeterministicWitness) {
  auto a = brute_force_contractibility(cycle_graph(4));
  auto b = brute_force_contractibility(cycle_graph(4));
  EXPECT_EQ(a.witness->stages, b.witness->stages);
}

TEST(BruteForce, RetractOntoAVertex) {
  auto r = brute_force_contractibility(cycle_graph(4), 9, VertexId{0});
  ASSERT_EQ(r.status, ContractibilityResult::Status::Contractible);
  for (const auto& s : r.witness->stages) EXPECT_EQ(s[0], 0u);
  EXPECT_TRUE(verify_contraction(*r.witness).ok);
  auto t = brute_force_contractibility(path_graph(3), 9, VertexId{2});
  EXPECT_EQ(t.status, ContractibilityResult::Status::Contractible);
}

TEST(BruteForce, AgreesWithGridAndTreeWitnesses) {
  Rng rng(12);
  std::vector<Graph> gs{grid_graph(GridSpec::box({2, 1})), grid_graph(GridSpec::box({1, 1, 0})),
                        grid_graph(GridSpec::box({3}))};
  for (int i = 0; i < 6; ++i) gs.push_back(dht::testing::random_tree(rng, 2 + i));
  for (const auto& g : gs) {
    auto r = brute_force_contractibility(g);
    EXPECT_EQ(r.status, ContractibilityResult::Status::Contractible);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_TRUE(verify_contraction(*r.witness).ok);
  }
}
