#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <set>

#include "oracles.hpp"
#include "posetsheaf/covering.hpp"
#include "posetsheaf/covering_io.hpp"

using namespace posetsheaf;

namespace {

CoveringSpec disks() {
  return CoveringSpec::make({"A", "B", "C", "D", "E", "F", "G"},
                            {{"A", "B", "C", "F"}, {"A", "B", "D", "E"}, {"A", "C", "D", "G"}});
}

CoveringSpec covering_of(const std::vector<unsigned>& parts, unsigned g) {
  std::vector<std::string> ground;
  for (unsigned x = 0; x < g; ++x) ground.push_back("g" + std::to_string(x));
  std::vector<std::vector<std::string>> ps;
  for (auto p : parts) {
    std::vector<std::string> part;
    for (unsigned x = 0; x < g; ++x)
      if (p >> x & 1u) part.push_back(ground[x]);
    ps.push_back(part);
  }
  return CoveringSpec::make(ground, ps);
}

using Idx = std::vector<std::size_t>;

}  // namespace

TEST(Support, ThreeDisks) {
  auto C = disks();
  EXPECT_EQ(support("A", C), (Idx{0, 1, 2}));
  EXPECT_EQ(support("F", C), (Idx{0}));
  EXPECT_EQ(support("B", C), (Idx{0, 1}));
  EXPECT_THROW(support("Z", C), InputError);
}

TEST(Covering, RejectsUncoveredGround) {
  EXPECT_THROW(CoveringSpec::make({"a", "b"}, {{"a"}}), InputError);
  EXPECT_THROW(CoveringSpec::make({"a"}, {{"b"}}), InputError);
}

TEST(Covering, EmptyPartAllowed) {
  auto C = CoveringSpec::make({"a", "b"}, {{"a", "b"}, {}});
  EXPECT_EQ(partition_space(C).poset.size(), 1u);
}

TEST(Partition, ThreeDisksFigure) {
  auto S = partition_space(disks());
  ASSERT_EQ(S.poset.size(), 7u);
  std::set<std::pair<std::string, std::string>> got, want;
  for (auto [p, q] : strict_relations(S.poset)) got.insert({S.poset.label(p), S.poset.label(q)});
  for (auto x : {"B", "C", "D", "E", "F", "G"}) want.insert({"A", x});
  for (auto [p, q] : {std::pair{"B", "E"}, {"B", "F"}, {"C", "F"}, {"C", "G"}, {"D", "E"}, {"D", "G"}}) want.insert({p, q});
  EXPECT_EQ(got, want);
}

TEST(Partition, SinglePartAndSingletons) {
  EXPECT_EQ(partition_space(CoveringSpec::make({"a", "b", "c"}, {{"a", "b", "c"}})).poset.size(), 1u);
  auto S = partition_space(CoveringSpec::make({"a", "b", "c"}, {{"a"}, {"b"}, {"c"}}));
  EXPECT_EQ(S.poset.size(), 3u);
  EXPECT_TRUE(strict_relations(S.poset).empty());
}

TEST(Partition, ClassesGroupEqualSupports) {
  auto S = partition_space(CoveringSpec::make({"a", "b", "c"}, {{"a", "b"}, {"a", "b", "c"}}));
  EXPECT_EQ(S.poset.size(), 2u);
  EXPECT_EQ(S.projection[0], S.projection[1]);
  EXPECT_EQ(S.poset.label(S.projection[0]), "a,b");
}

TEST(Partition, ProjectionIsOpenAndClosed) {
  std::mt19937_64 rng(31);
  for (int s = 0; s < 40; ++s) {
    unsigned g = 2 + s % 7, k = 1 + s % 4;
    auto C = covering_of(oracle::random_covering(g, k, rng), g);
    auto S = partition_space(C);
    auto q = verify_quotient_map(C, S);
    EXPECT_TRUE(q.checked);
    EXPECT_TRUE(q.monotone && q.open && q.closed);
  }
}

TEST(Partition, AlexandrovEqualsSubbasisTopology) {
  std::mt19937_64 rng(37);
  for (int s = 0; s < 40; ++s) {
    unsigned g = 2 + s % 9, k = 1 + s % 4;
    auto C = covering_of(oracle::random_covering(g, k, rng), g);
    auto a = closed_sets(support_preorder(C), 12);
    auto b = closed_sets_from_subbasis(C);
    std::sort(a.begin(), a.end());
    EXPECT_EQ(a, b);
  }
}

TEST(Xi, ThreeDisks) {
  auto C = disks();
  auto r = xi(C);
  EXPECT_EQ(r.horizon, 2u);
  EXPECT_EQ(r.value[C.index_of("A")], ProjPoint::of({0, 1, 2}));
  EXPECT_EQ(r.value[C.index_of("F")], ProjPoint::of({0}));
  std::set<ProjPoint> hats(r.hat.begin(), r.hat.end());
  EXPECT_EQ(hats.size(), 7u);
  EXPECT_TRUE(r.ok());
}

TEST(Xi, AlwaysAnEmbedding) {
  std::mt19937_64 rng(41);
  for (int s = 0; s < 50; ++s) {
    unsigned g = 1 + s % 8, k = 1 + s % 5;
    auto C = covering_of(oracle::random_covering(g, k, rng), g);
    EXPECT_TRUE(xi(C).ok());
  }
}

TEST(CoveringLattice, Sizes) {
  EXPECT_EQ(covering_lattice(CoveringSpec::make({"a", "b"}, {{"a", "b"}})).size(), 1u);
  EXPECT_EQ(covering_lattice(disks()).size(), 18u);
  EXPECT_EQ(covering_lattice(CoveringSpec::make({"a", "b"}, {{"a"}, {"a", "b"}})).size(), 2u);
}

TEST(CoveringLattice, MatchesClosureOracle) {
  std::mt19937_64 rng(43);
  for (int s = 0; s < 30; ++s) {
    unsigned g = 3 + s % 6, k = 2 + s % 3;
    auto parts = oracle::random_covering(g, k, rng);
    EXPECT_EQ(covering_lattice(covering_of(parts, g)).size(), oracle::close_sets(parts).size());
  }
}

TEST(CoveringLattice, BoundIsResourceError) {
  EXPECT_THROW(covering_lattice(disks(), 10), ResourceError);
}

TEST(CoveringLattice, FreeWhenAllSupportsOccur) {
  auto C = disks();
  auto L = covering_lattice(C);
  EXPECT_TRUE(is_free_on(L, L.generators()).free);
  // Four parts, one ground point per nonempty support.
  std::vector<unsigned> parts(4, 0);
  for (unsigned s = 1; s < 16; ++s)
    for (unsigned i = 0; i < 4; ++i)
      if (s >> i & 1u) parts[i] |= 1u << (s - 1);
  auto L4 = covering_lattice(covering_of(parts, 15));
  EXPECT_EQ(L4.size(), 166u);
  EXPECT_TRUE(is_free_on(L4, L4.generators()).free);
}

TEST(LatticeIso, Instances) {
  EXPECT_TRUE(verify_lattice_iso(disks()));
  EXPECT_TRUE(verify_lattice_iso(CoveringSpec::make({"a"}, {{"a"}})));
  std::mt19937_64 rng(47);
  for (int s = 0; s < 30; ++s) {
    unsigned g = 4 + s % 5, k = 3;
    EXPECT_TRUE(verify_lattice_iso(covering_of(oracle::random_covering(g, k, rng), g)));
  }
}

TEST(CoveringJson, RoundTripAndSample) {
  std::ifstream in(std::string(POSETSHEAF_DATA_DIR) + "/disks.json");
  ASSERT_TRUE(in.good());
  auto j = json::parse(in);
  auto C = covering_from_json(j);
  EXPECT_EQ(to_json(C), j);
  EXPECT_EQ(covering_from_json(to_json(C)).parts, C.parts);
  auto out = to_json(C, partition_space(C));
  EXPECT_EQ(out["classes"].size(), 7u);
  EXPECT_EQ(to_json(C, xi(C))["ok"], true);
}

TEST(CoveringJson, BadInput) {
  EXPECT_THROW(covering_from_json(json::parse(R"({"ground":["a"]})")), InputError);
  EXPECT_THROW(covering_from_json(json::parse(R"({"ground":["a","a"],"parts":[["a"]]})")), InputError);
}
