#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "oracles.hpp"
#include "posetsheaf/order.hpp"
#include "posetsheaf/order_io.hpp"

using namespace posetsheaf;

namespace {

FinitePoset chain(std::vector<std::string> labels) {
  std::vector<std::pair<std::size_t, std::size_t>> rel;
  for (std::size_t i = 0; i + 1 < labels.size(); ++i) rel.emplace_back(i, i + 1);
  return FinitePoset::from_relation(std::move(labels), rel);
}

FinitePoset antichain(std::vector<std::string> labels) { return FinitePoset::from_relation(std::move(labels), {}); }

FinitePoset disk_poset() {
  return FinitePoset::from_labeled({"A", "B", "C", "D", "E", "F", "G"},
                                   {{"A", "B"}, {"A", "C"}, {"A", "D"}, {"B", "E"}, {"B", "F"}, {"C", "F"},
                                    {"C", "G"}, {"D", "E"}, {"D", "G"}});
}

FinitePoset from_small(const oracle::SmallPoset& S) {
  std::vector<std::string> labels;
  std::vector<std::pair<std::size_t, std::size_t>> rel;
  for (unsigned x = 0; x < S.n; ++x) {
    labels.push_back("p" + std::to_string(x));
    for (unsigned y = 0; y < S.n; ++y)
      if (S.below[x] >> y & 1u) rel.emplace_back(y, x);
  }
  return FinitePoset::from_relation(labels, rel);
}

Bits bits_of(std::size_t n, unsigned m) {
  Bits b(n);
  for (std::size_t i = 0; i < n; ++i)
    if (m >> i & 1u) b.set(i);
  return b;
}

unsigned mask_of(const Bits& b) {
  unsigned m = 0;
  b.for_each([&](std::size_t i) { m |= 1u << i; });
  return m;
}

}  // namespace

TEST(UpSet, ChainFromMiddle) {
  auto P = chain({"a", "b", "c"});
  auto u = up_set(P, std::vector<std::string>{"b"});
  EXPECT_EQ(u.members, bits_of(3, 0b110));
}

TEST(UpSet, AntichainSingleton) {
  auto P = antichain({"a", "b"});
  EXPECT_EQ(up_set(P, std::vector<std::string>{"a"}).members, bits_of(2, 0b01));
}

TEST(UpSet, DiskMinimumReachesEverything) {
  auto P = disk_poset();
  EXPECT_EQ(up_set(P, std::vector<std::string>{"A"}).size(), 7u);
}

TEST(UpSet, UnknownLabelIsInputError) {
  auto P = chain({"a", "b"});
  EXPECT_THROW(up_set(P, std::vector<std::string>{"z"}), InputError);
}

TEST(UpSet, Idempotent) {
  auto P = disk_poset();
  for (unsigned m = 0; m < 128; ++m) {
    auto u = up_set(P, bits_of(7, m));
    EXPECT_EQ(up_set(P, u.members), u);
  }
}

TEST(Opens, SmallCounts) {
  EXPECT_EQ(alexandrov_opens(antichain({"x"})).size(), 2u);
  EXPECT_EQ(alexandrov_opens(antichain({"x", "y"})).size(), 4u);
  // Nonempty subsets of a 2-set plus the empty set, ordered by inclusion.
  auto B = FinitePoset::from_labeled({"e", "0", "1", "01"}, {{"e", "0"}, {"e", "1"}, {"0", "01"}, {"1", "01"}});
  EXPECT_EQ(alexandrov_opens(B).size(), oracle::dedekind(2));
}

TEST(Opens, CountMatchesAntichainOracle) {
  for (const auto& S : oracle::naturally_labelled_posets(40, 6)) {
    if (S.n > 8) continue;
    auto P = from_small(S);
    auto opens = alexandrov_opens(P);
    std::vector<unsigned> got;
    for (const auto& u : opens) got.push_back(mask_of(u.members));
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, oracle::upper_sets(S));
  }
}

TEST(Opens, ClosedUnderUnionAndIntersection) {
  auto P = disk_poset();
  auto opens = alexandrov_opens(P);
  std::set<unsigned> all;
  for (const auto& u : opens) all.insert(mask_of(u.members));
  for (auto a : all)
    for (auto b : all) {
      EXPECT_TRUE(all.count(a | b));
      EXPECT_TRUE(all.count(a & b));
    }
}

TEST(Opens, BoundIsResourceError) {
  std::vector<std::string> labels;
  for (int i = 0; i < 25; ++i) labels.push_back("x" + std::to_string(i));
  try {
    alexandrov_opens(antichain(labels));
    FAIL();
  } catch (const ResourceError& e) {
    EXPECT_NE(std::string(e.what()).find("max_elems"), std::string::npos);
  }
}

TEST(Opens, EmptyPosetHasOneOpen) {
  auto P = antichain({});
  EXPECT_EQ(alexandrov_opens(P).size(), 1u);
  auto r = topo_report(P);
  EXPECT_TRUE(r.is_T0 && r.is_T1 && r.is_connected);
}

TEST(Opposite, ChainReverses) {
  auto P = chain({"a", "b"});
  auto Q = opposite(P);
  EXPECT_TRUE(Q.leq(1, 0));
  EXPECT_FALSE(Q.leq(0, 1));
}

TEST(Opposite, Involution) {
  auto P = disk_poset();
  EXPECT_EQ(opposite(opposite(P)), P);
}

TEST(Opposite, ClosedSetsAreOppositeOpens) {
  auto P = chain({"a", "b", "c"});
  auto closed = closed_sets(P, 20);
  EXPECT_EQ(closed.size(), 4u);
  for (const auto& S : oracle::naturally_labelled_posets(30, 6)) {
    if (S.n > 8) continue;
    auto Q = from_small(S);
    std::set<unsigned> c, o;
    for (const auto& b : closed_sets(Q, 20)) c.insert(mask_of(b));
    for (const auto& u : alexandrov_opens(opposite(Q))) o.insert(mask_of(u.members));
    EXPECT_EQ(c, o);
  }
}

TEST(Monotone, IdentityAndConstant) {
  auto P = disk_poset();
  std::vector<std::size_t> id(7), k(7, 3);
  std::iota(id.begin(), id.end(), 0);
  EXPECT_TRUE(is_monotone(id, P, P));
  EXPECT_TRUE(is_monotone(k, P, P));
}

TEST(Monotone, SwapMiddleOfChain) {
  auto P = chain({"a", "b", "c", "d"});
  std::unordered_map<std::string, std::string> f = {{"a", "a"}, {"b", "c"}, {"c", "b"}, {"d", "d"}};
  EXPECT_FALSE(is_monotone(f, P, P));
}

TEST(Monotone, PartialMapIsInputError) {
  auto P = chain({"a", "b"});
  std::unordered_map<std::string, std::string> f = {{"a", "a"}};
  EXPECT_THROW(is_monotone(f, P, P), InputError);
}

TEST(Monotone, AgreesWithContinuity) {
  std::mt19937_64 rng(17);
  auto posets = oracle::naturally_labelled_posets(12);
  std::uniform_int_distribution<std::size_t> pick(0, posets.size() - 1);
  for (int s = 0; s < 200; ++s) {
    auto SP = posets[pick(rng)], SQ = posets[pick(rng)];
    if (SP.n == 0 || SQ.n == 0 || SP.n > 6 || SQ.n > 6) continue;
    auto P = from_small(SP), Q = from_small(SQ);
    std::vector<std::size_t> f(P.size());
    for (auto& v : f) v = std::uniform_int_distribution<std::size_t>(0, Q.size() - 1)(rng);
    bool continuous = true;
    for (auto U : oracle::upper_sets(SQ)) {
      unsigned pre = 0;
      for (std::size_t p = 0; p < f.size(); ++p)
        if (U >> f[p] & 1u) pre |= 1u << p;
      auto ups = oracle::upper_sets(SP);
      if (!std::binary_search(ups.begin(), ups.end(), pre)) continuous = false;
    }
    EXPECT_EQ(is_monotone(f, P, Q), continuous);
  }
}

TEST(Topo, ProjectiveLine) {
  auto P = FinitePoset::from_labeled({"0", "1", "01"}, {{"0", "01"}, {"1", "01"}});
  auto r = topo_report(P);
  EXPECT_TRUE(r.is_T0);
  EXPECT_FALSE(r.is_T1);
  EXPECT_TRUE(r.is_connected);
}

TEST(Topo, DiscreteAndPoint) {
  auto r = topo_report(antichain({"a", "b"}));
  EXPECT_TRUE(r.is_T0 && r.is_T1);
  EXPECT_FALSE(r.is_connected);
  auto s = topo_report(antichain({"a"}));
  EXPECT_TRUE(s.is_T0 && s.is_T1 && s.is_connected);
}

TEST(Poset, RejectsCycle) {
  EXPECT_THROW(FinitePoset::from_labeled({"a", "b"}, {{"a", "b"}, {"b", "a"}}), InputError);
}

TEST(Hasse, DiskHasNineCoveringEdges) {
  auto P = disk_poset();
  EXPECT_EQ(hasse_edges(P).size(), 9u);
  EXPECT_EQ(strict_relations(P).size(), 12u);
}

TEST(OrderJson, RoundTrip) {
  auto P = disk_poset();
  auto j = to_json(P);
  EXPECT_EQ(poset_from_json(j), P);
  EXPECT_EQ(to_json(poset_from_json(j)), j);
}

TEST(OrderJson, ReflexivePairsOptional) {
  auto P = poset_from_json(json::parse(R"({"elements":["a","b"],"leq":[["a","b"]]})"));
  EXPECT_TRUE(P.leq(0, 0));
  EXPECT_TRUE(P.leq(0, 1));
  auto out = to_json(P);
  EXPECT_EQ(out["leq"].size(), 3u);
}

TEST(OrderJson, DotHasHasseEdges) {
  auto dot = to_dot(disk_poset());
  EXPECT_EQ(std::count(dot.begin(), dot.end(), '>'), 9);
}
