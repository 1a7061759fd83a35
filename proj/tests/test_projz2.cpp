#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "posetsheaf/projz2.hpp"
#include "posetsheaf/projz2_io.hpp"

using namespace posetsheaf;

namespace {

using Idx = std::vector<std::size_t>;

std::vector<ProjPoint> members(const OpenSetRep& U) {
  std::vector<ProjPoint> out;
  for (std::uint64_t m = 1; m < (std::uint64_t{1} << (U.horizon + 1)); ++m)
    if (U.contains_mask(m)) out.push_back(ProjPoint::from_mask(m));
  return out;
}

// Random monotone map P^N -> P^M in proj indices: images of larger
// supports contain the images of their subsets.
std::vector<std::size_t> random_monotone(std::size_t N, std::size_t M, std::mt19937_64& rng) {
  const std::uint64_t count = (std::uint64_t{1} << (N + 1)) - 1;
  const std::uint64_t top = (std::uint64_t{1} << (M + 1)) - 1;
  std::vector<std::uint64_t> img(count + 1, 0);
  std::vector<std::uint64_t> order;
  for (std::uint64_t m = 1; m <= count; ++m) order.push_back(m);
  std::sort(order.begin(), order.end(), [](auto a, auto b) { return std::popcount(a) < std::popcount(b); });
  std::uniform_int_distribution<std::uint64_t> any(1, top), bit(0, 1);
  for (auto m : order) {
    std::uint64_t lo = 0;
    for (std::uint64_t s = (m - 1) & m; s; s = (s - 1) & m) lo |= img[s];
    std::uint64_t v = lo ? lo : any(rng);
    for (std::size_t i = 0; i <= M; ++i)
      if (bit(rng) && bit(rng)) v |= std::uint64_t{1} << i;
    img[m] = v;
  }
  std::vector<std::size_t> f;
  for (std::uint64_t m = 1; m <= count; ++m) f.push_back(static_cast<std::size_t>(img[m] - 1));
  return f;
}

}  // namespace

TEST(ProjPoset, Sizes) {
  EXPECT_EQ(proj_poset(0).size(), 1u);
  EXPECT_EQ(proj_poset(2).size(), 7u);
  for (std::size_t N = 0; N <= 10; ++N) EXPECT_EQ(proj_poset(N).size(), (std::size_t{1} << (N + 1)) - 1);
}

TEST(ProjPoset, LineOrder) {
  auto P = proj_poset(1);
  ASSERT_EQ(P.size(), 3u);
  auto a = proj_index(ProjPoint::of({0})), b = proj_index(ProjPoint::of({1})), ab = proj_index(ProjPoint::of({0, 1}));
  EXPECT_TRUE(P.less(a, ab));
  EXPECT_TRUE(P.less(b, ab));
  EXPECT_FALSE(P.leq(a, b));
}

TEST(ProjPoset, HorizonBound) { EXPECT_THROW(proj_poset(21), ResourceError); }

TEST(ProjPoset, Topology) {
  for (std::size_t N = 1; N <= 6; ++N) {
    auto r = topo_report(proj_poset(N));
    EXPECT_TRUE(r.is_T0);
    EXPECT_FALSE(r.is_T1);
    EXPECT_TRUE(r.is_connected);
  }
}

TEST(BasicOpen, Members) {
  EXPECT_EQ(members(basic_open({0}, 1)), (std::vector<ProjPoint>{ProjPoint::of({0}), ProjPoint::of({0, 1})}));
  EXPECT_EQ(members(basic_open({0, 1}, 1)), (std::vector<ProjPoint>{ProjPoint::of({0, 1})}));
}

TEST(BasicOpen, IntersectionOfAi) {
  EXPECT_EQ(open_intersection(basic_open({0}, 2), basic_open({1}, 2)), basic_open({0, 1}, 2));
}

TEST(BasicOpen, EmptyIndexSetIsInputError) { EXPECT_THROW(basic_open({}, 2), InputError); }

TEST(PhiEmbed, KeepsSupport) {
  EXPECT_EQ(phi_embed(ProjPoint::of({0, 2}), 2), ProjPoint::of({0, 2}));
  EXPECT_THROW(phi_embed(ProjPoint::of({0, 3}), 2), InputError);
}

TEST(PhiEmbed, PreimagesOfBasicOpens) {
  EXPECT_TRUE(phi_preimage(basic_open({3}, 3)).empty());
  EXPECT_EQ(phi_preimage(basic_open({1}, 3)), basic_open({1}, 2));
}

TEST(Tame, BoundaryActsByPreimage) {
  EXPECT_EQ(act_tame(TameSurjection::boundary(), ProjPoint::of({0})), ProjPoint::of({0, 1}));
  EXPECT_EQ(act_tame(TameSurjection::identity(), ProjPoint::of({1, 4})), ProjPoint::of({1, 4}));
  EXPECT_EQ(act_tame(TameSurjection::transposition(0, 1), ProjPoint::of({0, 2})), ProjPoint::of({1, 2}));
}

TEST(Tame, Compositions) {
  auto d = TameSurjection::boundary();
  EXPECT_EQ(compose_tame(d, TameSurjection::identity()), d);
  EXPECT_EQ(act_tame(compose_tame(d, d), ProjPoint::of({0})), ProjPoint::of({0, 1, 2}));
  auto s = TameSurjection::transposition(0, 1);
  EXPECT_EQ(compose_tame(s, s), TameSurjection::identity());
}

TEST(Tame, CompositionActsContravariantly) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> kind(0, 1);
  std::uniform_int_distribution<std::size_t> pos(0, 4);
  auto random_tame = [&] {
    auto t = TameSurjection::identity();
    for (int k = 0; k < 3; ++k) {
      std::size_t a = pos(rng), b = a + 1 + pos(rng);
      t = compose_tame(t, kind(rng) ? TameSurjection::boundary() : TameSurjection::transposition(a, b));
    }
    return t;
  };
  for (int s = 0; s < 100; ++s) {
    auto a = random_tame(), b = random_tame();
    auto ab = compose_tame(a, b);
    for (std::size_t i = 0; i < 20; ++i) EXPECT_EQ(ab(i), a(b(i)));
    for (std::uint64_t m = 1; m < 64; ++m) {
      auto p = ProjPoint::from_mask(m);
      EXPECT_EQ(act_tame(ab, p), act_tame(b, act_tame(a, p)));
    }
  }
}

TEST(Tame, ActionIsMonotone) {
  auto t = compose_tame(TameSurjection::boundary(), TameSurjection::transposition(1, 3));
  for (std::uint64_t a = 1; a < 32; ++a)
    for (std::uint64_t b = 1; b < 32; ++b)
      if ((a & ~b) == 0) {
        EXPECT_TRUE(act_tame(t, ProjPoint::from_mask(a)).subset_of(act_tame(t, ProjPoint::from_mask(b))));
      }
}

TEST(Tame, RejectsNonSurjection) {
  EXPECT_THROW(TameSurjection::make({1, 1}, 0), InputError);
  EXPECT_THROW(TameSurjection::make({0}, 2), InputError);
}

TEST(FromLattice, IdentityMorphism) {
  std::vector<OpenSetRep> X = {basic_open({0}, 2), basic_open({1}, 2), basic_open({2}, 2)};
  auto f = function_from_lattice_morphism(X, 2, 2);
  for (std::size_t p = 0; p < f.size(); ++p) EXPECT_EQ(f[p], p);
}

TEST(FromLattice, SwapAndConstant) {
  auto f = function_from_lattice_morphism({basic_open({1}, 1), basic_open({0}, 1)}, 1, 1);
  auto i0 = proj_index(ProjPoint::of({0})), i1 = proj_index(ProjPoint::of({1})), i01 = proj_index(ProjPoint::of({0, 1}));
  EXPECT_EQ(f[i0], i1);
  EXPECT_EQ(f[i1], i0);
  EXPECT_EQ(f[i01], i01);
  auto g = function_from_lattice_morphism({whole_space(1), whole_space(1)}, 1, 1);
  for (auto v : g) EXPECT_EQ(v, i01);
}

TEST(FromLattice, UncoveredPointIsDomainError) {
  try {
    function_from_lattice_morphism({basic_open({0}, 1), basic_open({0}, 1)}, 1, 1);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("{1}"), std::string::npos);
  }
}

TEST(FromLattice, UniquenessOnMonotoneMaps) {
  std::mt19937_64 rng(29);
  for (std::size_t N = 0; N <= 3; ++N)
    for (std::size_t M = 0; M <= 3; ++M)
      for (int s = 0; s < 10; ++s) {
        auto f = random_monotone(N, M, rng);
        EXPECT_TRUE(is_monotone(f, proj_poset(N), proj_poset(M)));
        EXPECT_EQ(function_from_lattice_morphism(preimage_morphism(f, N, M), N, M), f);
      }
}

TEST(Homeo, IdentityAndSwap) {
  std::vector<std::size_t> id = {0, 1, 2};
  EXPECT_EQ(homeo_permutation(id, 1), (Idx{0, 1}));
  auto i0 = proj_index(ProjPoint::of({0})), i1 = proj_index(ProjPoint::of({1})), i01 = proj_index(ProjPoint::of({0, 1}));
  std::vector<std::size_t> f(3);
  f[i0] = i1;
  f[i1] = i0;
  f[i01] = i01;
  EXPECT_EQ(homeo_permutation(f, 1), (Idx{1, 0}));
}

TEST(Homeo, NonInjectiveIsAbsent) {
  std::vector<std::size_t> f = {2, 2, 2};
  EXPECT_FALSE(homeo_permutation(f, 1).has_value());
}

TEST(Homeo, BruteForceCountIsFactorial) {
  const std::size_t fact[] = {1, 2, 6, 24};
  for (unsigned N = 0; N <= 3; ++N) {
    auto autos = oracle::proj_automorphisms(N);
    EXPECT_EQ(autos.size(), fact[N]);
    for (const auto& a : autos) {
      EXPECT_TRUE(oracle::is_permutation_form(a, N));
      std::vector<std::size_t> f;
      for (unsigned m = 1; m < (1u << (N + 1)); ++m) f.push_back(a[m] - 1);
      auto sigma = homeo_permutation(f, N);
      ASSERT_TRUE(sigma.has_value());
      for (unsigned m = 1; m < (1u << (N + 1)); ++m) {
        std::uint64_t pre = 0;
        for (unsigned j = 0; j <= N; ++j)
          if (m >> (*sigma)[j] & 1u) pre |= 1u << j;
        EXPECT_EQ(a[m], pre);
      }
    }
  }
}

TEST(ProjJson, RoundTrips) {
  auto p = ProjPoint::of({0, 2});
  EXPECT_EQ(point_from_json(to_json(p)), p);
  auto U = open_from_json(json::parse(R"({"horizon":2,"antichain":[[0],[1,2]]})"));
  EXPECT_EQ(open_from_json(to_json(U)), U);
  EXPECT_EQ(to_json(open_from_json(to_json(U))), to_json(U));
  auto t = tame_from_json(json::parse(R"({"head":{"0":0,"1":0,"2":1},"tail_offset":1})"));
  EXPECT_EQ(t(0), 0u);
  EXPECT_EQ(t(1), 0u);
  EXPECT_EQ(t(2), 1u);
  EXPECT_EQ(t(5), 4u);
  EXPECT_EQ(tame_from_json(to_json(t)), t);
}

TEST(ProjJson, BadInput) {
  EXPECT_THROW(point_from_json(json::parse(R"({"support":[]})")), InputError);
  EXPECT_THROW(open_from_json(json::parse(R"({"horizon":1,"antichain":[[0,3]]})")), InputError);
  EXPECT_THROW(tame_from_json(json::parse(R"({"head":{"1":0},"tail_offset":0})")), InputError);
}
