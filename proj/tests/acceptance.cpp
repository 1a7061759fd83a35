// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "posetsheaf/posetsheaf.hpp"

using namespace posetsheaf;
namespace tz = posetsheaf::toeplitz;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

std::uint64_t factorial(unsigned n) { return n <= 1 ? 1 : n * factorial(n - 1); }

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

unsigned mask_of(const Bits& b) {
  unsigned m = 0;
  b.for_each([&](std::size_t i) { m |= 1u << i; });
  return m;
}

Outcome three_disks() {
  auto C = CoveringSpec::make({"A", "B", "C", "D", "E", "F", "G"},
                              {{"A", "B", "C", "F"}, {"A", "B", "D", "E"}, {"A", "C", "D", "G"}});
  auto S = partition_space(C);
  if (S.poset.size() != 7) return {false, std::to_string(S.poset.size()) + " classes"};
  std::set<std::pair<std::string, std::string>> expected;
  for (auto x : {"B", "C", "D", "E", "F", "G"}) expected.insert({"A", x});
  for (auto [p, q] : {std::pair{"B", "E"}, {"B", "F"}, {"C", "F"}, {"C", "G"}, {"D", "E"}, {"D", "G"}})
    expected.insert({p, q});
  std::set<std::pair<std::string, std::string>> got;
  for (auto [p, q] : strict_relations(S.poset)) got.insert({S.poset.label(p), S.poset.label(q)});
  if (got != expected) return {false, std::to_string(got.size()) + " relations differ from the figure"};
  auto X = xi(C);
  if (!X.ok()) return {false, "xi check failed"};
  // Order embedding checked directly against inclusion order in P^2.
  auto P2 = proj_poset(2);
  for (std::size_t p = 0; p < 7; ++p)
    for (std::size_t q = 0; q < 7; ++q)
      if (S.poset.leq(p, q) != P2.leq(proj_index(X.hat[q]), proj_index(X.hat[p])))
        return {false, "xi_hat is not an order embedding into the opposite order"};
  return {true, "7 classes, 12 relations, xi_hat embeds"};
}

Outcome free_sizes() {
  std::string d;
  for (unsigned n = 1; n <= 4; ++n) {
    auto t0 = Clock::now();
    auto L = free_distributive_lattice(n);
    double s = seconds_since(t0);
    auto want = oracle::dedekind(n) - 2;
    d += (n > 1 ? " " : "") + std::to_string(L.size());
    if (L.size() != want) return {false, "n=" + std::to_string(n) + ": " + std::to_string(L.size()) + " != " + std::to_string(want)};
    if (n == 4) {
      d += " (n=4 in " + fmt_seconds(s) + ")";
      if (s > 10) return {false, d};
    }
  }
  return {true, d};
}

DLattice lattice_of_sets(const std::vector<unsigned>& sets) {
  auto T = oracle::tables_of(sets);
  std::vector<std::string> labels;
  for (auto s : T.sets) labels.push_back("s" + std::to_string(s));
  return DLattice::from_tables(labels, {T.join.begin(), T.join.end()}, {T.meet.begin(), T.meet.end()});
}

Outcome birkhoff_roundtrip() {
  std::size_t exhaustive = 0, random = 0;
  auto check = [](const DLattice& L) {
    auto bp = birkhoff(L);
    return verify_birkhoff(bp) && are_isomorphic(reconstruct(bp), L);
  };
  for (const auto& P : oracle::naturally_labelled_posets(8)) {
    ++exhaustive;
    if (!check(lattice_of_sets(oracle::upper_sets(P))))
      return {false, "exhaustive family case " + std::to_string(exhaustive)};
  }
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<unsigned> subset(0, 31), nseeds(1, 4);
  for (; random < 100; ++random) {
    std::vector<unsigned> seeds;
    for (unsigned k = nseeds(rng); k > 0; --k) seeds.push_back(subset(rng));
    if (!check(lattice_of_sets(oracle::close_sets(seeds))))
      return {false, "random sublattice " + std::to_string(random)};
  }
  return {true, std::to_string(exhaustive) + " exhaustive + " + std::to_string(random) + " random"};
}

Outcome proj_topology() {
  for (std::size_t N = 1; N <= 6; ++N) {
    auto r = topo_report(proj_poset(N));
    if (!r.is_T0 || r.is_T1 || !r.is_connected) return {false, "topology at N=" + std::to_string(N)};
  }
  for (unsigned N = 1; N <= 3; ++N) {
    auto autos = oracle::proj_automorphisms(N);
    if (autos.size() != factorial(N + 1))
      return {false, std::to_string(autos.size()) + " homeomorphisms at N=" + std::to_string(N)};
    for (const auto& f : autos) {
      if (!oracle::is_permutation_form(f, N)) return {false, "non-permutation homeomorphism"};
      std::vector<std::size_t> g;
      for (unsigned m = 1; m < (1u << (N + 1)); ++m) g.push_back(f[m] - 1);
      if (!homeo_permutation(g, N)) return {false, "library rejects a homeomorphism"};
    }
  }
  return {true, "N=1..6 T0, not T1, connected; 2, 6, 24 homeomorphisms"};
}

Outcome r_morphism() {
  std::mt19937_64 rng(5);
  auto opens = all_opens(3);
  std::size_t pairs = 0;
  for (int model = 0; model < 50; ++model) {
    const unsigned g = 6;
    auto parts = oracle::random_covering(g, 4, rng);
    auto M = IdealCoveringModel::from_zero_sets(covering_of(parts, g));
    const auto& L = M.lattice();
    std::vector<Elem> R;
    for (const auto& U : opens) {
      R.push_back(R_of(U, M));
      std::vector<unsigned> ac;
      for (const auto& a : U.antichain) ac.push_back(static_cast<unsigned>(a.mask()));
      auto zs = L.set_of(R.back());
      if (!zs || mask_of(*zs) != oracle::zero_set_of_open(ac, parts, (1u << g) - 1))
        return {false, "R disagrees with the zero-set oracle in model " + std::to_string(model)};
    }
    for (std::size_t u = 0; u < opens.size(); ++u)
      for (std::size_t v = 0; v < opens.size(); ++v, ++pairs) {
        if (R_of(open_union(opens[u], opens[v]), M) != M.intersect(R[u], R[v]))
          return {false, "R(U u V) != R(U) n R(V) in model " + std::to_string(model)};
        if (R_of(open_intersection(opens[u], opens[v]), M) != M.sum(R[u], R[v]))
          return {false, "R(U n V) != R(U) + R(V) in model " + std::to_string(model)};
      }
  }
  return {true, "50 models, " + std::to_string(pairs) + " pairs"};
}

Outcome covering_sheaf() {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<unsigned> kdist(1, 4), gdist(3, 6);
  std::size_t opens_checked = 0;
  for (int model = 0; model < 50; ++model) {
    unsigned k = kdist(rng), g = gdist(rng);
    auto M = IdealCoveringModel::from_zero_sets(covering_of(oracle::random_covering(g, k, rng), g));
    std::size_t N = k - 1;
    auto F = covering_to_sheaf(M, N);
    if (!(sheaf_to_covering(F) == M)) return {false, "round trip changes model " + std::to_string(model)};
    for (const auto& U : all_opens(N)) {
      auto u = to_upper_set(U).members;
      auto v = check_sheaf_condition(F, u, basic_cover(F.base(), u));
      ++opens_checked;
      if (!v.holds) return {false, "sheaf condition fails in model " + std::to_string(model) + ": " + v.reason};
    }
  }
  return {true, "50 models, " + std::to_string(opens_checked) + " opens"};
}

// Points of P^N as masks whose support meets i.
unsigned basic_open_mask(std::size_t i, std::size_t N) {
  unsigned out = 0;
  for (unsigned m = 1; m < (1u << (N + 1)); ++m)
    if (i <= N && (m >> i & 1u)) out |= 1u << (m - 1);
  return out;
}

Outcome pushforward_law() {
  std::vector<std::pair<std::string, TameSurjection>> alphas = {{"id", TameSurjection::identity()},
                                                                {"boundary", TameSurjection::boundary()}};
  for (std::size_t a = 0; a < 5; ++a)
    for (std::size_t b = a + 1; b <= 5; ++b)
      alphas.push_back({"(" + std::to_string(a) + " " + std::to_string(b) + ")", TameSurjection::transposition(a, b)});
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> pick(0, 2);
  std::uniform_int_distribution<std::size_t> pos(0, 3);
  for (int s = 0; s < 20; ++s) {
    auto t = TameSurjection::identity();
    for (int step = 0; step < 3; ++step) {
      int c = pick(rng);
      std::size_t a = pos(rng), b = a + 1 + pos(rng) % 2;
      t = compose_tame(t, c == 0 ? TameSurjection::boundary() : TameSurjection::transposition(a, b));
    }
    alphas.push_back({"composite " + std::to_string(s), t});
  }
  std::size_t cases = 0;
  for (const auto& [name, alpha] : alphas)
    for (std::size_t N = 0; N <= 5; ++N) {
      const std::size_t Np = alpha.preimage_horizon(N);
      if (Np > 5) continue;
      // (alpha*)^{-1}(A_i) = A_{alpha(i)} on the points of P^N.
      for (std::size_t i = 0; i <= Np; ++i) {
        unsigned pre = 0;
        for (unsigned m = 1; m < (1u << (N + 1)); ++m) {
          auto img = act_tame(alpha, ProjPoint::from_mask(m));
          if (img.mask() >> i & 1u) pre |= 1u << (m - 1);
        }
        if (pre != basic_open_mask(alpha(i), N)) return {false, name + " breaks the index law at N=" + std::to_string(N)};
      }
      // Objects of the pushforward are F's objects at alpha(a).
      if (N > 3) continue;
      auto parts = oracle::random_covering(5, static_cast<unsigned>(N + 1), rng);
      auto M = std::make_shared<const IdealCoveringModel>(IdealCoveringModel::from_zero_sets(covering_of(parts, 5)));
      auto F = covering_to_sheaf(M, N);
      auto G = pushforward(alpha, F, Np);
      for (unsigned m = 1; m < (1u << (Np + 1)); ++m) {
        unsigned im = 0;
        bool outside = false;
        for (unsigned i = 0; i <= Np; ++i)
          if (m >> i & 1u) {
            if (alpha(i) > N) outside = true;
            else im |= 1u << alpha(i);
          }
        Elem want = outside ? M->whole() : F.object(im - 1);
        if (G.object(m - 1) != want) return {false, name + " relabels objects wrongly at N=" + std::to_string(N)};
      }
      ++cases;
    }
  return {true, std::to_string(alphas.size()) + " maps, " + std::to_string(cases) + " pushforwards"};
}

Outcome unipotent(tz::GluingConfig cfg = {}) {
  std::size_t checked = 0;
  auto t0 = Clock::now();
  for (std::size_t n = 1; n <= 4; ++n) {
    auto r = tz::verify_unipotent(n, 3, cfg);
    checked += r.checked;
    if (!r.ok) return {false, r.failure};
  }
  return {true, std::to_string(checked) + " basis tensors in " + fmt_seconds(seconds_since(t0))};
}

Outcome cocycle(tz::GluingConfig cfg = {}) {
  std::size_t checked = 0;
  auto t0 = Clock::now();
  for (std::size_t n = 2; n <= 3; ++n) {
    auto r = tz::verify_cocycle(n, 2, cfg);
    checked += r.checked;
    if (!r.ok) return {false, r.failure};
  }
  return {true, std::to_string(checked) + " classes in " + fmt_seconds(seconds_since(t0))};
}

tz::PullbackTuple<> one_dim(const tz::ToeplitzElem<>& a, const tz::ToeplitzElem<>& b) {
  using V = tz::MixedTensor<>::FactorElem;
  tz::PullbackTuple<> t;
  t.n = 1;
  t.components = {tz::MixedTensor<>::pure({V{a}}), tz::MixedTensor<>::pure({V{b}})};
  return t;
}

Outcome mirror(tz::GluingConfig cfg = {}) {
  bool good = tz::is_member(one_dim(tz::t_z(), tz::t_zstar()), cfg).member;
  bool bad = tz::is_member(one_dim(tz::t_z(), tz::t_z()), cfg).member;
  if (!good) return {false, "(z, z*) rejected"};
  if (bad) return {false, "(z, z) accepted"};
  return {true, "(z, z*) member, (z, z) not"};
}

Outcome extension() {
  std::mt19937_64 rng(11);
  const std::size_t n = 2;
  for (int s = 0; s < 200; ++s) {
    auto t = tz::random_member(n, rng);
    tz::Partial<> p;
    unsigned mask = std::uniform_int_distribution<unsigned>(1, 7)(rng);
    for (std::size_t i = 0; i <= n; ++i)
      if (mask >> i & 1u) p.emplace(i, t.components[i]);
    try {
      auto e = tz::extend_partial(p, n);
      for (const auto& [i, b] : p)
        if (e.components[i] != b) return {false, "extension changes a given component"};
    } catch (const Error& e) {
      return {false, std::string("compatible family rejected: ") + e.what()};
    }
  }
  for (int s = 0; s < 50; ++s) {
    auto t = tz::random_member(n, rng);
    tz::Partial<> p;
    // Two or three components: {0,1}, {0,2}, {1,2} or all.
    const std::vector<unsigned> choices = {3, 5, 6, 7};
    unsigned mask = choices[std::uniform_int_distribution<std::size_t>(0, 3)(rng)];
    for (std::size_t i = 0; i <= n; ++i)
      if (mask >> i & 1u) p.emplace(i, t.components[i]);
    auto it = std::next(p.begin(), std::uniform_int_distribution<std::ptrdiff_t>(0, p.size() - 1)(rng));
    it->second += tz::random_monomial_tensor(n, rng);
    try {
      tz::extend_partial(p, n);
      return {false, "incompatible family accepted"};
    } catch (const DomainError& e) {
      if (std::string(e.what()).find("pair (") == std::string::npos) return {false, "error names no pair"};
    }
  }
  return {true, "200 compatible extended, 50 incompatible rejected with a pair"};
}

Outcome freeness() {
  std::string d;
  for (std::size_t n = 1; n <= 3; ++n) {
    auto t0 = Clock::now();
    auto r = tz::verify_freeness(n);
    double s = seconds_since(t0);
    if (!r.pass()) {
      std::string why = !r.gluing_ok ? "gluing" : !r.ordered ? r.order_failure : "probe";
      for (const auto& p : r.probes)
        if (!p.ok()) why = p.failure;
      return {false, "N=" + std::to_string(n) + ": " + why};
    }
    if (r.join_elements != (std::size_t{1} << (n + 1)) - 2) return {false, "wrong number of intersections"};
    d += (n > 1 ? ", " : "") + std::string("N=") + std::to_string(n) + " " + std::to_string(r.probes.size()) +
         " probes " + fmt_seconds(s);
    if (n == 3 && s > 120) return {false, d};
  }
  return {true, d};
}

Outcome mutation() {
  tz::GluingConfig cfg{false};
  std::vector<std::string> broken;
  if (!unipotent(cfg).ok) broken.push_back("unipotency");
  if (!cocycle(cfg).ok) broken.push_back("cocycle");
  if (!mirror(cfg).ok) broken.push_back("mirror");
  if (broken.empty()) return {false, "no check notices the missing antipode"};
  std::string d = "broken without antipode:";
  for (const auto& b : broken) d += " " + b;
  return {true, d};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"three-disk partition space", three_disks},
      {"free distributive lattice sizes", free_sizes},
      {"Birkhoff round trip", birkhoff_roundtrip},
      {"P^N topology and homeomorphisms", proj_topology},
      {"R is a lattice morphism", r_morphism},
      {"covering/sheaf round trip", covering_sheaf},
      {"pushforward index law", pushforward_law},
      {"unipotency", [] { return unipotent(); }},
      {"cocycle", [] { return cocycle(); }},
      {"mirror sphere", [] { return mirror(); }},
      {"extension", extension},
      {"freeness", freeness},
      {"antipode mutation", mutation},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.ok) ++failed;
    std::printf("%s %2zu %s: %s\n", o.ok ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
