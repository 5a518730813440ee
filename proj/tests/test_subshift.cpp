#include <set>

#include "doctest.h"
#include "monotile/subshift.hpp"

using namespace monotile;

namespace {

Element E(std::initializer_list<Rational> c) {
  return Element(c);
}

BlockHierarchy ternary(std::size_t depth) {
  auto L = build_lattice_ladder(1, depth);
  return build_hierarchy(L, default_matrices(L));
}

std::vector<BlockHierarchy> shipped() {
  std::vector<FolnerLadder> ladders{
      build_lattice_ladder(1, 3), build_lattice_ladder(2, 3),
      regroup_ladder(build_pruefer_ladder(2, 8), {0, 2, 4, 6, 8}),
      build_abelian_chain_ladder(GroupContext::rationals(), factorial_generators(3), 3)};
  std::vector<BlockHierarchy> out;
  for (auto const& L : ladders) {
    out.push_back(build_hierarchy(L, default_matrices(L)));
  }
  return out;
}

}  // namespace

TEST_CASE("coset addresses") {
  auto L = build_lattice_ladder(1, 3);
  auto a = address(L, E({4}), 0, 2);
  CHECK(a.digits == std::vector<Element>{E({3}), E({1})});
  CHECK(a.residual == E({0}));
  auto b = address(L, E({-2}), 0, 2);
  CHECK(b.digits == std::vector<Element>{E({-3}), E({1})});
  CHECK(b.residual == E({0}));
  auto z = address(L, E({0}), 0, 3);
  CHECK(z.digits == std::vector<Element>(3, E({0})));
  CHECK(z.residual == E({0}));
  CHECK_THROWS_AS(address(L, E({5}), 0, 2), Error);

  std::set<std::pair<std::vector<Element>, Element>> seen;
  for (auto const& v : L.levels[3]) {
    auto ad = address(L, v, 1, 3);
    CHECK(reassemble(L.ctx, ad) == v);
    CHECK(L.levels[1].contains(ad.residual));
    seen.insert({ad.digits, ad.residual});
  }
  CHECK(seen.size() == L.levels[3].size());

  auto H  = build_lattice_ladder(2, 2);
  auto ad = address(H, E({4, -2}), 0, 2);
  CHECK(reassemble(H.ctx, ad) == E({4, -2}));
}

TEST_CASE("return times") {
  auto h = ternary(3);
  CHECK(return_times(h, 0, 1) == FiniteSubset{E({-1}), E({0}), E({1})});
  for (std::size_t m = 1; m <= 3; ++m) {
    CHECK(return_times(h, m - 1, m) == h.ladder.glue[m - 1]);
  }
  std::vector<Element> sums;
  for (int j1 : {-3, 0, 3}) {
    for (int j0 : {-1, 0, 1}) {
      sums.push_back(E({j1 + j0}));
    }
  }
  CHECK(return_times(h, 0, 2) == FiniteSubset(sums));
  CHECK_THROWS_AS(return_times(h, 0, 4), Error);
}

TEST_CASE("pattern scan agrees with the return-time oracle") {
  for (auto const& h : shipped()) {
    for (std::size_t m = 1; m <= 3; ++m) {
      for (std::size_t n = 0; n < m; ++n) {
        auto R = return_times(h, n, m);
        CHECK(scan_occurrences(h, n, m) == R);
        CHECK(R.size() * h.ladder.levels[n].size() == h.ladder.levels[m].size());
      }
    }
  }
}

TEST_CASE("a flipped symbol is seen by the scan and by the partition check") {
  auto h     = ternary(3);
  auto patch = x0_patch(h, 3);
  // 9 + F_2 is a non-identity cell of F_3; change the symbol at 9
  auto i = patch.support.index_of(E({9}));
  REQUIRE(i < patch.support.size());
  patch.symbols[i] = patch.symbols[i] == 1 ? 2 : 1;
  auto R = return_times(h, 2, 3);
  CHECK(scan_occurrences(h, 2, 3, &patch) != R);
  CHECK(scan_occurrences(h, 2, 3, &patch).size() < R.size());
  CHECK(!check_partitions(h, 0, 3, &patch).pass());
}

TEST_CASE("Kakutani-Rokhlin partitions") {
  for (auto const& h : shipped()) {
    for (std::size_t n : {0u, 1u}) {
      for (std::size_t m : {2u, 3u}) {
        if (m < n + 2) {
          continue;
        }
        auto r = check_partitions(h, n, m);
        CHECK(r.pass());
        CHECK(r.witnesses.empty());
      }
    }
  }
  auto h = ternary(3);
  auto r = check_partitions(h, 0, 2);
  // F_0 = {0}: every position of F_2 is interior
  CHECK(r.interior == h.ladder.levels[2].size());
  CHECK_THROWS_AS(check_partitions(h, 1, 2), Error);

  // send a non-identity cell of B_{2,2} to block 1 (breaking C2); the
  // stored blocks no longer follow the gluing data and KR2 notices
  auto  g  = h;
  auto& m  = g.assignments[1].maps[1];
  auto  id = g.ladder.glue[1].index_of(g.ladder.ctx.identity());
  m[id == 0 ? 1 : 0] = 1;
  CHECK(!check_structure(g).empty());
  auto bad = check_partitions(g, 1, 3);
  CHECK(!bad.kr2);
  CHECK(!bad.witnesses.empty());
}

TEST_CASE("boundary mass") {
  auto L = build_lattice_ladder(1, 3);
  CHECK(boundary_mass_bound(L, E({1}), 2) == Fraction(1, 9));
  CHECK(boundary_mass_bound(L, E({0}), 2) == 0);
  for (std::size_t n = 0; n <= 3; ++n) {
    // F_n \ (F_n + 1) is the single left end point
    Fraction expect(1);
    for (std::size_t i = 0; i < n; ++i) {
      expect /= 3;
    }
    CHECK(boundary_mass_bound(L, E({1}), n) == expect);
  }
  auto P = build_pruefer_ladder(2, 5);
  for (std::size_t n = 0; n <= 5; ++n) {
    for (auto const& g : P.levels[n]) {
      CHECK(boundary_mass_bound(P, g, n) == 0);
    }
  }
}

TEST_CASE("syndetic returns") {
  auto h = ternary(3);
  auto r = syndeticity_window(h, 1, 3);
  CHECK(r.covered);
  CHECK(r.returns > 0);
  CHECK(r.gap_radius <= r.diameter);
  auto d = syndeticity_window(h, 2, 3);
  CHECK(d.covered);
  for (auto const& g : shipped()) {
    auto s = syndeticity_window(g, 1, 3);
    CHECK(s.covered);
    CHECK(s.gap_radius <= s.diameter);
  }
  CHECK_THROWS_AS(syndeticity_window(h, 0, 3), Error);
}
