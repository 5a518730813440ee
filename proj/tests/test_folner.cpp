#include <algorithm>
#include <map>

#include "doctest.h"
#include "monotile/folner.hpp"

using namespace monotile;

namespace {

Element E(std::initializer_list<Rational> c) {
  return Element(c);
}

FiniteSubset interval(std::int64_t lo, std::int64_t hi) {
  std::vector<Element> v;
  for (auto i = lo; i <= hi; ++i) {
    v.push_back(E({i}));
  }
  return FiniteSubset(v);
}

FolnerLadder constant_ladder(GroupContext const& ctx, FiniteSubset const& F, std::size_t depth) {
  FolnerLadder L;
  L.ctx = ctx;
  L.levels.assign(depth + 1, F);
  L.glue.assign(depth, FiniteSubset{ctx.identity()});
  return L;
}

// Independent tiling test: every element of F_{n+1} is hit exactly once.
bool tiles(FolnerLadder const& L) {
  for (std::size_t n = 0; n < L.depth(); ++n) {
    std::map<Element, int> hits;
    for (auto const& c : L.glue[n]) {
      for (auto const& u : L.levels[n]) {
        hits[L.ctx.product(c, u)]++;
      }
    }
    if (hits.size() != L.levels[n + 1].size()) {
      return false;
    }
    for (auto const& [g, k] : hits) {
      if (k != 1 || !L.levels[n + 1].contains(g)) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST_CASE("right invariance defect") {
  auto Z = GroupContext::lattice(1);
  CHECK(right_invariance_defect(Z, interval(-1, 1), FiniteSubset{E({1})}) == Fraction(1, 3));
  CHECK(right_invariance_defect(Z, interval(-1, 1), FiniteSubset{E({0})}) == 0);
  CHECK(right_invariance_defect(Z, interval(-4, 4), FiniteSubset{E({-1}), E({1})}) == Fraction(2, 9));
  CHECK_THROWS_AS(right_invariance_defect(Z, FiniteSubset{}, FiniteSubset{E({1})}), Error);
}

TEST_CASE("folner defect") {
  auto Z = GroupContext::lattice(1);
  CHECK(folner_defect(Z, interval(-1, 1), E({1})) == Fraction(1, 3));
  CHECK(folner_defect(Z, interval(-1, 1), E({0})) == 0);
  auto C6 = GroupContext::cyclic(6);
  std::vector<Element> all;
  for (int i = 0; i < 6; ++i) {
    all.push_back(E({i}));
  }
  for (auto const& g : all) {
    CHECK(folner_defect(C6, FiniteSubset(all), g) == 0);
  }
  CHECK_THROWS_AS(folner_defect(Z, FiniteSubset{}, E({1})), Error);
}

TEST_CASE("lattice ladders") {
  auto L = build_lattice_ladder(1, 2);
  REQUIRE(L.levels.size() == 3);
  CHECK(L.levels[0] == interval(0, 0));
  CHECK(L.levels[1] == interval(-1, 1));
  CHECK(L.levels[2] == interval(-4, 4));
  CHECK(L.glue[1] == FiniteSubset{E({-3}), E({0}), E({3})});
  CHECK(check_congruent(L).pass);
  CHECK(tiles(L));
  auto L6 = build_lattice_ladder(1, 6);
  std::int64_t p = 1;
  for (auto const& F : L6.levels) {
    CHECK(F.size() == static_cast<std::size_t>(p));
    p *= 3;
  }
  auto L2 = build_lattice_ladder(2, 1);
  CHECK(L2.levels[1].size() == 9);
  CHECK(L2.glue[0].size() == 9);
  CHECK(tiles(build_lattice_ladder(2, 3)));
  CHECK(check_congruent(build_lattice_ladder(1, 3, 5)).pass);
}

TEST_CASE("congruence failures are reported") {
  auto L    = build_lattice_ladder(1, 1);
  L.glue[0] = FiniteSubset{E({0}), E({1}), E({2})};
  auto r    = check_congruent(L);
  CHECK(!r.pass);
  CHECK(r.level == 0);

  auto M    = build_lattice_ladder(1, 2);
  M.glue[1] = FiniteSubset{E({-2}), E({0}), E({3})};  // -2 + F_1 meets F_1
  auto s    = check_congruent(M);
  CHECK(!s.pass);
  CHECK(s.level == 1);
  CHECK(s.kind == "overlap");

  auto N    = build_lattice_ladder(1, 1);
  N.glue[0] = FiniteSubset{E({-1}), E({1}), E({2})};  // no identity
  CHECK(!check_congruent(N).pass);
}

TEST_CASE("pruefer ladders") {
  auto P = build_pruefer_ladder(2, 2);
  CHECK(P.levels[2] == FiniteSubset{E({0}), E({Rational(1, 4)}), E({Rational(1, 2)}), E({Rational(3, 4)})});
  CHECK(P.glue[0] == FiniteSubset{E({0}), E({Rational(1, 2)})});
  CHECK(P.glue[1] == FiniteSubset{E({0}), E({Rational(1, 4)})});
  CHECK(check_congruent(P).pass);
  for (std::size_t n = 0; n < P.levels.size(); ++n) {
    for (auto const& g : P.levels[n]) {
      CHECK(folner_defect(P.ctx, P.levels[n], g) == 0);
    }
  }

  // p = 3: F_0 = {0} forces J_0 = F_1; search all 3-subsets of the order-9
  // subgroup containing 0 for ones whose translates of F_0 give F_1.
  auto Q = build_pruefer_ladder(3, 1);
  REQUIRE(Q.levels[1].size() == 3);
  std::vector<FiniteSubset> admissible;
  for (int a = 1; a < 9; ++a) {
    for (int b = a + 1; b < 9; ++b) {
      FiniteSubset J{E({0}), E({Rational(a, 9)}), E({Rational(b, 9)})};
      FiniteSubset out;
      if (disjoint_product(Q.ctx, J, Q.levels[0], out) && out == Q.levels[1]) {
        admissible.push_back(J);
      }
    }
  }
  REQUIRE(admissible.size() == 1);
  CHECK(Q.glue[0] == admissible[0]);
  CHECK(Q.glue[0] == FiniteSubset{E({0}), E({Rational(1, 3)}), E({Rational(2, 3)})});
  CHECK_THROWS_AS(build_pruefer_ladder(4, 2), Error);
}

TEST_CASE("abelian chain ladders") {
  auto Qr = build_abelian_chain_ladder(GroupContext::rationals(), factorial_generators(3), 3);
  CHECK(check_congruent(Qr).pass);
  CHECK(tiles(Qr));
  CHECK(factorial_generators(3) == std::vector<Element>{E({1}), E({Rational(1, 2)}), E({Rational(1, 6)})});

  auto Z = build_abelian_chain_ladder(GroupContext::lattice(1), {E({1})}, 4);
  CHECK(check_congruent(Z).pass);
  CHECK(Z.levels.back().size() == 81);

  auto T = build_abelian_chain_ladder(GroupContext::trivial(), {}, 3);
  for (auto const& F : T.levels) {
    CHECK(F.size() == 1);
  }
  CHECK_THROWS_AS(build_abelian_chain_ladder(GroupContext::heisenberg3(), {E({1, 0, 0})}, 2), Error);
}

TEST_CASE("glue expansion, regrouping and exhaustion") {
  auto L = build_lattice_ladder(1, 4);
  for (std::size_t m = 1; m <= 4; ++m) {
    for (std::size_t n = 0; n < m; ++n) {
      auto         C = expand_glue(L, n, m);
      FiniteSubset out;
      CHECK(disjoint_product(L.ctx, C, L.levels[n], out));
      CHECK(out == L.levels[m]);
    }
  }
  auto R = regroup_ladder(L, {0, 2, 4});
  CHECK(R.depth() == 2);
  CHECK(R.ratio(0) == 9);
  CHECK(check_congruent(R).pass);
  CHECK_THROWS_AS(regroup_ladder(L, {0, 3, 2}), Error);

  auto ex = exhausts(L, {E({0}), E({5}), E({-40}), E({41})});
  CHECK(ex[0] == std::optional<std::size_t>(0));
  CHECK(ex[1] == std::optional<std::size_t>(3));
  CHECK(ex[2] == std::optional<std::size_t>(4));
  CHECK(!ex[3].has_value());

  auto inv = inverse_levels(build_lattice_ladder(1, 2));
  CHECK(inv[2] == interval(-4, 4));
}

TEST_CASE("exact sequence composition: heisenberg centre") {
  auto seq = heisenberg_center_sequence();
  auto tg  = default_heisenberg_targets(3);
  CHECK(tg[0].eps == Fraction(1, 2));
  CHECK(tg[2].eps == Fraction(1, 8));
  auto res = compose_exact_sequence(seq, tg);
  CHECK(check_congruent(res.ladder).pass);
  REQUIRE(res.ladder.depth() == 3);
  for (std::size_t s = 1; s <= 3; ++s) {
    auto d = right_invariance_defect(seq.G, res.ladder.levels[s], tg[s - 1].K);
    CHECK(d <= tg[s - 1].eps);
    CHECK(d == res.defects[s]);
  }
  for (std::size_t s = 1; s < res.t.size(); ++s) {
    CHECK(res.t[s] > res.t[s - 1]);
    CHECK(res.m[s] > res.m[s - 1]);
  }
}

TEST_CASE("exact sequence composition: degenerate factors") {
  auto Z    = GroupContext::lattice(1);
  auto triv = GroupContext::trivial();
  std::vector<InvarianceTarget> tg{{FiniteSubset{E({1})}, Fraction(1, 2)},
                                   {FiniteSubset{E({1})}, Fraction(1, 20)}};

  // Q trivial: a subsequence of the L ladder
  ExactSequence a;
  a.G          = Z;
  a.L          = build_lattice_ladder(1, 6);
  a.Q          = constant_ladder(triv, FiniteSubset{triv.identity()}, 6);
  a.section    = [&](Element const&) { return Z.identity(); };
  a.projection = [&](Element const&) { return triv.identity(); };
  auto ra      = compose_exact_sequence(a, tg);
  for (auto const& F : ra.ladder.levels) {
    CHECK(std::find(a.L.levels.begin(), a.L.levels.end(), F) != a.L.levels.end());
  }

  // L trivial: the lifted Q ladder
  ExactSequence b;
  b.G          = Z;
  b.L          = constant_ladder(Z, FiniteSubset{Z.identity()}, 6);
  b.Q          = build_lattice_ladder(1, 6);
  b.section    = [](Element const& q) { return q; };
  b.projection = [](Element const& g) { return g; };
  auto rb      = compose_exact_sequence(b, tg);
  for (auto const& F : rb.ladder.levels) {
    CHECK(std::find(b.Q.levels.begin(), b.Q.levels.end(), F) != b.Q.levels.end());
  }

  std::vector<InvarianceTarget> hard{{FiniteSubset{E({1})}, Fraction(1, 100000)}};
  CHECK_THROWS_AS(compose_exact_sequence(a, hard), Error);
}

TEST_CASE("virtual extensions") {
  auto C6 = GroupContext::cyclic(6);
  std::vector<Element> all;
  for (int i = 0; i < 6; ++i) {
    all.push_back(E({i}));
  }
  auto triv = GroupContext::trivial();
  auto ext  = GroupContext::finite_extension(C6, triv, all);
  auto V    = extend_virtually(ext, constant_ladder(triv, FiniteSubset{triv.identity()}, 3));
  for (auto const& F : V.levels) {
    CHECK(F == FiniteSubset(all));
  }

  auto ZxC2 = GroupContext::direct_product({GroupContext::lattice(1), GroupContext::cyclic(2)});
  auto v2   = GroupContext::finite_extension(ZxC2, GroupContext::lattice(1), {E({0, 0}), E({0, 1})});
  auto base = build_lattice_ladder(1, 3);
  auto W    = extend_virtually(v2, base);
  CHECK(check_congruent(W).pass);
  for (std::size_t n = 0; n < W.levels.size(); ++n) {
    CHECK(W.levels[n].size() == 2 * base.levels[n].size());
    // the C2 coordinate is invisible to the defect in the Z direction
    CHECK(folner_defect(ZxC2, W.levels[n], E({1, 0})) == folner_defect(base.ctx, base.levels[n], E({1})));
  }

  auto same = GroupContext::finite_extension(GroupContext::lattice(1), GroupContext::lattice(1), {E({0})});
  auto U    = extend_virtually(same, base);
  CHECK(U.levels == base.levels);
}
