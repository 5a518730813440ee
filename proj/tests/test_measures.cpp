#include <random>

#include "doctest.h"
#include "monotile/measures.hpp"

using namespace monotile;

namespace {

Fraction pow_frac(Fraction const& q, std::size_t e) {
  Fraction r(1);
  for (std::size_t i = 0; i < e; ++i) {
    r *= q;
  }
  return r;
}

ManagedSequence constant(std::vector<std::vector<long>> rows, std::size_t len) {
  return ManagedSequence::from_matrices(
      std::vector<ManagedMatrix>(len, ManagedMatrix::from_rows(rows)));
}

}  // namespace

TEST_CASE("push") {
  auto M = ManagedMatrix::from_rows({{1, 2}, {2, 1}});
  auto y = push(M, SimplexPoint{{Fraction(1, 6), Fraction(1, 6)}, Integer(3)});
  CHECK(y.coords == std::vector<Fraction>{Fraction(1, 2), Fraction(1, 2)});
  CHECK(y.scale == 1);

  auto e2 = push(M, SimplexPoint{{Fraction(0), Fraction(1, 3)}, Integer(3)});
  CHECK(e2.coords == std::vector<Fraction>{Fraction(2, 3), Fraction(1, 3)});

  CHECK_THROWS_AS(push(M, SimplexPoint{{Fraction(1, 3)}, Integer(3)}), Error);
  CHECK_THROWS_AS(push(M, SimplexPoint{{Fraction(1, 4), Fraction(1, 4)}, Integer(2)}), Error);
  CHECK_THROWS_AS(push(M, SimplexPoint{{Fraction(1, 3), Fraction(1, 3)}, Integer(3)}), Error);
}

TEST_CASE("push keeps the scale on random points") {
  std::mt19937_64 rng(5);
  auto            M = ManagedMatrix::from_rows({{4, 0, 2}, {1, 3, 2}, {0, 2, 1}});
  REQUIRE(M.managed_violation().empty());
  std::uniform_int_distribution<long> w(0, 1000);
  for (int t = 0; t < 200; ++t) {
    long a = w(rng), b = w(rng), c = w(rng) + 1;
    Fraction s(a + b + c);
    // coordinates sum to 1/5
    SimplexPoint z{{Fraction(a) / (5 * s), Fraction(b) / (5 * s), Fraction(c) / (5 * s)}, Integer(5)};
    for (auto& x : z.coords) {
      x.canonicalize();
    }
    REQUIRE(in_simplex(z));
    auto y = push(M, z);
    CHECK(y.scale == 1);
    CHECK(in_simplex(y));
  }
}

TEST_CASE("approximants") {
  auto id  = constant({{3, 0}, {0, 3}}, 4);
  for (std::size_t d = 1; d <= 4; ++d) {
    auto a = approximate_limit(id, 0, d);
    CHECK(a.vertices[0].coords == std::vector<Fraction>{Fraction(1), Fraction(0)});
    CHECK(a.vertices[1].coords == std::vector<Fraction>{Fraction(0), Fraction(1)});
  }

  auto seq = constant({{2, 1}, {1, 2}}, 6);
  Fraction last(2);
  for (std::size_t d = 1; d <= 6; ++d) {
    auto a   = approximate_limit(seq, 0, d);
    auto eps = pow_frac(Fraction(1, 3), d);
    // closed form: w_1 = ((1 + 3^-d)/2, (1 - 3^-d)/2)
    CHECK(a.vertices[0].coords == std::vector<Fraction>{(1 + eps) / 2, (1 - eps) / 2});
    CHECK(a.vertices[1].coords == std::vector<Fraction>{(1 - eps) / 2, (1 + eps) / 2});
    auto h = hull_diameter(a);
    CHECK(h == 2 * eps);
    CHECK(h < last);
    last = h;
    auto cert = nesting_certificate(seq, 0, d);
    CHECK(cert.holds);
    // strictly inside: no depth-d vertex is a depth-(d-1) vertex
    for (auto const& lam : cert.lambdas) {
      for (auto const& l : lam) {
        CHECK(l > 0);
        CHECK(l < 1);
      }
    }
  }
  CHECK_THROWS_AS(approximate_limit(seq, 0, 7), Error);
  CHECK_THROWS_AS(approximate_limit(seq, 0, 0), Error);
  auto a = approximate_limit(seq, 2, 3);
  CHECK(a.scale == 9);
}

TEST_CASE("hull membership") {
  using V = std::vector<Fraction>;
  std::vector<V> square{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}, {1, 1, -1}};
  std::vector<Fraction> lam;
  CHECK(in_convex_hull(square, V{Fraction(1, 2), Fraction(1, 2), 0}, &lam));
  V back(3, Fraction(0));
  Fraction total(0);
  for (std::size_t i = 0; i < square.size(); ++i) {
    CHECK(lam[i] >= 0);
    total += lam[i];
    for (std::size_t c = 0; c < 3; ++c) {
      back[c] += lam[i] * square[i][c];
    }
  }
  CHECK(total == 1);
  CHECK(back == V{Fraction(1, 2), Fraction(1, 2), 0});
  CHECK(!in_convex_hull(square, V{Fraction(3, 2), Fraction(1, 2), -1}));
  CHECK(!in_convex_hull(square, V{1, 1, 1}));
  std::vector<V> seg{{0, 1}, {1, 0}, {0, 1}};
  CHECK(in_convex_hull(seg, V{Fraction(1, 4), Fraction(3, 4)}));
  CHECK(!in_convex_hull(seg, V{Fraction(-1, 4), Fraction(5, 4)}));
  CHECK(l1_distance(V{1, 0}, V{0, 1}) == 2);
}

TEST_CASE("subsequence grouping") {
  auto seq = constant({{2, 1}, {1, 2}}, 6);
  auto sel = select_subsequence_lemma8(seq, Fraction(1));
  CHECK(sel.indices == std::vector<std::size_t>{0, 2, 4, 6});
  CHECK(sel.tail == 0);
  for (auto const& G : sel.grouped) {
    CHECK(G == ManagedMatrix::from_rows({{5, 4}, {4, 5}}));
  }
  CHECK(lemma8_certificate(sel));

  auto big = constant({{4, 3}, {3, 4}}, 3);
  CHECK(select_subsequence_lemma8(big, Fraction(1)).indices == std::vector<std::size_t>{0, 1, 2, 3});

  try {
    (void)select_subsequence_lemma8(constant({{3, 0}, {0, 3}}, 5), Fraction(1));
    FAIL("expected exhausted");
  } catch (Error const& e) {
    CHECK(e.code() == ErrorCode::exhausted);
  }
  try {
    (void)select_subsequence_lemma8(seq, Fraction(1, 2));
    FAIL("expected hypothesis");
  } catch (Error const& e) {
    CHECK(e.code() == ErrorCode::hypothesis);
  }
  auto bad = sel;
  bad.grouped[0](0, 0) = 1;
  CHECK(!lemma8_certificate(bad));

  CHECK(positivity_horizon(seq) == std::optional<std::size_t>(1));
  CHECK(positivity_horizon(constant({{3, 1}, {0, 2}}, 4)) == std::nullopt);
}

TEST_CASE("incidence of a hierarchy") {
  auto L  = build_lattice_ladder(1, 3);
  auto ms = default_matrices(L);
  auto h  = build_hierarchy(L, ms);
  for (std::size_t n = 0; n < h.depth(); ++n) {
    auto I = incidence_from_hierarchy(h, n);
    CHECK(I == ms[n]);
    for (std::size_t j = 0; j < I.cols(); ++j) {
      CHECK(I.column_sum(j) == 3);
    }
  }
  CHECK_THROWS_AS(incidence_from_hierarchy(h, 3), Error);
}

TEST_CASE("managed sequences") {
  auto seq = constant({{2, 1}, {1, 2}}, 3);
  CHECK_NOTHROW(seq.check());
  CHECK(seq.scales == std::vector<Integer>{1, 3, 9, 27});
  auto bad = seq;
  bad.matrices[1](0, 0) = 3;
  CHECK_THROWS_AS(bad.check(), Error);
  auto shape = ManagedSequence::from_matrices(
      {ManagedMatrix::from_rows({{2, 1}, {1, 2}}), ManagedMatrix::from_rows({{1, 1}, {1, 1}, {1, 1}})});
  try {
    shape.check();
    FAIL("expected a dimension mismatch");
  } catch (Error const& e) {
    CHECK(e.code() == ErrorCode::dimension_mismatch);
  }
}

TEST_CASE("realization of finite simplices") {
  auto r = realize_finite_simplex(2, build_lattice_ladder(1, 6), Fraction(1, 100));
  CHECK(r.sequence.matrices[0] == ManagedMatrix::from_rows({{2, 1}, {1, 2}}));
  // displacement of each vertex at depth D is 2 * 3^-D
  CHECK(r.depth == 5);
  for (auto const& x : r.diameters) {
    CHECK(x == 2 * pow_frac(Fraction(1, 3), 5));
  }

  CHECK(realize_finite_simplex(2, {Integer(3)}, true, Fraction(1)).depth == 1);

  auto r3 = realize_finite_simplex(3, {Integer(5)}, true, Fraction(1, 1000));
  // displacement (4/5)(2/5)^(D-1): first <= 1/1000 at D = 9
  CHECK(r3.depth == 9);
  for (auto const& x : r3.diameters) {
    CHECK(x == Fraction(4, 5) * pow_frac(Fraction(2, 5), 8));
    CHECK(x <= Fraction(1, 1000));
  }
  CHECK(Fraction(4, 5) * pow_frac(Fraction(2, 5), 7) > Fraction(1, 1000));
  CHECK(cluster_diameters(r3.sequence, 0, 9) == r3.diameters);
  auto sel = select_subsequence_lemma8(r3.sequence, Fraction(1));
  CHECK(lemma8_certificate(sel));
  for (auto const& G : sel.grouped) {
    CHECK_NOTHROW(augment_matrix(G));
  }

  CHECK_THROWS_AS(realize_finite_simplex(3, {Integer(3)}, true, Fraction(1, 10)), Error);
  // a stationary ladder is extended; an explicit short ratio list is not
  CHECK(realize_finite_simplex(2, build_lattice_ladder(1, 2), Fraction(1, 1000)).depth == 7);
  try {
    (void)realize_finite_simplex(2, {Integer(3), Integer(3)}, false, Fraction(1, 1000));
    FAIL("expected insufficient depth");
  } catch (Error const& e) {
    CHECK(e.code() == ErrorCode::insufficient_depth);
  }
  try {
    (void)realize_finite_simplex(2, {Integer(3)}, true, Fraction(1, 1000000), 4);
    FAIL("expected exhausted");
  } catch (Error const& e) {
    CHECK(e.code() == ErrorCode::exhausted);
  }
}
