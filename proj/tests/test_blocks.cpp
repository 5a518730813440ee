#include "doctest.h"
#include "monotile/blocks.hpp"

using namespace monotile;

namespace {

Element E(std::initializer_list<Rational> c) {
  return Element(c);
}

// How many cells c F_n of block j carry block i, computed from Pattern::at.
std::size_t count_cells(BlockHierarchy const& h, std::size_t n, std::size_t i, std::size_t j) {
  auto const& ctx  = h.ladder.ctx;
  auto const& Fn   = h.ladder.levels[n];
  auto const& lowB = h.families[n][i];
  auto const& up   = h.families[n + 1][j];
  std::size_t hits = 0;
  for (auto const& c : h.ladder.glue[n]) {
    bool same = true;
    for (auto const& u : Fn) {
      same = same && up.at(ctx.product(c, u)) == lowB.at(u);
    }
    hits += same;
  }
  return hits;
}

void check_counts(BlockHierarchy const& h) {
  for (std::size_t n = 0; n < h.depth(); ++n) {
    auto const& M = h.matrices[n];
    for (std::size_t i = 0; i < M.rows(); ++i) {
      for (std::size_t j = 0; j < M.cols(); ++j) {
        CHECK(Integer(static_cast<unsigned long>(count_cells(h, n, i, j))) == M(i, j));
      }
    }
  }
}

}  // namespace

TEST_CASE("base blocks") {
  auto Z  = GroupContext::lattice(1);
  auto B0 = base_blocks(3, Z, FiniteSubset{E({0})});
  REQUIRE(B0.size() == 3);
  for (int k = 0; k < 3; ++k) {
    CHECK(B0[k].symbols == std::vector<int>{k + 1});
  }
  auto B1 = base_blocks(3, Z, FiniteSubset{E({0}), E({1})});
  CHECK(B1[1].at(E({0})) == 2);
  CHECK(B1[1].at(E({1})) == 0);
  for (auto const& b : B1) {
    CHECK(b.at(E({1})) == 0);
  }
  CHECK_THROWS_AS(base_blocks(2, Z, FiniteSubset{E({0})}), Error);
}

TEST_CASE("assemble one level") {
  auto       L   = build_lattice_ladder(1, 1);
  auto       fam = base_blocks(3, L.ctx, L.levels[0]);
  Assignment a{0, {{2, 1, 2}, {2, 1, 3}}};  // J_0 = {-1, 0, 1}
  auto       up = assemble_level(L.ctx, fam, L.levels[0], L.glue[0], a);
  REQUIRE(up.size() == 2);
  CHECK(up[0].symbols == std::vector<int>{2, 1, 2});
  CHECK(up[1].symbols == std::vector<int>{2, 1, 3});
  CHECK(up[0].at(E({0})) == 1);
  CHECK(!(up[0] == up[1]));

  Assignment bad_c1{0, {{2, 2, 2}}};
  CHECK_THROWS_AS(assemble_level(L.ctx, fam, L.levels[0], L.glue[0], bad_c1), Error);
  Assignment bad_c2{0, {{1, 1, 2}}};
  CHECK_THROWS_AS(assemble_level(L.ctx, fam, L.levels[0], L.glue[0], bad_c2), Error);
  Assignment dup{0, {{2, 1, 3}, {2, 1, 3}}};
  CHECK_THROWS_AS(assemble_level(L.ctx, fam, L.levels[0], L.glue[0], dup), Error);
}

TEST_CASE("assignments from count matrices") {
  auto L = build_lattice_ladder(1, 1, 9);  // |J_0| = 9
  REQUIRE(L.ratio(0) == 9);
  auto Mt = ManagedMatrix::from_rows({{1, 1, 1}, {4, 4, 3}, {4, 4, 5}});
  auto a  = assignment_from_matrix(Mt, L.ctx, L.glue[0], 3);
  auto id = L.glue[0].index_of(L.ctx.identity());
  for (std::size_t k = 0; k < 3; ++k) {
    std::size_t count[4] = {0, 0, 0, 0};
    for (auto v : a.maps[k]) {
      count[v]++;
    }
    CHECK(a.maps[k][id] == 1);
    CHECK(count[1] == 1);
    CHECK(Integer(static_cast<unsigned long>(count[2])) == Mt(1, k));
    CHECK(Integer(static_cast<unsigned long>(count[3])) == Mt(2, k));
  }
  // equal first two columns, yet different placements
  CHECK(a.maps[0] != a.maps[1]);
  // deterministic
  CHECK(assignment_from_matrix(Mt, L.ctx, L.glue[0], 3).maps == a.maps);

  auto off = ManagedMatrix::from_rows({{1, 1, 1}, {4, 4, 3}, {4, 5, 5}});
  CHECK_THROWS_AS(assignment_from_matrix(off, L.ctx, L.glue[0], 3), Error);

  // a single identity cell admits one column only
  FolnerLadder T;
  T.ctx    = GroupContext::lattice(1);
  T.levels = {FiniteSubset{E({0})}, FiniteSubset{E({0})}};
  T.glue   = {FiniteSubset{E({0})}};
  auto one = ManagedMatrix::from_rows({{1}, {0}, {0}});
  CHECK(assignment_from_matrix(one, T.ctx, T.glue[0], 3).maps.size() == 1);
  auto two = ManagedMatrix::from_rows({{1, 1}, {0, 0}, {0, 0}});
  try {
    (void)assignment_from_matrix(two, T.ctx, T.glue[0], 3);
    FAIL("expected a distinctness error");
  } catch (Error const& e) {
    CHECK(e.code() == ErrorCode::distinctness);
  }
}

TEST_CASE("C3") {
  auto L = build_lattice_ladder(1, 3);
  auto h = build_hierarchy(L, default_matrices(L));
  for (std::size_t n = 0; n <= h.depth(); ++n) {
    CHECK(verify_C3(L.ctx, h.families[n], h.ladder.levels[n]).pass);
  }
  CHECK(verify_C3(L.ctx, base_blocks(5, L.ctx, L.levels[0]), L.levels[0]).pass);

  Family twins{h.families[1][0], h.families[1][0], h.families[1][1]};
  auto   r = verify_C3(L.ctx, twins, h.ladder.levels[1]);
  CHECK(!r.pass);
  REQUIRE(r.g.has_value());
  CHECK(*r.g == L.ctx.identity());
  CHECK(r.k == 1);
  CHECK(r.k2 == 2);

  // a block that is a shift of another also breaks C3
  FiniteSubset F{E({0}), E({1})};
  Family       shifted{Pattern{F, {1, 0}}, Pattern{F, {0, 1}}};
  auto         s = verify_C3(L.ctx, shifted, F);
  CHECK(!s.pass);
  CHECK(*s.g != L.ctx.identity());
}

TEST_CASE("augmentation") {
  auto M  = ManagedMatrix::from_rows({{5, 4}, {4, 5}});
  auto Mt = augment_matrix(M);
  CHECK(Mt == ManagedMatrix::from_rows({{1, 1, 1}, {4, 4, 3}, {4, 4, 5}}));
  for (std::size_t j = 0; j < Mt.cols(); ++j) {
    CHECK(Mt.column_sum(j) == 9);
  }
  CHECK(satisfies_slack_bounds(Mt));
  CHECK(Mt.managed_violation().empty());
  try {
    (void)augment_matrix(ManagedMatrix::from_rows({{2, 1}, {1, 2}}));
    FAIL("expected an augmentation error");
  } catch (Error const& e) {
    CHECK(e.code() == ErrorCode::augmentation);
  }
}

TEST_CASE("default matrices") {
  CHECK(ternary_default_matrix() == ManagedMatrix::from_rows({{1, 1, 1}, {2, 1, 0}, {0, 1, 2}}));
  auto G = generic_default_matrix(5);
  CHECK(G.ratio() == 5);
  CHECK(G.managed_violation().empty());
  CHECK(G(0, 0) == 1);
  CHECK_THROWS_AS(generic_default_matrix(2), Error);
}

TEST_CASE("hierarchies over the shipped ladders") {
  std::vector<FolnerLadder> ladders{
      build_lattice_ladder(1, 3), build_lattice_ladder(2, 2),
      regroup_ladder(build_pruefer_ladder(2, 8), {0, 2, 4, 6, 8}),
      build_abelian_chain_ladder(GroupContext::rationals(), factorial_generators(3), 3)};
  for (auto const& L : ladders) {
    auto h = build_hierarchy(L, default_matrices(L));
    CHECK(check_structure(h).empty());
    check_counts(h);
    for (std::size_t n = 0; n <= h.depth(); ++n) {
      CHECK(verify_C3(L.ctx, h.families[n], h.ladder.levels[n]).pass);
      for (std::size_t a = 0; a < h.families[n].size(); ++a) {
        for (std::size_t b = a + 1; b < h.families[n].size(); ++b) {
          CHECK(!(h.families[n][a] == h.families[n][b]));
        }
      }
    }
    // x_0 patches nest and equal the first block
    for (std::size_t n = 0; n < h.depth(); ++n) {
      auto const& up = x0_patch(h, n + 1);
      CHECK(read_cell(L.ctx, up, L.ctx.identity(), L.levels[n]) == x0_patch(h, n));
      CHECK(up == h.families[n + 1][0]);
    }
  }
}

TEST_CASE("structure check catches edits") {
  auto L = build_lattice_ladder(1, 2);
  auto h = build_hierarchy(L, default_matrices(L));
  auto g = h;
  // put block 1 on a non-identity cell
  auto id = g.ladder.glue[1].index_of(L.ctx.identity());
  g.assignments[1].maps[0][id == 0 ? 1 : 0] = 1;
  CHECK(!check_structure(g).empty());
  auto f                      = h;
  f.families[2][1].symbols[0] = 7;
  CHECK(!check_structure(f).empty());
  CHECK_THROWS_AS(x0_patch(h, 3), Error);
  CHECK_THROWS_AS(build_hierarchy(L, {ternary_default_matrix(), generic_default_matrix(5)}), Error);
}
