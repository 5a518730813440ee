#include <filesystem>

#include "doctest.h"
#include "monotile/io.hpp"
#include "monotile/render.hpp"

using namespace monotile;

namespace {

Element E(std::initializer_list<Rational> c) {
  return Element(c);
}

}  // namespace

TEST_CASE("group descriptors round-trip") {
  std::vector<Json> descs{
      Json::parse(R"({"kind":"lattice","d":2})"),
      Json::parse(R"({"kind":"cyclic","n":6})"),
      Json::parse(R"({"kind":"heisenberg3"})"),
      Json::parse(R"({"kind":"pruefer","p":3})"),
      Json::parse(R"({"kind":"rationals"})"),
      Json::parse(R"({"kind":"trivial"})"),
      Json::parse(R"({"kind":"direct_product","factors":[{"kind":"lattice","d":1},{"kind":"cyclic","n":2}]})"),
      Json::parse(R"J({"kind":"finite_extension","ambient":{"kind":"direct_product","factors":[{"kind":"lattice","d":1},{"kind":"cyclic","n":2}]},
                      "base":{"kind":"lattice","d":1},"coset_reps":["(0,0)","(0,1)"]})J")};
  for (auto const& d : descs) {
    auto g = group_from_json(d);
    CHECK(group_to_json(group_from_json(group_to_json(g))) == group_to_json(g));
  }
  CHECK(group_from_json(descs[0]).dimension() == 2);

  for (auto bad : {R"({"kind":"lattice"})", R"({"kind":"klein"})", R"({"kind":"pruefer","p":4})",
                   R"({"kind":"cyclic","n":0})", R"([1,2])"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(group_from_json(Json::parse(bad)), Error);
  }
}

TEST_CASE("ladders and hierarchies round-trip") {
  auto L = build_lattice_ladder(2, 2);
  auto j = ladder_to_json(L);
  auto back = ladder_from_json(Json::parse(j.dump()));
  CHECK(back.levels == L.levels);
  CHECK(back.glue == L.glue);
  CHECK(ladder_to_json(back) == j);

  auto P  = regroup_ladder(build_pruefer_ladder(2, 8), {0, 2, 4, 6, 8});
  auto h  = build_hierarchy(P, default_matrices(P));
  auto hj = hierarchy_to_json(h);
  auto h2 = hierarchy_from_json(Json::parse(hj.dump()));
  CHECK(h2.matrices == h.matrices);
  CHECK(h2.families.size() == h.families.size());
  for (std::size_t n = 0; n < h.families.size(); ++n) {
    CHECK(h2.families[n] == h.families[n]);
  }
  CHECK(check_structure(h2).empty());
  CHECK(hierarchy_to_json(h2) == hj);

  auto broken = Json::parse(j.dump());
  broken["glue"][0].push_back("(9,9)");
  // loading keeps the file as written; the congruence check flags it
  CHECK(check_congruent(ladder_from_json(broken)).pass == false);
  broken["levels"] = "nope";
  CHECK_THROWS(ladder_from_json(broken));
}

TEST_CASE("integers and matrices") {
  CHECK(integer_to_json(Integer(42)) == Json(42));
  Integer big("123456789012345678901234567890");
  CHECK(integer_to_json(big).is_string());
  CHECK(integer_from_json(integer_to_json(big)) == big);
  CHECK(integer_from_json(Json(-7)) == -7);

  auto M = ManagedMatrix::from_rows({{1, 1, 1}, {2, 1, 0}, {0, 1, 2}});
  CHECK(matrix_from_json(matrix_to_json(M)) == M);
  auto arr = matrices_to_json({M, M});
  CHECK(matrices_from_json(arr).size() == 2);
  CHECK(matrices_from_json(Json{{"matrices", arr}}).size() == 2);

  auto bad = matrix_to_json(M);
  bad["entries"].erase(bad["entries"].begin());
  CHECK_THROWS(matrix_from_json(bad));
}

TEST_CASE("patterns") {
  auto Z = GroupContext::lattice(1);
  Pattern p{FiniteSubset{E({-1}), E({0}), E({1})}, {2, 1, 2}};
  CHECK(pattern_from_json(Z, pattern_to_json(p)) == p);
  // unsorted input is sorted together with its symbols
  auto q = pattern_from_json(Z, Json::parse(R"({"support":["1","-1","0"],"symbols":[3,2,1]})"));
  CHECK(q.symbols == std::vector<int>{2, 1, 3});
  CHECK_THROWS(pattern_from_json(Z, Json::parse(R"({"support":["0"],"symbols":[1,2]})")));
}

TEST_CASE("rendering") {
  auto Z  = GroupContext::lattice(1);
  auto B0 = base_blocks(3, Z, FiniteSubset{E({0})});
  CHECK(render_pattern(Z, B0[1], RenderMode::text) == "2");

  auto L = build_lattice_ladder(1, 1);
  auto h = build_hierarchy(L, default_matrices(L));
  CHECK(render_pattern(Z, h.families[1][0], RenderMode::text) == "2 1 2");

  auto Z2 = GroupContext::lattice(2);
  Pattern box{FiniteSubset{E({0, 0}), E({0, 1}), E({1, 0}), E({1, 1})}, {1, 2, 3, 1}};
  CHECK(render_pattern(Z2, box, RenderMode::text) == "1 2\n3 1");

  auto P = GroupContext::pruefer(2);
  Pattern pp{FiniteSubset{E({0}), E({Rational(1, 2)})}, {1, 2}};
  try {
    (void)render_pattern(P, pp, RenderMode::text);
    FAIL("expected unsupported render");
  } catch (Error const& e) {
    CHECK(e.code() == ErrorCode::unsupported_render);
  }
  CHECK(Json::parse(render_pattern(P, pp, RenderMode::json)) == pattern_to_json(pp));

  Pattern gap{FiniteSubset{E({0}), E({2})}, {1, 1}};
  CHECK_THROWS_AS(render_pattern(Z, gap, RenderMode::text), Error);
  CHECK(parse_render_mode("json") == RenderMode::json);
  CHECK_THROWS_AS(parse_render_mode("svg"), Error);
}

TEST_CASE("files") {
  auto dir = std::filesystem::temp_directory_path() / "monotile-io-test" / "nested";
  std::filesystem::remove_all(dir.parent_path());
  write_text_file(dir / "a.json", R"({"x":1})");
  CHECK(read_json_file(dir / "a.json")["x"] == 1);
  CHECK_THROWS_AS(read_json_file(dir / "missing.json"), Error);
  write_text_file(dir / "b.json", "{oops");
  CHECK_THROWS(read_json_file(dir / "b.json"));
  std::filesystem::remove_all(dir.parent_path());
}
