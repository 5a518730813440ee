#include <filesystem>

#include "doctest.h"
#include "monotile/pipeline.hpp"

using namespace monotile;

namespace {

std::filesystem::path const source_dir = MONOTILE_SOURCE_DIR;

PipelineConfig shipped_default() {
  auto p = source_dir / "configs" / "default_pipeline.json";
  return PipelineConfig::from_json(read_json_file(p), p.parent_path());
}

CheckResult const* find_check(RunReport const& r, std::string const& stage, std::string const& name) {
  for (auto const& s : r.stages) {
    if (s.name != stage) {
      continue;
    }
    for (auto const& c : s.checks) {
      if (c.name == name) {
        return &c;
      }
    }
  }
  return nullptr;
}

}  // namespace

TEST_CASE("default configuration") {
  auto c = shipped_default();
  CHECK_NOTHROW(c.validate());
  auto r = run_pipeline(c, false);
  REQUIRE(r.stages.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(r.stages[i].name == pipeline_stage_names[i]);
    CHECK(r.stages[i].pass);
    CHECK(!r.stages[i].skipped);
  }
  CHECK(r.pass());
  // reruns agree on everything but timings
  CHECK(run_pipeline(c, false).to_json() == r.to_json());
  CHECK(r.to_json().dump().find("seconds") == std::string::npos);

  auto again = PipelineConfig::from_json(c.to_json());
  CHECK(again.to_json() == c.to_json());
}

TEST_CASE("other groups") {
  for (auto g : {R"({"kind":"lattice","d":2})", R"({"kind":"pruefer","p":3})"}) {
    CAPTURE(g);
    PipelineConfig c;
    c.group         = Json::parse(g);
    c.depth         = c.group["kind"] == "pruefer" ? 3 : 2;
    c.matrix_source = "default";
    auto r = run_pipeline(c, false);
    CHECK(r.pass());
  }

  // |J_n| = 2 cannot host three distinct blocks; reported, not thrown
  PipelineConfig two;
  two.group         = Json::parse(R"({"kind":"pruefer","p":2})");
  two.matrix_source = "default";
  auto r = run_pipeline(two, false);
  CHECK(!r.pass());
  CHECK(r.stages[1].pass);
  CHECK(r.stages[2].error.find("infeasible") != std::string::npos);
}

TEST_CASE("a corrupted matrix file fails the managed check") {
  auto dir = std::filesystem::temp_directory_path() / "monotile-pipeline-test";
  std::filesystem::remove_all(dir);
  // column sums of the first matrix are 3, 3, 4 against a ratio of 3
  write_text_file(dir / "bad.json",
                  R"([{"rows":3,"cols":3,"ratio":3,"entries":[1,1,1,2,1,0,0,1,3]},)"
                  R"({"rows":3,"cols":3,"ratio":3,"entries":[1,1,1,2,1,0,0,1,2]}])");
  PipelineConfig c;
  c.depth         = 2;
  c.matrix_source = "file";
  c.matrix_path   = dir / "bad.json";
  c.out_dir       = dir / "out";
  CHECK_NOTHROW(c.validate());
  auto r = run_pipeline(c);
  CHECK(!r.pass());
  auto m = find_check(r, "matrices", "managed");
  REQUIRE(m != nullptr);
  CHECK(!m->pass);
  CHECK(m->detail.contains("witness"));
  CHECK(r.stages[0].pass);
  CHECK(r.stages[1].pass);
  CHECK(!r.stages[2].pass);
  for (std::size_t i = 3; i < r.stages.size(); ++i) {
    CHECK(r.stages[i].skipped);
  }
  CHECK(std::filesystem::exists(dir / "out" / "report.json"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("inconsistent depths are rejected before any construction") {
  PipelineConfig c;
  c.depth          = 1;
  c.analysis_level = 2;
  c.out_dir        = std::filesystem::temp_directory_path() / "monotile-never-written";
  std::filesystem::remove_all(c.out_dir);
  try {
    c.validate();
    FAIL("expected a config error");
  } catch (Error const& e) {
    CHECK(e.code() == ErrorCode::config);
  }
  CHECK_THROWS_AS(run_pipeline(c), Error);
  CHECK(!std::filesystem::exists(c.out_dir));

  PipelineConfig k;
  k.k0 = 4;  // realize with d = 2 needs k0 = 3
  CHECK_THROWS_AS(k.validate(), Error);
  PipelineConfig u;
  u.ladder_route = "spiral";
  CHECK_THROWS_AS(u.validate(), Error);
  CHECK_THROWS_AS(PipelineConfig::from_json(Json::parse(R"({"matrices":{"tol":"x"}})")), Error);
}
